#include "slg/chartab.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include <nlohmann/json.hpp>

#include "slg/errors.hpp"
#include "slg/gf.hpp"

namespace slg::chartab {

using grp::Index;
using u64 = std::uint64_t;

// ---- Z[zeta_m] -------------------------------------------------------------

namespace {

using IPoly = std::vector<std::int64_t>;

IPoly ipoly_mul(const IPoly& a, const IPoly& b) {
  IPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

// exact division by a monic polynomial
IPoly ipoly_div(IPoly a, const IPoly& b) {
  const std::size_t db = b.size() - 1;
  IPoly q(a.size() - db, 0);
  for (std::size_t i = a.size(); i-- > db;) {
    const std::int64_t c = a[i];
    q[i - db] = c;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  for (std::size_t i = 0; i < db; ++i)
    if (a[i] != 0) throw InternalError("cyclotomic division is not exact");
  return q;
}

int mobius(unsigned n) {
  int mu = 1;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    mu = -mu;
  }
  if (n > 1) mu = -mu;
  return mu;
}

}  // namespace

Cyclotomic::Cyclotomic(unsigned m) : m_(m) {
  if (m == 0) throw DomainError("cyclotomic order must be positive");
  // Phi_m = prod_{d | m} (x^d - 1)^mu(m/d)
  IPoly num{1}, den{1};
  for (unsigned d = 1; d <= m; ++d) {
    if (m % d) continue;
    const int mu = mobius(m / d);
    if (mu == 0) continue;
    IPoly f(d + 1, 0);
    f[0] = -1;
    f[d] = 1;
    (mu > 0 ? num : den) = ipoly_mul(mu > 0 ? num : den, f);
  }
  poly_ = ipoly_div(num, den);
  if (poly_.back() < 0)
    for (auto& c : poly_) c = -c;
}

std::vector<std::int64_t> Cyclotomic::reduce(std::vector<std::int64_t> v) const {
  const std::size_t ph = phi();
  for (std::size_t i = v.size(); i-- > ph;) {
    const std::int64_t c = v[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= ph; ++j)
      if (poly_[j]) v[i - ph + j] -= c * poly_[j];
  }
  v.resize(ph);
  return v;
}

bool Cyclotomic::is_integer(const std::vector<std::int64_t>& raw, std::int64_t value) const {
  auto c = reduce(raw);
  if (c.empty()) return value == 0;
  if (c[0] != value) return false;
  return std::all_of(c.begin() + 1, c.end(), [](std::int64_t x) { return x == 0; });
}

std::vector<std::int64_t> CharTable::value(std::size_t chi, std::size_t k) const {
  return Cyclotomic(exponent).reduce(values[chi][k]);
}

// ---- arithmetic modulo a prime ---------------------------------------------

namespace {

struct Mod {
  u64 l;
  u64 add(u64 a, u64 b) const { return (a + b) % l; }
  u64 sub(u64 a, u64 b) const { return (a + l - b) % l; }
  u64 mul(u64 a, u64 b) const { return a * b % l; }
  u64 pow(u64 a, u64 e) const {
    u64 r = 1 % l;
    a %= l;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  u64 inv(u64 a) const {
    if (a % l == 0) throw InternalError("inverse of zero modulo l");
    return pow(a, l - 2);
  }
};

using Poly = std::vector<u64>;  // low degree first, trimmed
using Mat = std::vector<std::vector<u64>>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// quotient and remainder
std::pair<Poly, Poly> divmod(const Mod& M, Poly a, const Poly& b) {
  trim(a);
  if (b.empty()) throw InternalError("polynomial division by zero");
  if (a.size() < b.size()) return {{}, a};
  const u64 lead = M.inv(b.back());
  Poly q(a.size() - b.size() + 1, 0);
  const std::size_t db = b.size() - 1;
  for (std::size_t i = a.size(); i > db;) {
    --i;
    const u64 c = M.mul(a[i], lead);
    q[i - db] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) a[i - db + j] = M.sub(a[i - db + j], M.mul(c, b[j]));
  }
  a.resize(b.size() - 1);
  trim(a);
  trim(q);
  return {q, a};
}

Poly mulmod(const Mod& M, const Poly& a, const Poly& b, const Poly& f) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = M.add(r[i + j], M.mul(a[i], b[j]));
  return divmod(M, std::move(r), f).second;
}

Poly powmod(const Mod& M, Poly base, u64 e, const Poly& f) {
  Poly r{1};
  base = divmod(M, base, f).second;
  while (e) {
    if (e & 1) r = mulmod(M, r, base, f);
    base = mulmod(M, base, base, f);
    e >>= 1;
  }
  return r;
}

Poly gcd(const Mod& M, Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = divmod(M, a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const u64 s = M.inv(a.back());
    for (auto& c : a) c = M.mul(c, s);
  }
  return a;
}

// A factor of degree f of g, where g is squarefree with all irreducible
// factors of degree f (equal-degree splitting with a fixed seed).
Poly degree_factor(const Mod& M, Poly g, unsigned f) {
  std::mt19937_64 rng(7);
  const u64 p = M.l;
  while (g.size() - 1 > f) {
    Poly a(g.size() - 1);
    for (auto& c : a) c = rng() % p;
    trim(a);
    if (a.size() < 2) continue;
    Poly b;
    if (p == 2) {  // trace to GF(2)
      Poly t = a;
      b = a;
      for (unsigned i = 1; i < f; ++i) {
        t = mulmod(M, t, t, g);
        b.resize(std::max(b.size(), t.size()), 0);
        for (std::size_t j = 0; j < t.size(); ++j) b[j] = M.add(b[j], t[j]);
      }
      trim(b);
    } else {  // a^((p^f - 1) / 2) - 1
      Poly t = a, s = a;
      for (unsigned i = 1; i < f; ++i) {
        t = powmod(M, t, p, g);
        s = mulmod(M, s, t, g);
      }
      b = powmod(M, s, (p - 1) / 2, g);
      if (b.empty()) b.push_back(0);
      b[0] = M.sub(b[0], 1);
      trim(b);
    }
    auto d = gcd(M, g, b);
    if (d.size() < 2 || d.size() == g.size()) continue;
    g = 2 * (d.size() - 1) <= g.size() - 1 ? d : divmod(M, g, d).first;
  }
  return g;
}

// Cantor-Zassenhaus splitting of a product of distinct linear factors
void split_roots(const Mod& M, const Poly& f, std::vector<u64>& out) {
  if (f.size() <= 1) return;
  if (f.size() == 2) {
    out.push_back(M.mul(M.sub(0, f[0]), M.inv(f[1])));
    return;
  }
  for (u64 a = 1;; ++a) {
    Poly t = powmod(M, {a % M.l, 1}, (M.l - 1) / 2, f);
    if (t.empty()) t = {0};
    t[0] = M.sub(t[0], 1);
    trim(t);
    Poly h = gcd(M, f, t);
    if (h.size() > 1 && h.size() < f.size()) {
      split_roots(M, h, out);
      split_roots(M, divmod(M, f, h).first, out);
      return;
    }
    if (a > 10 * M.l) throw InternalError("root splitting did not converge");
  }
}

std::vector<u64> distinct_roots(const Mod& M, Poly f) {
  trim(f);
  // gcd with x^l - x keeps each root once
  Poly xl = powmod(M, {0, 1}, M.l, f);
  if (xl.size() < 2) xl.resize(2, 0);
  xl[1] = M.sub(xl[1], 1);
  trim(xl);
  Poly g = xl.empty() ? f : gcd(M, f, xl);
  std::vector<u64> roots;
  split_roots(M, g, roots);
  std::sort(roots.begin(), roots.end());
  return roots;
}

u64 det(const Mod& M, Mat a) {
  const std::size_t n = a.size();
  u64 d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      d = M.sub(0, d);
    }
    d = M.mul(d, a[c][c]);
    const u64 inv = M.inv(a[c][c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c] == 0) continue;
      const u64 f = M.mul(a[r][c], inv);
      for (std::size_t t = c; t < n; ++t) a[r][t] = M.sub(a[r][t], M.mul(f, a[c][t]));
    }
  }
  return d;
}

// det(xI - R) by interpolation at x = 0..d
Poly charpoly(const Mod& M, const Mat& R) {
  const std::size_t d = R.size();
  std::vector<u64> ys(d + 1);
  for (std::size_t x = 0; x <= d; ++x) {
    Mat a = R;
    for (std::size_t i = 0; i < d; ++i) {
      for (auto& v : a[i]) v = M.sub(0, v);
      a[i][i] = M.add(a[i][i], x);
    }
    ys[x] = det(M, a);
  }
  Poly out(d + 1, 0);
  for (std::size_t i = 0; i <= d; ++i) {
    Poly basis{1};
    u64 denom = 1;
    for (std::size_t j = 0; j <= d; ++j) {
      if (j == i) continue;
      Poly nb(basis.size() + 1, 0);
      for (std::size_t t = 0; t < basis.size(); ++t) {
        nb[t + 1] = M.add(nb[t + 1], basis[t]);
        nb[t] = M.sub(nb[t], M.mul(basis[t], j));
      }
      basis = std::move(nb);
      denom = M.mul(denom, M.sub(i, j));
    }
    const u64 s = M.mul(ys[i], M.inv(denom));
    for (std::size_t t = 0; t < basis.size(); ++t) out[t] = M.add(out[t], M.mul(s, basis[t]));
  }
  trim(out);
  return out;
}

// Row-reduced basis; returns pivot columns.  Rows with pivots are scaled to 1
// and cleared above and below.
std::vector<std::size_t> rref(const Mod& M, Mat& rows, std::size_t cols) {
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    const u64 inv = M.inv(rows[r][c]);
    for (auto& v : rows[r]) v = M.mul(v, inv);
    for (std::size_t o = 0; o < rows.size(); ++o) {
      if (o == r || rows[o][c] == 0) continue;
      const u64 f = rows[o][c];
      for (std::size_t t = 0; t < cols; ++t) rows[o][t] = M.sub(rows[o][t], M.mul(f, rows[r][t]));
    }
    piv.push_back(c);
    ++r;
  }
  rows.resize(r);
  return piv;
}

// Basis of { x : A x = 0 } for a d x d matrix.
Mat nullspace(const Mod& M, Mat A) {
  const std::size_t d = A.empty() ? 0 : A[0].size();
  auto piv = rref(M, A, d);
  std::vector<bool> is_piv(d, false);
  for (auto c : piv) is_piv[c] = true;
  Mat out;
  for (std::size_t f = 0; f < d; ++f) {
    if (is_piv[f]) continue;
    std::vector<u64> x(d, 0);
    x[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = M.sub(0, A[r][f]);
    out.push_back(std::move(x));
  }
  return out;
}

u64 lcm_u64(u64 a, u64 b) { return a / std::gcd(a, b) * b; }

u64 choose_prime(u64 m, u64 group_order, u64 after) {
  const u64 floor = std::max<u64>(after, static_cast<u64>(2 * std::sqrt(static_cast<double>(group_order))) + 1);
  u64 l = (floor / m + 1) * m + 1;
  while (!gf::is_prime(l)) l += m;
  return l;
}

struct Attempt {
  bool ok = false;
  std::vector<std::uint64_t> degrees;
  std::vector<std::vector<std::vector<std::int64_t>>> values;
};

}  // namespace

namespace {

Attempt attempt(const grp::EnumeratedGroup& G, const grp::ClassData& C, unsigned m, u64 l,
                const std::vector<std::uint32_t>& inverse_class, std::mt19937_64& rng) {
  const Mod M{l};
  const std::size_t k = C.classes.size();
  const u64 N = G.order();
  // a[j][r][s] = #{x in C_j : x^-1 z in C_r} for z = rep of C_s
  std::vector<Mat> A(k, Mat(k, std::vector<u64>(k, 0)));
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t s = 0; s < k; ++s)
      for (Index x : C.classes[j]) ++A[j][C.class_of[G.mul(G.inv(x), C.reps[s])]][s];
  for (auto& Aj : A)
    for (auto& row : Aj)
      for (auto& v : row) v %= l;

  // subspaces as row-reduced bases of GF(l)^k, all invariant under every A_j
  std::vector<Mat> pending{Mat{}};
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<u64> e(k, 0);
    e[i] = 1;
    pending[0].push_back(e);
  }
  std::vector<std::vector<u64>> eigen;
  int draws = 0;
  std::uniform_int_distribution<u64> coef(0, l - 1);
  while (!pending.empty()) {
    Mat B = std::move(pending.back());
    pending.pop_back();
    if (B.size() == 1) {
      eigen.push_back(B[0]);
      continue;
    }
    if (++draws > static_cast<int>(20 * k)) return {};
    auto piv = rref(M, B, k);
    const std::size_t d = B.size();
    // random combination of class matrices, restricted to span(B)
    Mat R(k, std::vector<u64>(k, 0));
    for (std::size_t j = 0; j < k; ++j) {
      const u64 c = coef(rng);
      if (c == 0) continue;
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t s = 0; s < k; ++s)
          if (A[j][r][s]) R[r][s] = M.add(R[r][s], M.mul(c, A[j][r][s]));
    }
    // R acts on columns; basis vectors are rows of B
    Mat Rr(d, std::vector<u64>(d, 0));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t t = 0; t < d; ++t) {
        // coordinate t of R b_i is its entry at pivot t
        u64 acc = 0;
        const std::size_t row = piv[t];
        for (std::size_t s = 0; s < k; ++s)
          if (B[i][s]) acc = M.add(acc, M.mul(R[row][s], B[i][s]));
        Rr[t][i] = acc;
      }
    auto roots = distinct_roots(M, charpoly(M, Rr));
    std::size_t found = 0;
    std::vector<Mat> parts;
    for (u64 lam : roots) {
      Mat S = Rr;
      for (std::size_t i = 0; i < d; ++i) S[i][i] = M.sub(S[i][i], lam);
      Mat part;
      for (const auto& x : nullspace(M, S)) {
        std::vector<u64> v(k, 0);
        for (std::size_t i = 0; i < d; ++i)
          if (x[i])
            for (std::size_t s = 0; s < k; ++s) v[s] = M.add(v[s], M.mul(x[i], B[i][s]));
        part.push_back(std::move(v));
      }
      found += part.size();
      parts.push_back(std::move(part));
    }
    if (found != d) return {};  // not diagonalizable: bad prime
    if (parts.size() == 1) {
      pending.push_back(std::move(parts[0]));  // draw again
      continue;
    }
    for (auto& p : parts) pending.push_back(std::move(p));
  }
  if (eigen.size() != k) return {};

  // primitive m-th root of unity mod l
  u64 z = 0;
  for (u64 a = 2; a < l && !z; ++a) {
    const u64 c = M.pow(a, (l - 1) / m);
    bool prim = true;
    for (unsigned q : grp::prime_divisors(m)) prim = prim && M.pow(c, m / q) != 1;
    if (prim) z = c;
  }
  if (m == 1) z = 1;
  if (!z) return {};

  Attempt out;
  for (auto w : eigen) {
    if (w[0] == 0) return {};
    const u64 s0 = M.inv(w[0]);
    for (auto& x : w) x = M.mul(x, s0);
    // sum_j w_j w_j* / |C_j| = |G| / chi(1)^2
    u64 S = 0;
    for (std::size_t j = 0; j < k; ++j)
      S = M.add(S, M.mul(M.mul(w[j], w[inverse_class[j]]), M.inv(C.classes[j].size() % l)));
    if (S == 0) return {};
    const u64 d2 = M.mul(N % l, M.inv(S));
    u64 deg = 0;
    for (u64 d = 1; d * d <= N; ++d)
      if (d * d % l == d2 && N % d == 0) {
        deg = d;
        break;
      }
    if (!deg) return {};
    std::vector<u64> val(k);
    for (std::size_t j = 0; j < k; ++j) val[j] = M.mul(M.mul(deg % l, w[j]), M.inv(C.classes[j].size() % l));
    // eigenvalue multiplicities of each class representative
    std::vector<std::vector<std::int64_t>> row(k, std::vector<std::int64_t>(m, 0));
    for (std::size_t j = 0; j < k; ++j) {
      const Index g = C.reps[j];
      const unsigned o = G.elem_order(g);
      const u64 zo = M.pow(z, m / o);
      const u64 inv_o = M.inv(o % l);
      std::vector<u64> pw(o);
      for (unsigned i = 0; i < o; ++i) pw[i] = val[C.class_of[G.pow(g, i)]];
      std::int64_t total = 0;
      for (unsigned t = 0; t < o; ++t) {
        u64 acc = 0;
        const u64 step = M.pow(zo, (o - t) % o);  // zeta_o^-t
        u64 f = 1;
        for (unsigned i = 0; i < o; ++i) {
          acc = M.add(acc, M.mul(pw[i], f));
          f = M.mul(f, step);
        }
        const u64 mu = M.mul(acc, inv_o);
        if (mu > deg) return {};
        row[j][static_cast<std::size_t>(t) * (m / o)] = static_cast<std::int64_t>(mu);
        total += static_cast<std::int64_t>(mu);
      }
      if (total != static_cast<std::int64_t>(deg)) return {};
    }
    out.degrees.push_back(deg);
    out.values.push_back(std::move(row));
  }
  out.ok = true;
  return out;
}

// sum_K |K| a(g_K) conj(b(g_K)) as a raw vector, over the given classes
std::vector<std::int64_t> inner(const CharTable& T, std::size_t a, std::size_t b, const std::vector<bool>* use) {
  const unsigned m = T.exponent;
  std::vector<std::int64_t> acc(m, 0);
  for (std::size_t K = 0; K < T.reps.size(); ++K) {
    if (use && !(*use)[K]) continue;
    const auto& x = T.values[a][K];
    const auto& y = T.values[b][K];
    const auto sz = static_cast<std::int64_t>(T.class_sizes[K]);
    for (unsigned t = 0; t < m; ++t) {
      if (!x[t]) continue;
      for (unsigned u = 0; u < m; ++u)
        if (y[u]) acc[(t + m - u) % m] += sz * x[t] * y[u];
    }
  }
  return acc;
}

}  // namespace

CharTable char_table(const grp::GroupPtr& G, std::size_t class_cap, std::uint64_t seed) {
  const auto& C = G->classes();
  const std::size_t k = C.classes.size();
  if (k > class_cap) throw ResourceError("char_table: " + std::to_string(k) + " classes exceed the cap", k);
  CharTable T;
  T.group = G;
  T.reps = C.reps;
  for (std::size_t j = 0; j < k; ++j) {
    T.class_sizes.push_back(C.classes[j].size());
    T.class_orders.push_back(G->elem_order(C.reps[j]));
    T.inverse_class.push_back(C.class_of[G->inv(C.reps[j])]);
  }
  u64 m = 1;
  for (auto o : T.class_orders) m = lcm_u64(m, o);
  T.exponent = static_cast<unsigned>(m);

  std::mt19937_64 rng(seed);
  u64 l = 0;
  for (int tries = 0; tries < 8; ++tries) {
    l = choose_prime(m, G->order(), l);
    auto at = attempt(*G, C, T.exponent, l, T.inverse_class, rng);
    if (!at.ok) continue;
    T.ell = l;
    T.degrees = std::move(at.degrees);
    T.values = std::move(at.values);
    break;
  }
  if (T.ell == 0) throw InternalError("char_table: eigenvector splitting failed for every prime tried");

  // canonical order: degree, then canonical values
  const Cyclotomic Z(T.exponent);
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::vector<std::vector<std::int64_t>>> canon(k);
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t j = 0; j < k; ++j) canon[c].push_back(Z.reduce(T.values[c][j]));
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (T.degrees[a] != T.degrees[b]) return T.degrees[a] < T.degrees[b];
    return canon[a] < canon[b];
  });
  CharTable S = T;
  for (std::size_t i = 0; i < k; ++i) {
    S.degrees[i] = T.degrees[order[i]];
    S.values[i] = T.values[order[i]];
  }
  if (!row_orthogonality(S)) throw InternalError("char_table: row orthogonality fails");
  return S;
}

bool row_orthogonality(const CharTable& T) {
  const Cyclotomic Z(T.exponent);
  const auto N = static_cast<std::int64_t>(T.group->order());
  std::int64_t sum_sq = 0;
  for (auto d : T.degrees) sum_sq += static_cast<std::int64_t>(d * d);
  if (sum_sq != N || T.degrees.size() != T.reps.size()) return false;
  for (std::size_t a = 0; a < T.size(); ++a)
    for (std::size_t b = a; b < T.size(); ++b)
      if (!Z.is_integer(inner(T, a, b, nullptr), a == b ? N : 0)) return false;
  return true;
}

bool column_orthogonality(const CharTable& T) {
  const Cyclotomic Z(T.exponent);
  const unsigned m = T.exponent;
  const std::size_t k = T.reps.size();
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t s = r; s < k; ++s) {
      std::vector<std::int64_t> acc(m, 0);
      for (std::size_t c = 0; c < T.size(); ++c) {
        const auto& x = T.values[c][r];
        const auto& y = T.values[c][s];
        for (unsigned t = 0; t < m; ++t) {
          if (!x[t]) continue;
          for (unsigned u = 0; u < m; ++u)
            if (y[u]) acc[(t + m - u) % m] += x[t] * y[u];
        }
      }
      const auto cent = static_cast<std::int64_t>(T.group->order() / T.class_sizes[r]);
      if (!Z.is_integer(acc, r == s ? cent : 0)) return false;
    }
  return true;
}

// ---- blocks ----------------------------------------------------------------

unsigned BlockData::min_defect() const {
  return block_defect.empty() ? 0 : *std::min_element(block_defect.begin(), block_defect.end());
}

std::size_t BlockData::defect_zero_blocks() const {
  return static_cast<std::size_t>(std::count(block_defect.begin(), block_defect.end(), 0u));
}

namespace {

std::vector<std::vector<std::size_t>> partition_by(std::size_t n, const std::function<std::size_t(std::size_t)>& find) {
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(i);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

BlockData p_blocks(const CharTable& T, unsigned p) {
  if (!gf::is_prime(p)) throw DomainError("p_blocks: p must be prime");
  BlockData B;
  B.p = p;
  const u64 N = T.group->order();
  B.n = grp::valuation(N, p);
  const std::size_t k = T.size();
  const unsigned m = T.exponent;
  unsigned mp = m;
  while (mp % p == 0) mp /= p;
  // zeta_m -> x in GF(p)[x]/(g), g an irreducible factor of Phi_{m'} mod p
  unsigned f = 1;
  for (u64 x = p % mp; mp > 1 && x != 1; x = x * p % mp) ++f;
  const Mod M{p};
  Poly g;
  const Cyclotomic Zp(mp);
  for (auto c : Zp.polynomial()) g.push_back(static_cast<u64>((c % static_cast<std::int64_t>(p) + p) % p));
  g = degree_factor(M, std::move(g), f);
  const Cyclotomic Z(m);

  std::vector<std::vector<Poly>> omega(k, std::vector<Poly>(k));
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t K = 0; K < k; ++K) {
      auto raw = T.values[c][K];
      for (auto& v : raw) v *= static_cast<std::int64_t>(T.class_sizes[K]);
      auto can = Z.reduce(std::move(raw));
      const auto d = static_cast<std::int64_t>(T.degrees[c]);
      Poly acc;
      for (std::size_t i = can.size(); i-- > 0;) {
        if (can[i] % d != 0) throw InternalError("central character is not an algebraic integer");
        const auto r = static_cast<u64>(((can[i] / d) % static_cast<std::int64_t>(p) + p) % p);
        acc.insert(acc.begin(), 0);  // times x
        acc[0] = M.add(acc[0], r);
        acc = divmod(M, std::move(acc), g).second;
      }
      omega[c][K] = std::move(acc);
    }
  std::map<std::vector<Poly>, std::size_t> key;
  std::vector<std::size_t> label(k);
  for (std::size_t c = 0; c < k; ++c) label[c] = key.emplace(omega[c], key.size()).first->second;
  B.blocks = partition_by(k, [&](std::size_t c) { return label[c]; });
  for (std::size_t c = 0; c < k; ++c) B.char_defect.push_back(B.n - grp::valuation(T.degrees[c], p));
  for (const auto& blk : B.blocks) {
    unsigned d = 0;
    for (auto c : blk) d = std::max(d, B.char_defect[c]);
    B.block_defect.push_back(d);
  }
  return B;
}

std::vector<std::vector<std::size_t>> linking_blocks(const CharTable& T, unsigned p) {
  const Cyclotomic Z(T.exponent);
  std::vector<bool> regular(T.reps.size());
  for (std::size_t K = 0; K < T.reps.size(); ++K) regular[K] = T.class_orders[K] % p != 0;
  const std::size_t k = T.size();
  std::vector<std::size_t> parent(k);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b)
      if (!Z.is_integer(inner(T, a, b, &regular), 0)) parent[find(a)] = find(b);
  return partition_by(k, find);
}

// ---- statistics ------------------------------------------------------------

DegreeStats degree_stats(const grp::GroupPtr& G, const CharTable& T, unsigned p) {
  if (!gf::is_prime(p)) throw DomainError("degree_stats: p must be prime");
  DegreeStats S;
  S.p = p;
  std::set<unsigned> rho, rho_star;
  for (auto d : T.degrees) {
    S.a = std::max(S.a, grp::valuation(d, p));
    auto pr = grp::prime_divisors(d);
    rho.insert(pr.begin(), pr.end());
    S.sigma = std::max(S.sigma, static_cast<unsigned>(pr.size()));
  }
  for (auto c : T.class_sizes) {
    S.a_class = std::max(S.a_class, grp::valuation(c, p));
    auto pr = grp::prime_divisors(c);
    rho_star.insert(pr.begin(), pr.end());
    S.sigma_star = std::max(S.sigma_star, static_cast<unsigned>(pr.size()));
  }
  S.rho.assign(rho.begin(), rho.end());
  S.rho_star.assign(rho_star.begin(), rho_star.end());

  const auto P = grp::sylow_subgroup(*G, grp::whole(*G), p);
  if (P.order() != grp::p_part(G->order(), p)) throw InternalError("degree_stats: Sylow subgroup has the wrong order");
  S.sylow_order = P.order();
  auto PG = grp::subgroup_as_group(*G, P);
  auto TP = char_table(PG, 1000);
  S.b_P = *std::max_element(TP.degrees.begin(), TP.degrees.end());
  S.dl_P = grp::derived_length(*PG, grp::whole(*PG));
  S.b_star_P = *std::max_element(TP.class_sizes.begin(), TP.class_sizes.end());
  const auto Pall = grp::whole(*PG);
  S.P_derived_order = grp::commutator(*PG, Pall, Pall).order();
  S.index_F_p = grp::p_part(G->order() / grp::fitting(*G).order(), p);
  return S;
}

// ---- json ------------------------------------------------------------------

nlohmann::json to_json(const CharTable& T) {
  nlohmann::json classes = nlohmann::json::array();
  for (std::size_t j = 0; j < T.reps.size(); ++j)
    classes.push_back({{"size", T.class_sizes[j]}, {"order", T.class_orders[j]}});
  nlohmann::json chars = nlohmann::json::array();
  for (std::size_t c = 0; c < T.size(); ++c) {
    nlohmann::json vals = nlohmann::json::array();
    for (std::size_t j = 0; j < T.reps.size(); ++j) vals.push_back(T.value(c, j));
    chars.push_back({{"degree", T.degrees[c]}, {"values", vals}});
  }
  return {{"order", T.group->order()},
          {"exponent", T.exponent},
          {"prime", T.ell},
          {"classes", classes},
          {"degrees", T.degrees},
          {"characters", chars}};
}

nlohmann::json to_json(const BlockData& B) {
  nlohmann::json blocks = nlohmann::json::array();
  for (std::size_t i = 0; i < B.blocks.size(); ++i) blocks.push_back({{"characters", B.blocks[i]}, {"defect", B.block_defect[i]}});
  return {{"p", B.p}, {"n", B.n}, {"blocks", blocks}, {"min_defect", B.min_defect()}};
}

nlohmann::json to_json(const DegreeStats& S) {
  return {{"p", S.p},           {"a", S.a},
          {"a_class", S.a_class}, {"sylow_order", S.sylow_order},
          {"b_P", S.b_P},       {"dl_P", S.dl_P},
          {"b_star_P", S.b_star_P}, {"P_derived_order", S.P_derived_order},
          {"index_F_p", S.index_F_p}, {"rho", S.rho},
          {"sigma", S.sigma},   {"rho_star", S.rho_star},
          {"sigma_star", S.sigma_star}};
}

}  // namespace slg::chartab
