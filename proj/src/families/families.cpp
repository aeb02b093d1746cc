#include "slg/families.hpp"

#include <algorithm>
#include <numeric>

#include "slg/errors.hpp"

namespace slg::families {

using gf::Elem;
using gf::FieldPtr;
using gf::FiniteField;
using gf::Matrix;

namespace {

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

std::uint64_t factorial(unsigned n) {
  std::uint64_t r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

Construction linear(std::string name, const std::vector<Matrix>& gens) {
  if (gens.empty()) throw UsageError("linear construction without generators");
  Construction c;
  c.name = std::move(name);
  c.blocks = {{gens[0].field(), gens[0].n()}};
  for (const auto& g : gens) {
    if (!(g.F() == gens[0].F()) || g.n() != gens[0].n()) throw UsageError("generators live in different spaces");
    if (!g.is_invertible()) throw DomainError("generator is singular");
    c.generators.push_back({g});
  }
  return c;
}

// Digits of a GF(p^k) element as a GF(p)-vector.
std::vector<Elem> digits(const FiniteField& big, Elem v) {
  std::vector<Elem> d(big.k());
  for (unsigned i = 0; i < big.k(); ++i) {
    d[i] = v % big.p();
    v /= big.p();
  }
  return d;
}

// GF(p)-matrix of a GF(p)-linear map on GF(p^K), basis p^j.
template <class Map>
Matrix prime_field_matrix(const FieldPtr& big, Map f) {
  auto Fp = FiniteField::get(big->p(), 1);
  const unsigned K = big->k();
  Matrix m(Fp, K);
  Elem basis = 1;
  for (unsigned j = 0; j < K; ++j) {
    auto d = digits(*big, f(basis));
    for (unsigned i = 0; i < K; ++i) m.set(i, j, d[i]);
    basis *= big->p();
  }
  return m;
}

// Coordinates of GF(q^n) over the subfield GF(q) in the basis 1, g, ..., g^(n-1),
// with GF(q) encoded by its own bundled modulus.
class SubfieldCoords {
 public:
  SubfieldCoords(FieldPtr big, FieldPtr small, unsigned n) : big_(std::move(big)), small_(std::move(small)), n_(n) {
    const unsigned k = small_->k();
    const FiniteField& B = *big_;
    // A root of the small field's modulus inside big.
    Elem root = 1;
    if (k > 1) {
      bool found = false;
      const std::uint64_t step = (B.q() - 1) / (small_->q() - 1);
      for (std::uint64_t j = 0; j < small_->q() - 1 && !found; ++j) {
        Elem y = B.exp(j * step);
        Elem acc = 1;  // y^k
        for (unsigned t = 0; t < k; ++t) acc = B.mul(acc, y);
        Elem val = acc;
        Elem yp = 1;
        for (unsigned t = 0; t < k; ++t) {
          val = B.add(val, B.mul(B.from_int(small_->modulus()[t]), yp));
          yp = B.mul(yp, y);
        }
        if (val == 0) {
          root = y;
          found = true;
        }
      }
      if (!found) throw InternalError("subfield modulus has no root");
    }
    auto Fp = FiniteField::get(B.p(), 1);
    const unsigned K = B.k();
    Matrix M(Fp, K);
    for (unsigned i = 0; i < n; ++i)
      for (unsigned a = 0; a < k; ++a) {
        Elem b = B.mul(B.pow(root, a), B.pow(B.generator(), i));
        auto d = digits(B, b);
        for (unsigned r = 0; r < K; ++r) M.set(r, i * k + a, d[r]);
      }
    inv_ = M.inverse();
  }

  std::vector<Elem> operator()(Elem y) const {
    auto Fp = FiniteField::get(big_->p(), 1);
    auto d = inv_ * gf::Vector(Fp, digits(*big_, y));
    const unsigned k = small_->k();
    std::vector<Elem> c(n_, 0);
    for (unsigned i = 0; i < n_; ++i) {
      Elem v = 0;
      for (unsigned a = k; a-- > 0;) v = v * big_->p() + d[i * k + a];
      c[i] = v;
    }
    return c;
  }

 private:
  FieldPtr big_, small_;
  unsigned n_;
  Matrix inv_ = Matrix::identity(FiniteField::get(2, 1), 1);
};

template <class Map>
Matrix subfield_matrix(const FieldPtr& big, const FieldPtr& small, unsigned n, Map f) {
  SubfieldCoords coords(big, small, n);
  Matrix m(small, n);
  for (unsigned j = 0; j < n; ++j) {
    auto c = coords(f(big->pow(big->generator(), j)));
    for (unsigned i = 0; i < n; ++i) m.set(i, j, c[i]);
  }
  return m;
}

FieldPtr big_field(std::uint32_t q, unsigned n) {
  auto small = FiniteField::of_size(q);
  std::uint64_t Q = gf::checked_power(q, n, gf::kMaxFieldSize);
  (void)Q;
  return FiniteField::get(small->p(), small->k() * n);
}

Construction semilinear_impl(std::string name, std::uint32_t q, unsigned n, std::uint64_t u, unsigned s,
                             bool over_prime_field, bool with_frobenius) {
  auto small = FiniteField::of_size(q);
  auto big = big_field(q, n);
  const Elem a = big->exp(u);
  const std::int64_t e = static_cast<std::int64_t>(ipow(q, s % n));
  auto mult = [&](Elem x) { return big->mul(a, x); };
  auto frob = [&](Elem x) { return big->pow(x, e); };
  std::vector<Matrix> gens;
  if (over_prime_field) {
    gens.push_back(prime_field_matrix(big, mult));
    if (with_frobenius && n > 1) gens.push_back(prime_field_matrix(big, frob));
  } else {
    gens.push_back(subfield_matrix(big, small, n, mult));
    if (with_frobenius && n > 1) gens.push_back(subfield_matrix(big, small, n, frob));
  }
  auto c = linear(std::move(name), gens);
  c.params = {{"q", q}, {"n", n}, {"over_prime_field", over_prime_field}};
  return c;
}

Elem root_of_unity(const FiniteField& F, unsigned p) {
  if ((F.q() - 1) % p != 0) throw DomainError(std::to_string(p) + " does not divide |" + F.name() + "| - 1");
  return F.exp((F.q() - 1) / p);
}

Matrix perm_matrix(const FieldPtr& F, const std::vector<std::size_t>& images) { return Matrix::permutation(F, images); }

}  // namespace

std::vector<Matrix> Construction::matrices() const {
  if (!single_block()) throw UsageError("construction \"" + name + "\" is not a single matrix group");
  std::vector<Matrix> out;
  for (const auto& g : generators) out.push_back(g[0]);
  return out;
}

grp::GroupPtr Construction::close(std::size_t cap) const {
  grp::GroupPtr G;
  if (is_perm()) {
    G = grp::from_permutations(degree, permutations, cap);
  } else if (generators.empty()) {
    std::vector<Matrix> ids;
    for (const auto& b : blocks) ids.push_back(Matrix::identity(b.field, b.dim));
    G = grp::from_block_matrices({ids}, cap);
  } else {
    G = grp::from_block_matrices(generators, cap);
  }
  if (predicted_order && *predicted_order != G->order())
    throw InternalError(name + ": closure order " + std::to_string(G->order()) + " differs from predicted " +
                        std::to_string(*predicted_order));
  return G;
}

nlohmann::json Construction::to_json() const {
  nlohmann::json j;
  auto rows = [](const Matrix& m) {
    std::vector<std::vector<Elem>> r(m.n(), std::vector<Elem>(m.n()));
    for (std::size_t i = 0; i < m.n(); ++i)
      for (std::size_t k = 0; k < m.n(); ++k) r[i][k] = m(i, k);
    return r;
  };
  if (is_perm()) {
    j = {{"kind", "perm"}, {"degree", degree}, {"generators", permutations}};
  } else if (single_block()) {
    j = {{"kind", "matrix"}, {"field", gf::field_to_json(*field())}, {"dim", dim()}};
    j["generators"] = nlohmann::json::array();
    for (const auto& g : generators) j["generators"].push_back(rows(g[0]));
  } else {
    j = {{"kind", "blocks"}};
    j["blocks"] = nlohmann::json::array();
    for (const auto& b : blocks) j["blocks"].push_back({{"field", gf::field_to_json(*b.field)}, {"dim", b.dim}});
    j["generators"] = nlohmann::json::array();
    for (const auto& g : generators) {
      nlohmann::json gj = nlohmann::json::array();
      for (const auto& m : g) gj.push_back(rows(m));
      j["generators"].push_back(std::move(gj));
    }
  }
  j["name"] = name;
  j["params"] = params;
  if (predicted_order) j["predicted_order"] = *predicted_order;
  return j;
}

Construction from_matrices(std::string name, const std::vector<Matrix>& gens) { return linear(std::move(name), gens); }

Construction from_group(std::string name, const grp::EnumeratedGroup& G, const grp::Subgroup& H) {
  Construction c;
  c.name = std::move(name);
  c.predicted_order = H.order();
  auto gens = grp::generators_of(G, H);
  if (auto perm = dynamic_cast<const grp::PermRep*>(&G.rep())) {
    c.degree = perm->degree();
    for (auto g : gens) {
      auto e = G.element(g);
      c.permutations.emplace_back(e.begin(), e.end());
    }
    return c;
  }
  auto lin = dynamic_cast<const grp::LinearRep*>(&G.rep());
  if (!lin) throw UsageError("cannot export a quotient group");
  c.blocks = lin->blocks();
  for (auto g : gens) c.generators.push_back(grp::matrices_of(G, g));
  return c;
}

Construction gamma(std::uint32_t q, unsigned n, bool over_prime_field) {
  auto c = semilinear_impl("gamma", q, n, 1, 1, over_prime_field, true);
  c.predicted_order = n * (ipow(q, n) - 1);
  return c;
}

Construction gamma0(std::uint32_t q, unsigned n, bool over_prime_field) {
  auto c = semilinear_impl("gamma0", q, n, 1, 1, over_prime_field, false);
  c.predicted_order = ipow(q, n) - 1;
  return c;
}

Construction semilinear(std::uint32_t q, unsigned n, std::uint64_t u, unsigned s) {
  auto c = semilinear_impl("semilinear", q, n, u, s, true, s % n != 0);
  c.params["u"] = u;
  c.params["s"] = s;
  return c;
}

Construction extraspecial_rep(unsigned p, unsigned m, std::uint32_t r) {
  if (p % 2 == 0 || !gf::is_prime(p)) throw DomainError("extraspecial_rep needs an odd prime");
  if (m == 0) throw DomainError("extraspecial_rep needs m >= 1");
  const std::uint64_t d = ipow(p, m);
  if (d > 64) throw DomainError("p^m exceeds 64");
  auto F = FiniteField::of_size(r);
  const Elem zeta = root_of_unity(*F, p);
  std::vector<Matrix> gens;
  for (unsigned t = 0; t < m; ++t) {
    const std::uint64_t unit = ipow(p, t);
    std::vector<Elem> diag(d);
    std::vector<std::size_t> shift(d);
    for (std::uint64_t j = 0; j < d; ++j) {
      const std::uint64_t digit = (j / unit) % p;
      diag[j] = F->pow(zeta, static_cast<std::int64_t>(digit));
      const std::uint64_t next = digit + 1 == p ? j - digit * unit : j + unit;
      shift[j] = next;
    }
    gens.push_back(Matrix::diagonal(F, diag));
    gens.push_back(perm_matrix(F, shift));
  }
  auto c = linear("extraspecial_rep", gens);
  c.params = {{"p", p}, {"m", m}, {"r", r}};
  c.predicted_order = ipow(p, 1 + 2 * m);
  return c;
}

Construction extraspecial2(const std::string& type) {
  auto F = FiniteField::get(3, 1);
  if (type == "Q8") {
    auto c = linear("Q8", {Matrix::from_rows(F, {{0, 2}, {1, 0}}), Matrix::from_rows(F, {{1, 1}, {1, 2}})});
    c.predicted_order = 8;
    c.params = {{"type", type}};
    return c;
  }
  if (type == "D8") {
    auto c = linear("D8", {Matrix::from_rows(F, {{0, 1}, {1, 0}}), Matrix::from_rows(F, {{1, 0}, {0, 2}})});
    c.predicted_order = 8;
    c.params = {{"type", type}};
    return c;
  }
  if (type == "D8oQ8") {
    auto c = tensor_embed(extraspecial2("D8"), extraspecial2("Q8"));
    c.name = "D8oQ8";
    c.params = {{"type", type}};
    c.predicted_order = 32;
    return c;
  }
  throw UsageError("unknown 2-group type \"" + type + "\"");
}

Construction extraspecial_normalizer(unsigned p, std::uint32_t r, const std::string& part) {
  auto E = extraspecial_rep(p, 1, r);
  auto F = E.field();
  const Elem zeta = root_of_unity(*F, p);
  auto gens = E.matrices();
  const unsigned half = (p + 1) / 2;  // inverse of 2 mod p
  std::vector<Elem> quad(p);
  for (unsigned j = 0; j < p; ++j) quad[j] = F->pow(zeta, static_cast<std::int64_t>(half * j * j % p));
  Matrix D = Matrix::diagonal(F, quad);
  std::vector<std::size_t> dbl(p);
  for (unsigned j = 0; j < p; ++j) dbl[j] = (2 * j) % p;
  Matrix P2 = perm_matrix(F, dbl);
  Matrix scalar = Matrix::identity(F, p).scaled(F->generator());
  Matrix fourier(F, p);
  for (unsigned j = 0; j < p; ++j)
    for (unsigned k = 0; k < p; ++k) fourier.set(j, k, F->pow(zeta, static_cast<std::int64_t>(j * k % p)));
  if (part == "full_sp") {
    gens.push_back(fourier);
    gens.push_back(D);
  } else if (part == "quaternion") {
    gens.push_back(fourier);
    gens.push_back(P2);
    gens.push_back(scalar);
  } else if (part == "borel") {
    gens.push_back(D);
    gens.push_back(P2);
    gens.push_back(scalar);
  } else if (part == "torus") {
    gens.push_back(P2);
    gens.push_back(scalar);
  } else {
    throw UsageError("unknown normalizer part \"" + part + "\"");
  }
  auto c = linear("extraspecial_normalizer", gens);
  c.params = {{"p", p}, {"r", r}, {"part", part}};
  return c;
}

Construction special_linear(unsigned n, std::uint32_t q) {
  auto F = FiniteField::of_size(q);
  std::vector<Matrix> gens;
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) {
      if (i == j) continue;
      for (unsigned a = 0; a < F->k(); ++a) {
        auto m = Matrix::identity(F, n);
        m.set(i, j, F->pow(F->generator(), a));
        gens.push_back(m);
      }
    }
  if (gens.empty()) gens.push_back(Matrix::identity(F, n));
  auto c = linear("sl", gens);
  c.params = {{"n", n}, {"q", q}};
  std::uint64_t order = 1;
  for (unsigned i = 0; i < n; ++i) order *= ipow(q, n) - ipow(q, i);
  c.predicted_order = order / (q - 1);
  return c;
}

Construction general_linear(unsigned n, std::uint32_t q) {
  auto c = special_linear(n, q);
  auto F = FiniteField::of_size(q);
  auto d = Matrix::identity(F, n);
  d.set(0, 0, F->generator());
  c.generators.push_back({d});
  c.name = "gl";
  c.predicted_order = *c.predicted_order * (q - 1);
  return c;
}

SymplecticSpace SymplecticSpace::standard(unsigned two_m, FieldPtr F) {
  if (two_m == 0 || two_m % 2) throw DomainError("symplectic dimension must be even and positive");
  const unsigned m = two_m / 2;
  Matrix J(F, two_m);
  for (unsigned i = 0; i < m; ++i) {
    J.set(i, m + i, 1);
    J.set(m + i, i, F->neg(1));
  }
  return {J};
}

bool SymplecticSpace::valid() const {
  const auto& F = gram.F();
  for (std::size_t i = 0; i < gram.n(); ++i) {
    if (gram(i, i) != 0) return false;
    for (std::size_t j = 0; j < gram.n(); ++j)
      if (gram(i, j) != F.neg(gram(j, i))) return false;
  }
  return gram.is_invertible();
}

Construction symplectic(unsigned two_m, std::uint32_t q) {
  auto F = FiniteField::of_size(q);
  auto S = SymplecticSpace::standard(two_m, F);
  std::vector<std::vector<Elem>> dirs;
  for (unsigned i = 0; i < two_m; ++i) {
    std::vector<Elem> v(two_m, 0);
    v[i] = 1;
    dirs.push_back(v);
    for (unsigned j = i + 1; j < two_m; ++j) {
      auto w = v;
      w[j] = 1;
      dirs.push_back(w);
    }
  }
  std::vector<Matrix> gens;
  for (const auto& v : dirs) {
    std::vector<Elem> w(two_m, 0);  // J v
    for (unsigned i = 0; i < two_m; ++i)
      for (unsigned k = 0; k < two_m; ++k) w[i] = F->add(w[i], F->mul(S.gram(i, k), v[k]));
    for (unsigned a = 0; a < F->k(); ++a) {
      const Elem lam = F->pow(F->generator(), a);
      auto t = Matrix::identity(F, two_m);
      for (unsigned i = 0; i < two_m; ++i)
        for (unsigned k = 0; k < two_m; ++k) t.set(i, k, F->add(t(i, k), F->mul(lam, F->mul(v[i], w[k]))));
      gens.push_back(t);
    }
  }
  auto c = linear("sp", gens);
  c.params = {{"n", two_m}, {"q", q}};
  const unsigned m = two_m / 2;
  std::uint64_t order = ipow(q, m * m);
  for (unsigned i = 1; i <= m; ++i) order *= ipow(q, 2 * i) - 1;
  c.predicted_order = order;
  return c;
}

Construction d8q8_f10() {
  auto E = extraspecial2("D8oQ8");
  auto B = invariant_symplectic_form(E.matrices());
  if (!B) throw InternalError("D8oQ8 preserves no symplectic form");
  const Matrix P = symplectic_basis_change(*B);
  const Matrix Pinv = P.inverse();
  auto sp = symplectic(4, 3);
  std::vector<Matrix> gens;
  for (const auto& g : sp.matrices()) gens.push_back(P * g * Pinv);
  auto Sp = grp::from_matrices(gens);
  if (Sp->order() != 51840) throw InternalError("Sp(4,3) closure has the wrong order");
  auto lin = dynamic_cast<const grp::LinearRep*>(&Sp->rep());
  std::vector<grp::Index> eg;
  for (const auto& m : E.matrices()) {
    auto w = lin->encode({m});
    auto idx = Sp->find(w.data());
    if (!idx) throw InternalError("E is not inside Sp(B)");
    eg.push_back(*idx);
  }
  auto Esub = grp::generate(*Sp, eg);
  auto N = grp::normalizer(*Sp, Esub, grp::whole(*Sp));
  grp::Index x = 0;
  for (grp::Index y : N.elements())
    if (Sp->elem_order(y) == 5) {
      x = y;
      break;
    }
  if (x == 0) throw InternalError("normalizer of E has no element of order 5");
  eg.push_back(x);
  auto Ex = grp::generate(*Sp, eg);
  auto H = grp::normalizer(*Sp, Ex, N);
  auto c = from_group("d8q8_f10", *Sp, H);
  c.params = {{"normalizer_order", N.order()}, {"form", gf::to_json(B->gram)}};
  return c;
}

Construction direct_sum(const Construction& a, const Construction& b) {
  if (a.is_perm() || b.is_perm()) throw UsageError("direct_sum needs linear constructions");
  Construction c;
  c.name = "direct_sum";
  c.params = {{"a", a.name}, {"b", b.name}};
  auto identities = [](const Construction& x) {
    std::vector<Matrix> ids;
    for (const auto& blk : x.blocks) ids.push_back(Matrix::identity(blk.field, blk.dim));
    return ids;
  };
  const bool merge = a.single_block() && b.single_block() && a.field()->p() == b.field()->p() &&
                     a.field()->k() == b.field()->k();
  std::vector<std::vector<Matrix>> gens;
  for (const auto& g : a.generators) {
    auto v = g;
    for (auto& m : identities(b)) v.push_back(m);
    gens.push_back(v);
  }
  for (const auto& g : b.generators) {
    auto v = identities(a);
    for (const auto& m : g) v.push_back(m);
    gens.push_back(v);
  }
  if (merge) {
    c.blocks = {{a.field(), a.dim() + b.dim()}};
    for (const auto& g : gens) c.generators.push_back({gf::block_diagonal(g[0], g[1])});
  } else {
    c.blocks = a.blocks;
    c.blocks.insert(c.blocks.end(), b.blocks.begin(), b.blocks.end());
    c.generators = gens;
  }
  if (a.predicted_order && b.predicted_order) c.predicted_order = *a.predicted_order * *b.predicted_order;
  return c;
}

Construction tensor_embed(const Construction& a, const Construction& b) {
  if (!a.single_block() || !b.single_block() || !(*a.field() == *b.field()))
    throw UsageError("tensor_embed needs single-block constructions over one field");
  std::vector<Matrix> gens;
  const auto Ia = Matrix::identity(a.field(), a.dim());
  const auto Ib = Matrix::identity(b.field(), b.dim());
  for (const auto& g : a.matrices()) gens.push_back(gf::kronecker(g, Ib));
  for (const auto& g : b.matrices()) gens.push_back(gf::kronecker(Ia, g));
  auto c = linear("tensor", gens);
  c.params = {{"a", a.name}, {"b", b.name}};
  return c;
}

Construction wreath_embed(const Construction& H, unsigned m, const std::string& top) {
  if (!H.single_block()) throw UsageError("wreath_embed needs a single-block construction");
  if (m < 2) throw DomainError("wreath_embed needs m >= 2");
  const auto F = H.field();
  const std::size_t d = H.dim();
  std::vector<Matrix> gens;
  for (const auto& h : H.matrices()) {
    auto g = Matrix::identity(F, d * m);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) g.set(i, j, h(i, j));
    gens.push_back(g);
  }
  auto block_perm = [&](const std::vector<std::size_t>& blocks) {
    std::vector<std::size_t> images(d * m);
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t i = 0; i < d; ++i) images[b * d + i] = blocks[b] * d + i;
    return perm_matrix(F, images);
  };
  std::vector<std::size_t> cyc(m);
  for (std::size_t b = 0; b < m; ++b) cyc[b] = (b + 1) % m;
  gens.push_back(block_perm(cyc));
  if (top == "sym" && m > 2) {
    std::vector<std::size_t> tr(m);
    std::iota(tr.begin(), tr.end(), 0);
    std::swap(tr[0], tr[1]);
    gens.push_back(block_perm(tr));
  } else if (top != "sym" && top != "cyclic") {
    throw UsageError("wreath top must be \"sym\" or \"cyclic\"");
  }
  auto c = linear("wreath", gens);
  c.params = {{"of", H.name}, {"m", m}, {"top", top}};
  if (H.predicted_order) c.predicted_order = ipow(*H.predicted_order, m) * (top == "sym" ? factorial(m) : m);
  return c;
}

Construction symmetric(unsigned n) {
  if (n < 1) throw DomainError("symmetric group needs n >= 1");
  Construction c;
  c.name = "symmetric";
  c.params = {{"n", n}};
  c.degree = n;
  std::vector<grp::Word> cyc(n), tr(n);
  for (unsigned i = 0; i < n; ++i) {
    cyc[i] = (i + 1) % n;
    tr[i] = i;
  }
  if (n > 1) std::swap(tr[0], tr[1]);
  c.permutations = {cyc, tr};
  c.predicted_order = factorial(n);
  return c;
}

Construction alternating(unsigned n) {
  if (n < 3) throw DomainError("alternating group needs n >= 3");
  Construction c;
  c.name = "alternating";
  c.params = {{"n", n}};
  c.degree = n;
  std::vector<grp::Word> three(n), big(n);
  std::iota(three.begin(), three.end(), 0);
  three[0] = 1;
  three[1] = 2;
  three[2] = 0;
  std::iota(big.begin(), big.end(), 0);
  const unsigned start = n % 2 == 1 ? 0 : 1;
  for (unsigned i = start; i < n; ++i) big[i] = i + 1 < n ? i + 1 : start;
  c.permutations = {three, big};
  c.predicted_order = factorial(n) / 2;
  return c;
}

Construction semidirect_cyclic(unsigned n, unsigned m) {
  if (n < 2 || m < 1) throw DomainError("semidirect_cyclic needs n >= 2, m >= 1");
  unsigned a = 0;
  for (unsigned x = 1; x < n && a == 0; ++x) {
    if (std::gcd(x, n) != 1) continue;
    unsigned o = 1;
    std::uint64_t y = x;
    while (y != 1) {
      y = y * x % n;
      ++o;
    }
    if (o == m) a = x;
  }
  if (a == 0) throw DomainError("no unit of order " + std::to_string(m) + " mod " + std::to_string(n));
  Construction c;
  c.name = "semidirect";
  c.params = {{"n", n}, {"m", m}, {"a", a}};
  c.degree = n;
  std::vector<grp::Word> t(n), s(n);
  for (unsigned x = 0; x < n; ++x) {
    t[x] = (x + 1) % n;
    s[x] = static_cast<grp::Word>(std::uint64_t{a} * x % n);
  }
  c.permutations = {t, s};
  c.predicted_order = std::uint64_t{n} * m;
  return c;
}

Construction affine(const Construction& G) {
  if (!G.single_block()) throw UsageError("affine needs a single-block linear construction");
  const auto F = G.field();
  const auto n = G.dim();
  const std::uint64_t size = gf::checked_power(F->q(), static_cast<unsigned>(n), 1u << 16);
  Construction c;
  c.name = "affine";
  c.params = {{"of", G.name}};
  c.degree = size;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<grp::Word> t(size);
    for (std::uint64_t x = 0; x < size; ++x) {
      auto v = gf::Vector::from_code(F, n, x).coords();
      v[i] = F->add(v[i], 1);
      t[x] = static_cast<grp::Word>(gf::Vector(F, v).code());
    }
    c.permutations.push_back(std::move(t));
  }
  for (const auto& g : G.matrices()) {
    std::vector<grp::Word> t(size);
    for (std::uint64_t x = 0; x < size; ++x) t[x] = static_cast<grp::Word>((g * gf::Vector::from_code(F, n, x)).code());
    c.permutations.push_back(std::move(t));
  }
  if (G.predicted_order) c.predicted_order = size * *G.predicted_order;
  return c;
}

Construction perm_product(const Construction& a, const Construction& b) {
  if (!a.is_perm() || !b.is_perm()) throw UsageError("perm_product needs permutation constructions");
  Construction c;
  c.name = "perm_product";
  c.params = {{"a", a.name}, {"b", b.name}};
  c.degree = a.degree + b.degree;
  for (const auto& p : a.permutations) {
    auto q = p;
    for (std::size_t i = 0; i < b.degree; ++i) q.push_back(static_cast<grp::Word>(a.degree + i));
    c.permutations.push_back(std::move(q));
  }
  for (const auto& p : b.permutations) {
    std::vector<grp::Word> q(a.degree);
    std::iota(q.begin(), q.end(), 0);
    for (auto x : p) q.push_back(static_cast<grp::Word>(x + a.degree));
    c.permutations.push_back(std::move(q));
  }
  if (a.predicted_order && b.predicted_order) c.predicted_order = *a.predicted_order * *b.predicted_order;
  return c;
}

namespace {

Construction literal(const nlohmann::json& j) {
  const auto kind = j.at("kind").get<std::string>();
  Construction c;
  c.name = j.value("name", kind);
  if (kind == "perm") {
    c.degree = j.at("degree").get<std::size_t>();
    c.permutations = j.at("generators").get<std::vector<std::vector<grp::Word>>>();
  } else if (kind == "matrix") {
    auto F = gf::field_from_json(j.at("field"));
    c.blocks = {{F, j.at("dim").get<std::size_t>()}};
    for (const auto& g : j.at("generators"))
      c.generators.push_back({Matrix::from_rows(F, g.get<std::vector<std::vector<Elem>>>())});
  } else if (kind == "blocks") {
    for (const auto& b : j.at("blocks")) c.blocks.push_back({gf::field_from_json(b.at("field")), b.at("dim").get<std::size_t>()});
    for (const auto& g : j.at("generators")) {
      std::vector<Matrix> ms;
      for (std::size_t k = 0; k < c.blocks.size(); ++k)
        ms.push_back(Matrix::from_rows(c.blocks[k].field, g.at(k).get<std::vector<std::vector<Elem>>>()));
      c.generators.push_back(std::move(ms));
    }
  } else {
    throw UsageError("unknown group kind \"" + kind + "\"");
  }
  for (const auto& g : c.generators)
    for (std::size_t k = 0; k < g.size(); ++k)
      if (g[k].n() != c.blocks.at(k).dim) throw UsageError("generator dimension differs from the declared one");
  if (j.contains("order")) c.predicted_order = j.at("order").get<std::uint64_t>();
  return c;
}

}  // namespace

Construction from_recipe(const nlohmann::json& r) {
  if (r.contains("kind")) return literal(r);
  if (!r.contains("construct")) throw UsageError("recipe needs \"construct\" or \"kind\"");
  const auto name = r.at("construct").get<std::string>();
  auto u = [&](const char* key) { return r.at(key).get<unsigned>(); };
  if (name == "gamma") return gamma(u("q"), u("n"), r.value("over_prime_field", true));
  if (name == "gamma0") return gamma0(u("q"), u("n"), r.value("over_prime_field", true));
  if (name == "semilinear") return semilinear(u("q"), u("n"), r.at("u").get<std::uint64_t>(), u("s"));
  if (name == "extraspecial_rep") return extraspecial_rep(u("p"), u("m"), u("r"));
  if (name == "extraspecial2") return extraspecial2(r.at("type").get<std::string>());
  if (name == "extraspecial_normalizer") return extraspecial_normalizer(u("p"), u("r"), r.at("part").get<std::string>());
  if (name == "gl") return general_linear(u("n"), u("q"));
  if (name == "sl") return special_linear(u("n"), u("q"));
  if (name == "sp") return symplectic(u("n"), u("q"));
  if (name == "d8q8_f10") return d8q8_f10();
  if (name == "direct_sum") return direct_sum(from_recipe(r.at("a")), from_recipe(r.at("b")));
  if (name == "tensor") return tensor_embed(from_recipe(r.at("a")), from_recipe(r.at("b")));
  if (name == "wreath") return wreath_embed(from_recipe(r.at("of")), u("m"), r.value("top", std::string("sym")));
  if (name == "symmetric") return symmetric(u("n"));
  if (name == "alternating") return alternating(u("n"));
  if (name == "semidirect") return semidirect_cyclic(u("n"), u("m"));
  if (name == "affine") return affine(from_recipe(r.at("of")));
  if (name == "perm_product") return perm_product(from_recipe(r.at("a")), from_recipe(r.at("b")));
  throw UsageError("unknown construction \"" + name + "\"");
}

std::string to_string(Isotropy t) {
  switch (t) {
    case Isotropy::nonsingular:
      return "nonsingular";
    case Isotropy::totally_isotropic:
      return "totally_isotropic";
    case Isotropy::mixed:
      return "mixed";
  }
  return "?";
}

bool is_symplectic(const Matrix& m, const SymplecticSpace& S) {
  if (m.n() != S.dim()) throw UsageError("dimension mismatch");
  return m.transpose() * S.gram * m == S.gram;
}

Isotropy isotropy_type(const std::vector<gf::Vector>& basis, const SymplecticSpace& S) {
  const auto& F = S.gram.F();
  const std::size_t k = basis.size();
  if (k == 0) return Isotropy::totally_isotropic;
  Matrix R(S.gram.field(), k);
  bool zero = true;
  for (std::size_t i = 0; i < k; ++i) {
    auto gv = S.gram * basis[i];  // not needed as column; compute b_i^T G b_j directly
    (void)gv;
    for (std::size_t j = 0; j < k; ++j) {
      Elem s = 0;
      auto gj = S.gram * basis[j];
      for (std::size_t t = 0; t < S.dim(); ++t) s = F.add(s, F.mul(basis[i][t], gj[t]));
      R.set(i, j, s);
      zero &= s == 0;
    }
  }
  if (zero) return Isotropy::totally_isotropic;
  return R.det() != 0 ? Isotropy::nonsingular : Isotropy::mixed;
}

std::vector<Matrix> invariant_alternating_forms(const std::vector<Matrix>& gens) {
  if (gens.empty()) throw UsageError("need generators");
  const auto Fp = gens[0].field();
  const auto& F = *Fp;
  const std::size_t n = gens[0].n();
  std::vector<std::pair<std::size_t, std::size_t>> vars;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) vars.emplace_back(i, j);
  gf::Rows eqs;
  for (const auto& g : gens)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) {
        std::vector<Elem> row(vars.size(), 0);
        for (std::size_t v = 0; v < vars.size(); ++v) {
          auto [i, j] = vars[v];
          Elem c = F.sub(F.mul(g(i, a), g(j, b)), F.mul(g(j, a), g(i, b)));
          if (i == a && j == b) c = F.sub(c, 1);
          row[v] = c;
        }
        eqs.push_back(std::move(row));
      }
  std::vector<Matrix> out;
  for (const auto& sol : gf::nullspace(F, eqs, vars.size())) {
    Matrix X(Fp, n);
    for (std::size_t v = 0; v < vars.size(); ++v) {
      auto [i, j] = vars[v];
      X.set(i, j, sol[v]);
      X.set(j, i, F.neg(sol[v]));
    }
    out.push_back(X);
  }
  return out;
}

std::optional<SymplecticSpace> invariant_symplectic_form(const std::vector<Matrix>& gens) {
  auto basis = invariant_alternating_forms(gens);
  if (basis.empty()) return std::nullopt;
  const auto Fp = basis[0].field();
  const std::uint64_t q = Fp->q();
  const std::uint64_t tries = std::min<std::uint64_t>(gf::checked_power(q, static_cast<unsigned>(std::min<std::size_t>(basis.size(), 12)), ~0ull), 4096);
  for (std::uint64_t code = 1; code < tries; ++code) {
    Matrix X(Fp, basis[0].n());
    std::uint64_t c = code;
    for (const auto& b : basis) {
      X = X + b.scaled(static_cast<Elem>(c % q));
      c /= q;
    }
    if (X.is_invertible()) return SymplecticSpace{X};
  }
  return std::nullopt;
}

Matrix symplectic_basis_change(const SymplecticSpace& S) {
  if (!S.valid()) throw DomainError("form is not a non-degenerate alternating form");
  const auto& F = S.gram.F();
  const std::size_t n = S.dim();
  auto B = [&](const std::vector<Elem>& x, const std::vector<Elem>& y) {
    Elem s = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (x[i] && y[j]) s = F.add(s, F.mul(x[i], F.mul(S.gram(i, j), y[j])));
    return s;
  };
  std::vector<std::vector<Elem>> pool;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Elem> v(n, 0);
    v[i] = 1;
    pool.push_back(v);
  }
  std::vector<std::vector<Elem>> es, fs;
  while (!pool.empty()) {
    std::size_t ie = pool.size(), jf = 0;
    for (std::size_t i = 0; i < pool.size() && ie == pool.size(); ++i)
      for (std::size_t j = 0; j < pool.size(); ++j)
        if (B(pool[i], pool[j]) != 0) {
          ie = i;
          jf = j;
          break;
        }
    if (ie == pool.size()) throw InternalError("degenerate remainder in symplectic reduction");
    auto e = pool[ie];
    auto f = pool[jf];
    const Elem s = F.inv(B(e, f));
    for (auto& x : f) x = F.mul(x, s);
    std::vector<std::vector<Elem>> next;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (i == ie || i == jf) continue;
      auto u = pool[i];
      const Elem uf = B(u, f), ue = B(u, e);
      for (std::size_t t = 0; t < n; ++t) u[t] = F.add(F.sub(u[t], F.mul(uf, e[t])), F.mul(ue, f[t]));
      if (std::any_of(u.begin(), u.end(), [](Elem x) { return x != 0; })) next.push_back(u);
    }
    es.push_back(e);
    fs.push_back(f);
    pool = std::move(next);
  }
  const std::size_t m = es.size();
  Matrix P(S.gram.field(), n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t t = 0; t < n; ++t) {
      P.set(t, i, es[i][t]);
      P.set(t, m + i, fs[i][t]);
    }
  return P;
}

}  // namespace slg::families
