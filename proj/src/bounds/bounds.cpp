#include "slg/bounds.hpp"

#include <algorithm>
#include <sstream>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <nlohmann/json.hpp>

#include "slg/errors.hpp"
#include "slg/families.hpp"

namespace slg::bounds {

using grp::Index;
using grp::Subgroup;

std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << "/" << denominator(r);
  return os.str();
}

std::uint64_t floor_log(std::uint64_t x, std::uint64_t base) {
  if (x == 0 || base < 2) throw DomainError("floor_log needs x >= 1 and base >= 2");
  std::uint64_t k = 0;
  while (x >= base) {
    x /= base;
    ++k;
  }
  return k;
}

BigInt ceil_root(const BigInt& x, unsigned k) {
  if (x < 0 || k == 0) throw DomainError("ceil_root needs x >= 0 and k >= 1");
  if (x <= 1 || k == 1) return x;
  // Newton from above converges to floor(x^(1/k))
  const unsigned bits = static_cast<unsigned>(msb(x)) / k + 1;
  BigInt r = BigInt(1) << bits;
  while (true) {
    BigInt next = ((k - 1) * r + x / pow(r, k - 1)) / k;
    if (next >= r) break;
    r = next;
  }
  if (pow(r, k) < x) ++r;
  return r;
}

namespace {

std::optional<std::pair<std::uint64_t, unsigned>> prime_power(std::uint64_t n) {
  if (n < 2) return std::nullopt;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    unsigned k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    if (n != 1) return std::nullopt;
    return std::pair{p, k};
  }
  return std::pair{n, 1u};
}

unsigned smallest_pi0_prime(unsigned n) {
  for (unsigned p = 5; p <= n; ++p)
    if (n % p == 0 && gf::is_prime(p)) return p;
  return 0;
}

// exact integer d-th root of n, if any
std::optional<std::uint64_t> exact_root(std::uint64_t n, unsigned d) {
  auto r = ceil_root(BigInt(n), d);
  if (pow(r, d) != n) return std::nullopt;
  return static_cast<std::uint64_t>(r);
}

Rational to_rational(const BigInt& x) { return Rational(x); }

}  // namespace

BetaBound beta(std::uint64_t s, std::uint64_t qk) {
  if (s < 5 || !gf::is_prime(s)) throw DomainError("beta: s must be a prime >= 5");
  if (!prime_power(qk)) throw DomainError("beta: q^k must be a prime power");
  BetaBound B;
  B.s = s;
  B.qk = qk;
  if ((qk - 1) % s == 0) {
    B.branch = BetaBound::Branch::divides_minus_one;
    B.t = (qk - 1) / s;
    B.beta = Rational(B.t + 1, s * B.t + 1);
  } else if ((qk + 1) % s == 0) {
    B.branch = BetaBound::Branch::divides_plus_one;
    B.t = (qk + 1) / s;
    B.beta = Rational(B.t, s * B.t - 1);
  } else {
    throw DomainError("beta: s divides neither q^k - 1 nor q^k + 1");
  }
  if (B.beta > Rational(1, 3)) throw InternalError("beta exceeds 1/3");
  return B;
}

// ---- star ------------------------------------------------------------------

const std::vector<StarCase>& star_cases() {
  static const std::vector<StarCase> cases = [] {
    auto term = [](Rational c, bool lg, unsigned num, unsigned den) { return StarTerm{c, lg, num, den}; };
    std::vector<StarCase> v;
    // a_1 = 24 2^8 (|W|-1)/2/4, a_2 = floor(log5 dim W) 24 6^4 2^8 (|W|-1)
    v.push_back({"e16", 16, {term(Rational(24 * 256, 8), false, 5, 1), term(24 * 1296 * 256, true, 8, 1)},
                 BigInt(24 * 1296 * 256), 2, false, 0});
    v.push_back({"e9a", 9, {term(Rational(64 * 81, 12), false, 3, 1), term(576 * 2 * 81, true, 9, 5)},
                 BigInt(576 * 2 * 81), 3, true, 4});
    v.push_back({"e9b", 9, {term(Rational(64 * 81, 12), false, 3, 1)}, BigInt(320 * 81), 3, false, 0});
    v.push_back({"e8", 8, {term(Rational(6 * 64, 8), false, 2, 1), term(1296 * 64, true, 8, 5)}, BigInt(1296 * 64), 2,
                 true, 3});
    v.push_back({"e4", 4, {term(Rational(4 * 16, 8), false, 1, 1), term(36 * 2 * 16, true, 4, 5)}, BigInt(36 * 2 * 16),
                 2, true, 3});
    v.push_back({"e3", 3, {term(24 * 9, true, 3, 5)}, BigInt(24 * 9), 3, true, 4});
    v.push_back({"e2", 2, {term(4, true, 2, 5)}, BigInt(6 * 4), 2, true, 3});
    return v;
  }();
  return cases;
}

const StarCase& star_case(const std::string& name) {
  for (const auto& c : star_cases())
    if (c.name == name) return c;
  throw UsageError("unknown star case '" + name + "'");
}

bool star_admissible(const StarCase& c, std::uint64_t W, unsigned dim_W) {
  if (W < 2 || dim_W < 1) return false;
  auto q = exact_root(W, dim_W);
  if (!q || !prime_power(*q)) return false;
  if ((W - 1) % c.w_minus_one_divisor != 0) return false;
  if (c.needs_p) {
    const unsigned p = smallest_pi0_prime(dim_W);
    if (p == 0) return false;
    // |W| >= base^p, compared without overflow
    BigInt floor_value = pow(BigInt(c.p_floor_base), p);
    if (BigInt(W) < floor_value) return false;
  }
  return true;
}

namespace {

// Upper bound of |W|^(u b / v) for |W| = w.
BigInt power_upper(std::uint64_t w, unsigned u, unsigned v, unsigned b) {
  if (v == 1) return pow(BigInt(w), u * b);
  return pow(ceil_root(pow(BigInt(w), u), v), b);
}

Rational term_coeff(const StarTerm& t, std::uint64_t w_minus_one, unsigned dim_W) {
  Rational a = t.coeff * Rational(w_minus_one);
  if (t.log_factor) a *= floor_log(dim_W, 5);
  return a;
}

// numerator from hi, denominator from lo: valid over the whole range
StarResult evaluate(const StarCase& c, std::uint64_t lo, std::uint64_t hi, unsigned b, unsigned dim_W,
                    const std::optional<BigInt>& G_bound) {
  Rational num = 0;
  for (const auto& t : c.terms) {
    const Rational a = term_coeff(t, hi - 1, dim_W);
    if (a == 0) continue;
    num += a * to_rational(power_upper(hi, t.beta_num, t.beta_den, b));
  }
  num += to_rational(G_bound ? *G_bound : BigInt(dim_W) * c.g_coeff * (hi - 1));
  StarResult r;
  r.lhs_upper = num / to_rational(pow(BigInt(lo), c.e * b));
  r.holds = r.lhs_upper < 1;
  return r;
}

}  // namespace

StarResult star_evaluate(const StarCase& c, std::uint64_t W, unsigned b, unsigned dim_W,
                         std::optional<BigInt> G_order_bound) {
  if (b < 1) throw DomainError("star: b must be positive");
  if (!star_admissible(c, W, dim_W))
    throw DomainError("star " + c.name + ": side conditions fail at |W|=" + std::to_string(W) +
                      ", dim W=" + std::to_string(dim_W));
  return evaluate(c, W, W, b, dim_W, G_order_bound);
}

StarResult star_evaluate_cell(const StarCase& c, std::uint64_t lo, std::uint64_t hi, unsigned b, unsigned dim_W) {
  if (lo < 2 || hi < lo || b < 1) throw DomainError("star: bad cell");
  return evaluate(c, lo, hi, b, dim_W, std::nullopt);
}

long double star_lhs_float(const StarCase& c, std::uint64_t W, unsigned b, unsigned dim_W) {
  using Float = boost::multiprecision::cpp_bin_float_50;
  const Float w(W);
  Float sum = 0;
  for (const auto& t : c.terms) {
    const Float a(term_coeff(t, W - 1, dim_W));
    const Float ex = (Float(t.beta_num) / t.beta_den - c.e) * b;
    sum += a * pow(w, ex);
  }
  sum += Float(BigInt(dim_W) * c.g_coeff * (W - 1)) / pow(w, Float(c.e * b));
  return static_cast<long double>(sum);
}

SweepSummary star_sweep(const SweepLimits& lim, const std::function<void(const SweepRecord&)>& sink) {
  if (lim.explicit_log2_max > lim.w_log2_max || lim.w_log2_max > 62) throw UsageError("star sweep: bad limits");
  const std::uint64_t explicit_max = 1ull << lim.explicit_log2_max;
  // prime powers up to explicit_max by sieve
  std::vector<bool> composite(explicit_max + 1, false);
  std::vector<std::uint64_t> qs;
  for (std::uint64_t p = 2; p <= explicit_max; ++p) {
    if (composite[p]) continue;
    for (std::uint64_t m = p * p; m <= explicit_max; m += p) composite[m] = true;
    for (std::uint64_t q = p; q <= explicit_max; q *= p) qs.push_back(q);
  }
  std::sort(qs.begin(), qs.end());

  SweepSummary S;
  auto record = [&](SweepRecord&& r) {
    if (!r.result.holds) ++S.violations;
    if (S.points + S.cells == 0 || r.result.lhs_upper > S.worst) {
      S.worst = r.result.lhs_upper;
      S.worst_at = r.case_name + " |W|=" + std::to_string(r.w_lo) +
                   (r.w_hi != r.w_lo ? ".." + std::to_string(r.w_hi) : "") + " b=" + std::to_string(r.b) +
                   " dimW=" + std::to_string(r.dim_W);
    }
    (r.w_lo == r.w_hi ? S.points : S.cells) += 1;
    if (sink) sink(r);
  };

  for (const auto& c : star_cases()) {
    for (unsigned d = 1; d <= lim.dim_max; ++d) {
      if (c.needs_p && smallest_pi0_prime(d) == 0) continue;
      for (auto q : qs) {
        const BigInt W = pow(BigInt(q), d);
        if (W > explicit_max) break;
        const auto w = static_cast<std::uint64_t>(W);
        if (!star_admissible(c, w, d)) continue;
        for (unsigned b = 1; b <= lim.b_max; ++b) record({c.name, w, w, b, d, star_evaluate(c, w, b, d)});
      }
      // dyadic cells (2^k, 2^(k+1)]; a cell is kept when it can contain an
      // admissible |W|, that is |W| >= 2^d and |W| >= base^p
      BigInt least = BigInt(1) << d;
      if (c.needs_p) least = std::max(least, BigInt(pow(BigInt(c.p_floor_base), smallest_pi0_prime(d))));
      for (unsigned k = lim.explicit_log2_max; k < lim.w_log2_max; ++k) {
        const std::uint64_t lo = (1ull << k) + 1, hi = 1ull << (k + 1);
        if (BigInt(hi) < least) continue;
        for (unsigned b = 1; b <= lim.b_max; ++b) record({c.name, lo, hi, b, d, star_evaluate_cell(c, lo, hi, b, d)});
      }
    }
  }
  return S;
}

nlohmann::json to_json(const SweepRecord& r) {
  return {{"case", r.case_name},
          {"W_lo", r.w_lo},
          {"W_hi", r.w_hi},
          {"b", r.b},
          {"dimW", r.dim_W},
          {"holds", r.result.holds},
          {"lhs_upper", {{"num", numerator(r.result.lhs_upper).str()}, {"den", denominator(r.result.lhs_upper).str()}}}};
}

// ---- counting --------------------------------------------------------------

nlohmann::json CountReport::to_json() const {
  return {{"name", name}, {"pass", pass}, {"lhs", bounds::to_string(lhs)}, {"rhs", bounds::to_string(rhs)}};
}

namespace {

CountReport compare(std::string name, Rational lhs, Rational rhs) {
  CountReport r{std::move(name), lhs <= rhs, lhs, rhs};
  return r;
}

}  // namespace

std::vector<CountReport> counting_check(const grp::GroupPtr& G, const qp::Decomposition& D, unsigned p) {
  if (!gf::is_prime(p)) throw DomainError("counting_check: p must be prime");
  const auto outside = grp::difference(D.A, D.F);
  const std::uint64_t lhs = grp::census(*G, outside).nep_of({p});
  auto Q = grp::quotient(G, D.F);
  const std::uint64_t top = grp::census(*Q.group, grp::image(Q, D.A)).nep_of({p});
  const Rational first = Rational(top) * D.F.order();
  std::uint64_t prod = 1;
  for (const auto& c : D.components)
    if (c.extraspecial && c.p != p) prod *= c.p;
  return {compare("NEP_p(A\\F) <= NEP_p(A/F)|F|", lhs, first),
          compare("NEP_p(A\\F) <= NEP_p(A/F)|F|/prod p_i", lhs, first / prod)};
}

CountReport top_counting_check(const grp::GroupPtr& G, const Subgroup& A) {
  const auto all = grp::whole(*G);
  if (!grp::is_normal(*G, A) || !grp::is_cyclic_quotient(*G, all, A))
    throw UsageError("top_counting_check: G/A must be cyclic");
  const std::uint64_t lhs = grp::census(*G, grp::difference(all, A)).nsp_pi0();
  const std::uint64_t rhs = floor_log(G->order() / A.order(), 5) * A.order();
  return compare("NSP_pi0(G\\A) <= floor(log5 |G/A|)|A|", lhs, rhs);
}

std::vector<CountReport> scr_sp_audit(const grp::GroupPtr& G, unsigned n, unsigned q) {
  if (G->rep().kind() != "matrix") throw UsageError("scr_sp_audit: a single-block matrix group is required");
  const auto& lin = static_cast<const grp::LinearRep&>(G->rep());
  const auto& blk = lin.blocks()[0];
  if (blk.dim != n || blk.field->q() != q) throw UsageError("scr_sp_audit: group does not act on GF(q)^n");
  std::vector<gf::Matrix> gens;
  for (Index g : G->generators()) gens.push_back(grp::matrices_of(*G, g)[0]);
  if (gens.empty()) gens.push_back(gf::Matrix::identity(blk.field, n));
  if (!families::invariant_symplectic_form(gens)) throw UsageError("scr_sp_audit: no invariant symplectic form");
  if (!grp::is_solvable(*G)) throw UsageError("scr_sp_audit: group is not solvable");
  if (!qp::complete_reducibility(action::Action::on_module(G)).completely_reducible)
    throw UsageError("scr_sp_audit: module is not completely reducible");

  const std::uint64_t order = G->order();
  const auto cen = grp::census(*G, grp::whole(*G));
  // pi0-elements: abelian and inside F(G)
  auto pi0_in_fitting = [&] {
    const auto Fit = grp::fitting(*G);
    std::vector<Index> pi0;
    for (Index x = 1; x < order; ++x)
      if (grp::is_pi0_number(G->elem_order(x))) pi0.push_back(x);
    bool ok = std::all_of(pi0.begin(), pi0.end(), [&](Index x) { return Fit.contains(x); });
    for (std::size_t i = 0; ok && i < pi0.size(); ++i)
      for (std::size_t j = i + 1; ok && j < pi0.size(); ++j) ok = G->mul(pi0[i], pi0[j]) == G->mul(pi0[j], pi0[i]);
    return compare("G_pi0 abelian and inside F(G)", ok ? 0 : 1, 0);
  };
  auto divides = [&](std::uint64_t m) { return compare("|G| divides " + std::to_string(m), m % order, 0); };
  std::vector<CountReport> out;
  if (n == 2 && q == 2) {
    out.push_back(divides(6));
  } else if (n == 4 && q == 2) {
    out.push_back(compare("|G| <= 72", order, 72));
    out.push_back(compare("NEP_pi0(G) <= 4", cen.nep_pi0(), 4));
    out.push_back(pi0_in_fitting());
  } else if (n == 6 && q == 2) {
    out.push_back(compare("|G| <= 6^4", order, 1296));
    out.push_back(compare("NEP_pi0(G) <= 6", cen.nep_pi0(), 6));
    out.push_back(pi0_in_fitting());
  } else if (n == 8 && q == 2) {
    out.push_back(compare("|G| <= 6^4 * 24", order, 1296 * 24));
    out.push_back(compare("NEP_pi0(G) <= 24", cen.nep_pi0(), 24));
  } else if (n == 2 && q == 3) {
    out.push_back(divides(24));
  } else if (n == 4 && q == 3) {
    out.push_back(compare("|G| <= 24^2 * 2", order, 1152));
    out.push_back(compare("NEP_5(G) <= 64", cen.nep_of({5}), 64));
    std::uint64_t large = 0;
    for (const auto& [p, c] : cen.nep)
      if (p >= 7) large += c;
    out.push_back(compare("no elements of prime order >= 7", large, 0));
    if (order % 5 == 0) out.push_back(compare("|G| <= 320 when 5 divides |G|", order, 320));
  } else {
    throw UsageError("scr_sp_audit: (n, q) not covered");
  }
  return out;
}

}  // namespace slg::bounds
