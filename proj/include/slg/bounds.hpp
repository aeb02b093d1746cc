#pragma once

// Exact auditors for the fixed-point estimate, the counting lemmas, the
// symplectic order bounds and the star inequality used in the orbit theorem.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json_fwd.hpp>

#include "slg/action.hpp"
#include "slg/qp.hpp"

namespace slg::bounds {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

std::string to_string(const Rational& r);

struct BetaBound {
  enum class Branch { divides_minus_one, divides_plus_one };
  std::uint64_t s = 0, qk = 0;
  Branch branch = Branch::divides_minus_one;
  std::uint64_t t = 0;
  Rational beta;
};

/// Throws DomainError unless s is a prime >= 5 dividing q^k - 1 or q^k + 1.
BetaBound beta(std::uint64_t s, std::uint64_t qk);

// ---- star inequality -------------------------------------------------------

/// a_i = coeff * (|W| - 1), times floor(log5 dim W) when `log_factor`.
struct StarTerm {
  Rational coeff;
  bool log_factor = false;
  unsigned beta_num = 0, beta_den = 1;
};

struct StarCase {
  std::string name;  // "e16", "e9a", "e9b", "e8", "e4", "e3", "e2"
  unsigned e = 0;
  std::vector<StarTerm> terms;
  BigInt g_coeff;  // |G| <= dim W * g_coeff * (|W| - 1)
  unsigned w_minus_one_divisor = 1;  // smallest prime of e divides |W| - 1
  bool needs_p = false;              // some prime p >= 5 divides dim W
  unsigned p_floor_base = 0;         // and then |W| >= base^p
};

const std::vector<StarCase>& star_cases();
const StarCase& star_case(const std::string& name);

struct StarResult {
  bool holds = false;
  Rational lhs_upper;
};

/// Sound upper bound of the left side at one admissible point.  Throws
/// DomainError when the side conditions fail.
StarResult star_evaluate(const StarCase& c, std::uint64_t W_size, unsigned b, unsigned dim_W,
                         std::optional<BigInt> G_order_bound = std::nullopt);
/// Upper bound valid for every |W| in [lo, hi] (no side-condition check).
StarResult star_evaluate_cell(const StarCase& c, std::uint64_t lo, std::uint64_t hi, unsigned b, unsigned dim_W);
/// Same quantity in long double, no rounding control; for soundness tests.
long double star_lhs_float(const StarCase& c, std::uint64_t W_size, unsigned b, unsigned dim_W);

/// Whether the side conditions of the case hold at a point.
bool star_admissible(const StarCase& c, std::uint64_t W_size, unsigned dim_W);

struct SweepLimits {
  unsigned w_log2_max = 30;
  unsigned explicit_log2_max = 16;  // explicit points below, dyadic cells above
  unsigned b_max = 8;
  unsigned dim_max = 64;
};

struct SweepRecord {
  std::string case_name;
  std::uint64_t w_lo = 0, w_hi = 0;  // equal for explicit points
  unsigned b = 0, dim_W = 0;
  StarResult result;
};

struct SweepSummary {
  std::size_t points = 0, cells = 0, violations = 0;
  Rational worst;  // largest lhs_upper seen
  std::string worst_at;
};

/// Visits every admissible grid point (and dyadic cell above the explicit
/// range); `sink` may be empty.
SweepSummary star_sweep(const SweepLimits& lim, const std::function<void(const SweepRecord&)>& sink = {});
nlohmann::json to_json(const SweepRecord& r);

// ---- counting lemmas -------------------------------------------------------

struct CountReport {
  std::string name;
  bool pass = false;
  Rational lhs, rhs;
  nlohmann::json to_json() const;
};

/// NEP_p(A\F) against NEP_p(A/F)|F| and against that divided by the
/// product of the extraspecial primes other than p.
std::vector<CountReport> counting_check(const grp::GroupPtr& G, const qp::Decomposition& D, unsigned p);
/// NSP_pi0(G\A) <= floor(log5 |G/A|) |A|; UsageError when G/A is not cyclic.
CountReport top_counting_check(const grp::GroupPtr& G, const grp::Subgroup& A);

/// The numeric bounds for solvable completely reducible subgroups of
/// Sp(n, q), (n, q) in {(2,2),(4,2),(6,2),(8,2),(2,3),(4,3)}.  Throws
/// UsageError when no invariant non-degenerate alternating form exists, the
/// group is not solvable, or (n, q) is not covered.
std::vector<CountReport> scr_sp_audit(const grp::GroupPtr& G, unsigned n, unsigned q);

std::uint64_t floor_log(std::uint64_t x, std::uint64_t base);
/// Least r with r^k >= x.
BigInt ceil_root(const BigInt& x, unsigned k);

}  // namespace slg::bounds
