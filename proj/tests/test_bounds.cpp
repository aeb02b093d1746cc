#include <doctest.h>

#include <random>

#include <nlohmann/json.hpp>

#include "slg/bounds.hpp"
#include "slg/errors.hpp"
#include "slg/families.hpp"

using namespace slg;
using namespace slg::bounds;
namespace fam = slg::families;

namespace {

bool is_prime_power(std::uint64_t n) {
  if (n < 2) return false;
  std::uint64_t p = 2;
  while (n % p) ++p;
  while (n % p == 0) n /= p;
  return n == 1;
}

BigInt ipow(std::uint64_t b, unsigned e) { return boost::multiprecision::pow(BigInt(b), e); }

}  // namespace

TEST_CASE("beta values") {
  CHECK(beta(5, 4).beta == Rational(1, 4));
  CHECK(beta(5, 4).branch == BetaBound::Branch::divides_plus_one);
  CHECK(beta(5, 4).t == 1);
  CHECK(beta(5, 11).beta == Rational(3, 11));
  CHECK(beta(5, 11).branch == BetaBound::Branch::divides_minus_one);
  CHECK(beta(7, 8).beta == Rational(1, 4));
  CHECK_THROWS_AS(beta(5, 7), DomainError);
  CHECK_THROWS_AS(beta(3, 4), DomainError);
  CHECK_THROWS_AS(beta(5, 6), DomainError);
}

TEST_CASE("beta never exceeds one third") {
  std::size_t seen = 0;
  for (std::uint64_t s = 5; s <= 100; ++s) {
    if (!gf::is_prime(s)) continue;
    for (std::uint64_t qk = 2; qk <= 10000; ++qk) {
      if (!is_prime_power(qk) || ((qk - 1) % s != 0 && (qk + 1) % s != 0)) continue;
      auto B = beta(s, qk);
      CHECK(B.beta <= Rational(1, 3));
      // floor(beta q^k) <= q^k / 3 in integers
      const Rational bq = B.beta * qk;
      const BigInt fl = numerator(bq) / denominator(bq);
      CHECK(3 * fl <= qk);
      ++seen;
    }
  }
  CHECK(seen > 1000);
}

TEST_CASE("integer roots") {
  for (std::uint64_t x = 0; x < 3000; ++x)
    for (unsigned k = 1; k <= 5; ++k) {
      auto r = ceil_root(BigInt(x), k);
      CHECK(ipow(static_cast<std::uint64_t>(r), k) >= x);
      if (r > 0) CHECK(ipow(static_cast<std::uint64_t>(r) - 1, k) < x);
    }
  CHECK(ceil_root(ipow(3, 100), 5) == ipow(3, 20));
  CHECK(ceil_root(ipow(3, 100) + 1, 5) == ipow(3, 20) + 1);
  CHECK(floor_log(24, 5) == 1);
  CHECK(floor_log(25, 5) == 2);
  CHECK(floor_log(1, 5) == 0);
}

TEST_CASE("star at documented points") {
  auto r = star_evaluate(star_case("e16"), 3, 1, 1);
  // integral exponents: no rounding, so the bound is the exact value
  const Rational expect = Rational(BigInt(1536), ipow(3, 11)) + Rational(BigInt(24 * 1296 * 256 * 2), ipow(3, 16));
  CHECK(r.lhs_upper == expect);
  CHECK(r.holds);

  auto r3 = star_evaluate(star_case("e3"), 1024, 1, 5);
  CHECK(r3.holds);
  CHECK(r3.lhs_upper < Rational(1, 50));
  // 1024^(3/5) = 64 exactly; a_1 = 216 * 1023, |G| <= 5 * 216 * 1023
  CHECK(r3.lhs_upper == Rational(BigInt(216 * 1023) * 64 + 5 * 216 * 1023, ipow(1024, 3)));

  CHECK_THROWS_AS(star_evaluate(star_case("e16"), 1, 1, 1), DomainError);
  CHECK_THROWS_AS(star_evaluate(star_case("e3"), 1024, 1, 1), DomainError);  // no p >= 5 divides dim W
  CHECK_THROWS_AS(star_evaluate(star_case("e2"), 243, 1, 3), DomainError);   // 243 is not a cube
  CHECK_THROWS_AS(star_evaluate(star_case("e16"), 4, 1, 1), DomainError);    // 2 does not divide |W|-1
  CHECK_THROWS_AS(star_evaluate(star_case("e3"), 16, 1, 5), DomainError);    // not a fifth power
  CHECK_THROWS_AS(star_case("e7"), UsageError);
  CHECK(star_cases().size() == 7);
  CHECK(star_case("e9b").terms.size() == 1);
}

TEST_CASE("star bound is sound against high-precision evaluation") {
  std::mt19937_64 rng(20240611);
  std::size_t tried = 0;
  while (tried < 100) {
    const auto& c = star_cases()[rng() % star_cases().size()];
    const unsigned d = 1 + static_cast<unsigned>(rng() % 12);
    const std::uint64_t q = 2 + rng() % 40;
    if (!is_prime_power(q)) continue;
    const BigInt Wb = ipow(q, d);
    if (Wb > (BigInt(1) << 30)) continue;
    const auto W = static_cast<std::uint64_t>(Wb);
    if (!star_admissible(c, W, d)) continue;
    const unsigned b = 1 + static_cast<unsigned>(rng() % 8);
    const auto r = star_evaluate(c, W, b, d);
    const long double hp = star_lhs_float(c, W, b, d);
    CHECK(static_cast<long double>(r.lhs_upper) * (1 + 1e-15L) >= hp);
    // and not absurdly loose: within a factor 2 for b = 1
    if (b == 1 && hp > 0) CHECK(static_cast<long double>(r.lhs_upper) <= 2 * hp);
    ++tried;
  }
}

TEST_CASE("cell bounds dominate point bounds") {
  const auto& c = star_case("e2");
  // odd fifth powers in (2^16, 2^17]
  auto cell = star_evaluate_cell(c, (1u << 16) + 1, 1u << 17, 1, 5);
  for (std::uint64_t q = 9; q < 11; ++q) {
    const auto W = static_cast<std::uint64_t>(ipow(q, 5));
    if (W <= (1u << 16) || W > (1u << 17) || !star_admissible(c, W, 5)) continue;
    CHECK(star_evaluate(c, W, 1, 5).lhs_upper <= cell.lhs_upper);
  }
  CHECK(cell.holds);
}

TEST_CASE("small star sweep has no violations") {
  SweepLimits lim;
  lim.w_log2_max = 20;
  lim.explicit_log2_max = 12;
  lim.b_max = 3;
  lim.dim_max = 20;
  std::size_t lines = 0;
  auto S = star_sweep(lim, [&](const SweepRecord& r) {
    auto j = to_json(r);
    CHECK(j["holds"] == r.result.holds);
    ++lines;
  });
  CHECK(S.violations == 0);
  CHECK(S.points > 1000);
  CHECK(S.cells > 0);
  CHECK(lines == S.points + S.cells);
  CHECK(S.worst < 1);
}

TEST_CASE("counting lemmas") {
  auto sl = fam::special_linear(2, 3).close();
  auto Dsl = qp::decompose(action::Action::on_module(sl));
  auto rs = counting_check(sl, Dsl, 3);
  REQUIRE(rs.size() == 2);
  CHECK(rs[0].lhs == 8);
  CHECK(rs[0].rhs == 16);
  CHECK(rs[1].rhs == 8);
  CHECK(rs[0].pass);
  CHECK(rs[1].pass);

  auto g = fam::gamma(2, 4).close();
  auto Dg = qp::decompose(action::Action::on_module(g));
  for (const auto& r : counting_check(g, Dg, 5)) {
    CHECK(r.lhs == 0);
    CHECK(r.pass);
  }
  auto top = top_counting_check(g, Dg.A);
  CHECK(top.lhs == 0);
  CHECK(top.rhs == 0);
  CHECK(top.pass);
  auto self = top_counting_check(g, grp::whole(*g));
  CHECK(self.lhs == 0);
  CHECK(self.rhs == 0);

  auto g10 = fam::gamma(2, 10).close();
  auto D10 = qp::decompose(action::Action::on_module(g10));
  REQUIRE(D10.A.order() == 1023);
  auto t10 = top_counting_check(g10, D10.A);
  std::uint64_t order5 = 0;
  for (grp::Index x = 0; x < g10->order(); ++x) order5 += !D10.A.contains(x) && g10->elem_order(x) == 5;
  CHECK(t10.lhs == order5 / 4);
  CHECK(t10.rhs == 1023);
  CHECK(t10.pass);

  auto q5 = fam::extraspecial_normalizer(5, 11, "quaternion").close();
  auto D5 = qp::decompose(action::Action::on_module(q5));
  for (const auto& r : counting_check(q5, D5, 5)) CHECK(r.pass);

  auto wr = fam::wreath_embed(fam::general_linear(2, 2), 2).close();
  CHECK_THROWS_AS(top_counting_check(wr, grp::trivial(*wr)), UsageError);
}

TEST_CASE("symplectic order bounds on constructed instances") {
  auto sp22 = fam::symplectic(2, 2).close();
  for (const auto& r : scr_sp_audit(sp22, 2, 3 - 1)) CHECK(r.pass);
  auto sl23 = fam::special_linear(2, 3).close();
  auto rs = scr_sp_audit(sl23, 2, 3);
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].pass);
  auto z5z4 = fam::semilinear(2, 4, 3, 1).close();
  for (const auto& r : scr_sp_audit(z5z4, 4, 2)) CHECK(r.pass);

  auto f10 = fam::d8q8_f10().close();
  auto rf = scr_sp_audit(f10, 4, 3);
  for (const auto& r : rf) CHECK(r.pass);
  // independent census: element orders by repeated multiplication
  std::uint64_t five = 0, big = 0;
  for (grp::Index x = 1; x < f10->order(); ++x) {
    unsigned o = 1;
    for (grp::Index y = x; y != 0; y = f10->mul(y, x)) ++o;
    if (o == 5) ++five;
    if (o >= 7 && gf::is_prime(o)) ++big;
  }
  CHECK(five <= 64);
  CHECK(big == 0);
  CHECK(rf[1].lhs == five);

  CHECK_THROWS_AS(scr_sp_audit(fam::gamma(2, 4).close(), 4, 2), UsageError);  // no invariant form
  CHECK_THROWS_AS(scr_sp_audit(sl23, 4, 3), UsageError);
}
