#include <doctest.h>

#include <set>

#include "slg/action.hpp"
#include "slg/errors.hpp"
#include "slg/families.hpp"

using namespace slg;
using namespace slg::action;
namespace fam = slg::families;

namespace {

// The element of Gamma(2^4) acting as x -> x^e on the field.
grp::Index power_map(const Action& A, std::int64_t e) {
  auto F = gf::FiniteField::get(2, 4);
  const auto& G = A.group();
  for (grp::Index g = 0; g < G.order(); ++g) {
    bool ok = true;
    for (std::uint64_t v = 0; v < 16 && ok; ++v) ok = A.image(g, v) == F->pow(static_cast<gf::Elem>(v), e);
    if (ok) return g;
  }
  FAIL("power map not found");
  return 0;
}

}  // namespace

TEST_CASE("orbits of Gamma(2^4) and SL(2,3)") {
  auto A = Action::on_module(fam::gamma(2, 4).close());
  auto O = orbits(A);
  CHECK(O.count() == 2);
  CHECK(O.sizes == std::vector<std::uint64_t>{1, 15});
  CHECK(regular_orbit_count(A, O) == 0);
  CHECK(stabilizer(A, 1).order() == 4);
  CHECK(stabilizer(A, 0).order() == 60);
  CHECK(A.fixed_count(power_map(A, 4)) == 4);
  CHECK(A.fixed_count(power_map(A, 2)) == 2);
  CHECK(A.is_faithful());

  auto S = Action::on_module(fam::special_linear(2, 3).close());
  auto OS = orbits(S);
  CHECK(OS.sizes == std::vector<std::uint64_t>{1, 8});
  CHECK(regular_orbit_count(S, OS) == 0);
  CHECK(pi0_regular_mod_K(S, OS, grp::whole(S.group())).size() == 2);
  CHECK(pi0_regular_mod_K(S, OS, grp::trivial(S.group())).size() == 2);
}

TEST_CASE("trivial group has singleton orbits") {
  auto F = gf::FiniteField::get(3, 1);
  auto A = Action::on_module(grp::from_matrices({gf::Matrix::identity(F, 3)}));
  CHECK(orbits(A).count() == 27);
}

TEST_CASE("orbit-stabilizer and Burnside on assorted actions") {
  std::vector<fam::Construction> cs = {fam::gamma(2, 4),
                                       fam::special_linear(2, 3),
                                       fam::extraspecial_normalizer(3, 4, "full_sp"),
                                       fam::wreath_embed(fam::general_linear(2, 2), 2),
                                       fam::direct_sum(fam::special_linear(2, 3), fam::gamma(2, 4)),
                                       fam::semidirect_cyclic(11, 5),
                                       fam::symmetric(4),
                                       fam::gamma(3, 2)};
  for (const auto& c : cs) {
    auto G = c.close();
    auto A = c.is_perm() ? Action::on_points(G) : Action::on_module(G);
    auto O = orbits(A);
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < O.count(); ++i) {
      total += O.sizes[i];
      CHECK(O.sizes[i] * stabilizer(A, O.reps[i]).order() == G->order());
    }
    CHECK(total == A.size());
    CHECK(burnside_count(A) == O.count());
    // brute-force Burnside over every element
    std::uint64_t sum = 0;
    for (grp::Index g = 0; g < G->order(); ++g) {
      std::uint64_t fixed = 0;
      if (G->order() * A.size() <= 200000)
        for (std::uint64_t v = 0; v < A.size(); ++v) fixed += A.image(g, v) == v;
      else
        fixed = A.fixed_count(g);
      if (G->order() * A.size() <= 200000) CHECK(fixed == A.fixed_count(g));
      sum += fixed;
    }
    CHECK(sum == O.count() * G->order());
  }
}

TEST_CASE("mixed characteristic codes") {
  auto c = fam::direct_sum(fam::special_linear(2, 3), fam::gamma(2, 4));
  auto A = Action::on_module(c.close());
  CHECK(A.size() == 9 * 16);
  auto O = orbits(A);
  CHECK(O.count() == 4);
  for (std::uint64_t v = 0; v < A.size(); v += 7) CHECK(A.encode(A.decode(v)) == v);
}

TEST_CASE("extraspecial e=5 normalizer on GF(11)^5 has pi0-regular orbits mod 1") {
  auto A = Action::on_module(fam::extraspecial_normalizer(5, 11, "borel").close());
  CHECK(A.size() == 161051);
  auto O = orbits(A);
  auto reps = pi0_regular_mod_K(A, O, grp::trivial(A.group()));
  CHECK(reps.size() >= 2);
}

TEST_CASE("delta search") {
  auto z5 = Action::on_points(grp::from_permutations(5, {{1, 2, 3, 4, 0}}));
  CHECK(delta_search(z5) == std::vector<std::uint64_t>{0});
  auto s4 = Action::on_points(fam::symmetric(4).close());
  CHECK(delta_search(s4) == std::vector<std::uint64_t>{0});
  auto z7z3 = Action::on_points(grp::from_permutations(7, {{1, 2, 3, 4, 5, 6, 0}, {0, 2, 4, 6, 1, 3, 5}}));
  auto d = delta_search(z7z3);
  CHECK(set_stabilizer(z7z3, d).order() % 7 != 0);
  // exhaustive: the answer is the first qualifying subset in (size, lex) order
  std::set<std::vector<std::uint64_t>> good;
  for (unsigned mask = 1; mask < 128; ++mask) {
    std::vector<std::uint64_t> s;
    for (unsigned i = 0; i < 7; ++i)
      if (mask >> i & 1) s.push_back(i);
    auto o = set_stabilizer(z7z3, s).order();
    while (o % 2 == 0) o /= 2;
    while (o % 3 == 0) o /= 3;
    if (o == 1) good.insert(s);
  }
  std::vector<std::uint64_t> best;
  for (const auto& s : good)
    if (best.empty() || s.size() < best.size()) best = s;
  CHECK(d == best);
  CHECK_THROWS_AS(delta_search(Action::on_points(fam::alternating(5).close())), UsageError);
}
