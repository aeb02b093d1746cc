#include <doctest.h>

#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "slg/errors.hpp"
#include "slg/grp.hpp"

using namespace slg;
using namespace slg::grp;

namespace {

GroupPtr sym(std::size_t n) {
  std::vector<Word> cyc(n), tr(n);
  for (std::size_t i = 0; i < n; ++i) {
    cyc[i] = static_cast<Word>((i + 1) % n);
    tr[i] = static_cast<Word>(i);
  }
  std::swap(tr[0], tr[1]);
  return from_permutations(n, {cyc, tr});
}

GroupPtr alt5() { return from_permutations(5, {{1, 2, 3, 4, 0}, {1, 2, 0, 3, 4}}); }

GroupPtr cyclic(std::size_t n) {
  std::vector<Word> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = static_cast<Word>((i + 1) % n);
  return from_permutations(n, {c});
}

GroupPtr sl23() {
  auto F = gf::FiniteField::get(3, 1);
  return from_matrices({gf::Matrix::from_rows(F, {{1, 1}, {0, 1}}), gf::Matrix::from_rows(F, {{1, 0}, {1, 1}})});
}

GroupPtr gl22() {
  auto F = gf::FiniteField::get(2, 1);
  return from_matrices({gf::Matrix::from_rows(F, {{1, 1}, {0, 1}}), gf::Matrix::from_rows(F, {{0, 1}, {1, 0}})});
}

// Z_7 : Z_3 on 7 points.
GroupPtr z7z3() { return from_permutations(7, {{1, 2, 3, 4, 5, 6, 0}, {0, 2, 4, 6, 1, 3, 5}}); }

std::vector<std::size_t> orders(const std::vector<Subgroup>& s) {
  std::vector<std::size_t> o;
  for (const auto& h : s) o.push_back(h.order());
  return o;
}

}  // namespace

TEST_CASE("closure orders") {
  CHECK(gl22()->order() == 6);
  CHECK(sl23()->order() == 24);
  CHECK(sym(4)->order() == 24);
  CHECK(alt5()->order() == 60);
  CHECK(z7z3()->order() == 21);
  CHECK_THROWS_AS(from_permutations(6, {{1, 2, 3, 4, 5, 0}, {1, 0, 2, 3, 4, 5}}, 100), ResourceError);
  try {
    from_permutations(6, {{1, 2, 3, 4, 5, 0}, {1, 0, 2, 3, 4, 5}}, 100);
  } catch (const ResourceError& e) {
    CHECK(e.partial() == 100);
  }
}

TEST_CASE("group axioms on the enumeration") {
  for (auto G : {sl23(), sym(4), z7z3()}) {
    const auto n = static_cast<Index>(G->order());
    for (Index a = 0; a < n; ++a) {
      CHECK(G->mul(a, G->inv(a)) == 0);
      CHECK(G->mul(0, a) == a);
      CHECK(G->pow(a, G->elem_order(a)) == 0);
      for (Index b = 0; b < n; b += 3)
        for (Index c = 0; c < n; c += 5) CHECK(G->mul(G->mul(a, b), c) == G->mul(a, G->mul(b, c)));
    }
  }
}

TEST_CASE("derived series and solvability") {
  auto S4 = sym(4);
  CHECK(is_solvable(*S4));
  CHECK(derived_length(*S4, whole(*S4)) == 3);
  auto SL = sl23();
  CHECK(is_solvable(*SL));
  CHECK(derived_length(*SL, whole(*SL)) == 3);
  CHECK_FALSE(is_solvable(*alt5()));
  CHECK(derived_series(*alt5()).back().order() == 60);
}

TEST_CASE("p-cores and Fitting subgroups") {
  auto S4 = sym(4);
  CHECK(p_core(*S4, 2).order() == 4);
  CHECK(p_core(*S4, 3).order() == 1);
  CHECK(fitting(*S4).order() == 4);
  auto fs = fitting_series(*S4);
  CHECK_FALSE(fs.stalled);
  REQUIRE(fs.chain.size() == 4);
  CHECK(fs.chain[2].order() == 12);
  CHECK(fs.chain[3].order() == 24);

  auto SL = sl23();
  auto F = fitting(*SL);
  CHECK(F.order() == 8);
  CHECK(is_nilpotent(*SL, F));
  // maximality: no larger normal nilpotent subgroup
  for (const auto& N : oracle::normal_subgroups(*SL))
    if (is_nilpotent(*SL, N)) CHECK(N.is_subset_of(F));

  auto A5 = alt5();
  auto fa = fitting_series(*A5);
  CHECK(fa.stalled);
  CHECK(fa.chain.back().order() == 1);
}

TEST_CASE("p-core agrees with the intersection of Sylow subgroups") {
  for (auto G : {sym(4), sl23(), gl22(), z7z3(), sym(3), cyclic(12), from_permutations(8, {{1, 2, 3, 0, 5, 6, 7, 4}, {4, 5, 6, 7, 0, 1, 2, 3}, {1, 0, 2, 3, 5, 4, 6, 7}})}) {
    REQUIRE(G->order() <= 200);
    for (unsigned p : prime_divisors(G->order())) CHECK(p_core(*G, p) == oracle::sylow_intersection(*G, p));
  }
}

TEST_CASE("conjugacy classes") {
  auto S3 = sym(3);
  const auto& cd = conjugacy_classes(*S3);
  REQUIRE(cd.classes.size() == 3);
  CHECK(cd.classes[0].size() == 1);
  CHECK(cd.classes[1].size() == 3);
  CHECK(cd.classes[2].size() == 2);
  CHECK(conjugacy_classes(*sl23()).classes.size() == 7);
  CHECK(conjugacy_classes(*cyclic(9)).classes.size() == 9);
  // brute-force class of each element
  auto SL = sl23();
  const auto& c2 = conjugacy_classes(*SL);
  for (Index x = 0; x < SL->order(); ++x) {
    std::set<Index> orbit;
    for (Index g = 0; g < SL->order(); ++g) orbit.insert(SL->conj(x, g));
    CHECK(orbit.size() == c2.classes[c2.class_of[x]].size());
  }
}

TEST_CASE("normal subgroups") {
  CHECK(orders(normal_subgroups(*sym(4))) == std::vector<std::size_t>{1, 4, 12, 24});
  CHECK(orders(normal_subgroups(*sl23())) == std::vector<std::size_t>{1, 2, 8, 24});
  CHECK(orders(normal_subgroups(*cyclic(7))) == std::vector<std::size_t>{1, 7});
  CHECK_THROWS_AS(normal_subgroups(*sym(4), 3), ResourceError);
}

TEST_CASE("normal subgroups agree with brute force over all subgroups") {
  for (auto G : {sym(4), sl23(), gl22(), z7z3(), sym(3), cyclic(12), alt5(),
                 from_permutations(8, {{1, 2, 3, 0, 5, 6, 7, 4}, {4, 5, 6, 7, 0, 1, 2, 3}, {1, 0, 2, 3, 5, 4, 6, 7}})}) {
    auto fast = normal_subgroups(*G);
    auto slow = oracle::normal_subgroups(*G);
    CHECK(fast == slow);
    for (const auto& N : fast) {
      CHECK(G->order() % N.order() == 0);
      CHECK(is_normal(*G, N));
    }
  }
}

TEST_CASE("census") {
  auto SL = sl23();
  auto Q8 = fitting(*SL);
  auto c = census(*SL, difference(whole(*SL), Q8));
  CHECK(c.nep[3] == 8);
  CHECK(c.nsp[3] == 4);
  auto t = census(*SL, trivial(*SL));
  CHECK(t.nep_of({2, 3, 5}) == 0);
  CHECK(t.has_identity);
  for (auto G : {sym(4), sl23(), alt5(), z7z3()}) {
    auto cc = census(*G, whole(*G));
    std::uint64_t total = cc.non_prime + 1;
    for (auto [p, k] : cc.nep) {
      total += k;
      CHECK(k == (p - 1) * cc.nsp[p]);
    }
    CHECK(total == G->order());
  }
}

TEST_CASE("Frattini quotient: C_{F2}(F) inside F") {
  // Z_2^2 : S_3 = S_4 and Z_3 : Z_4 have trivial and nontrivial Frattini
  for (auto G : {sym(4), sl23(), from_permutations(7, {{1, 2, 0, 3, 4, 5, 6}, {0, 2, 1, 4, 5, 6, 3}})}) {
    auto Phi = oracle::frattini(*G);
    REQUIRE(is_normal(*G, Phi));
    auto Q = quotient(G, Phi);
    const auto& H = *Q.group;
    auto F = fitting(H);
    auto fs = fitting_series(H);
    auto F2 = fs.at(2);
    CHECK(centralizer(H, F, F2).is_subset_of(F));
  }
}

TEST_CASE("quotients") {
  auto S4 = sym(4);
  auto V4 = p_core(*S4, 2);
  auto Q = quotient(S4, V4);
  CHECK(Q.group->order() == 6);
  CHECK(!is_abelian(*Q.group, whole(*Q.group)));
  CHECK(preimage(*S4, Q, trivial(*Q.group)) == V4);
  CHECK(is_cyclic_quotient(*S4, fitting_series(*S4).at(2), V4));
  CHECK_FALSE(is_cyclic_quotient(*S4, whole(*S4), V4));
}

TEST_CASE("group json round trip") {
  auto G = sl23();
  auto j = group_to_json(*G);
  CHECK(group_from_json(j)->order() == 24);
  auto P = z7z3();
  CHECK(group_from_json(group_to_json(*P))->order() == 21);
  CHECK_THROWS_AS(group_from_json(nlohmann::json{{"kind", "lie"}}), UsageError);
}
