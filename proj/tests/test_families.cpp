#include <doctest.h>

#include <random>
#include <set>
#include <tuple>

#include "slg/errors.hpp"
#include "slg/families.hpp"

using namespace slg;
using namespace slg::families;
using gf::FiniteField;
using gf::Matrix;

TEST_CASE("semilinear groups") {
  CHECK(gamma(2, 4).close()->order() == 60);
  CHECK(gamma0(2, 4).close()->order() == 15);
  CHECK(gamma(3, 2).close()->order() == 16);
  CHECK(gamma(2, 4).dim() == 4);
  auto g42 = gamma(4, 2, false);
  CHECK(g42.field()->q() == 4);
  CHECK(g42.dim() == 2);
  CHECK(g42.close()->order() == 30);
  CHECK(gamma(8, 1).close()->order() == 7);
  auto z5z4 = semilinear(2, 4, 3, 1);
  CHECK(z5z4.close()->order() == 20);
}

TEST_CASE("classical groups") {
  CHECK(general_linear(2, 2).close()->order() == 6);
  CHECK(special_linear(2, 3).close()->order() == 24);
  CHECK(special_linear(3, 2).close()->order() == 168);
  CHECK(general_linear(2, 4).close()->order() == 180);
  CHECK(symplectic(2, 2).close()->order() == 6);
  CHECK(symplectic(4, 2).close()->order() == 720);
  auto sp43 = symplectic(4, 3);
  CHECK(sp43.close()->order() == 51840);
  auto J = SymplecticSpace::standard(4, FiniteField::get(3, 1));
  CHECK(J.valid());
  for (const auto& g : sp43.matrices()) CHECK(is_symplectic(g, J));
  CHECK_FALSE(is_symplectic(Matrix::diagonal(FiniteField::get(3, 1), {2, 1, 1, 1}), J));
}

TEST_CASE("extraspecial groups and their normalizers") {
  CHECK(extraspecial_rep(3, 1, 4).close()->order() == 27);
  CHECK(extraspecial_rep(5, 1, 11).close()->order() == 125);
  auto e9 = extraspecial_rep(3, 2, 4);
  CHECK(e9.dim() == 9);
  CHECK(e9.close()->order() == 243);
  CHECK_THROWS_AS(extraspecial_rep(3, 1, 5), DomainError);
  CHECK(extraspecial2("Q8").close()->order() == 8);
  CHECK(extraspecial2("D8").close()->order() == 8);
  CHECK(extraspecial2("D8oQ8").close()->order() == 32);
  CHECK(extraspecial_normalizer(3, 4, "full_sp").close()->order() == 648);
  CHECK(extraspecial_normalizer(5, 11, "borel").close()->order() == 5000);
}

TEST_CASE("D8oQ8 normalizer piece") {
  auto c = d8q8_f10();
  CHECK(c.params["normalizer_order"] == 1920);
  auto G = c.close();
  CHECK(G->order() == 320);
  auto B = gf::matrix_from_json(c.params["form"]);
  SymplecticSpace S{B};
  for (const auto& g : c.matrices()) CHECK(is_symplectic(g, S));
}

TEST_CASE("combinators") {
  CHECK(wreath_embed(general_linear(2, 2), 2).close()->order() == 72);
  auto mixed = direct_sum(special_linear(2, 3), gamma(2, 4));
  CHECK(mixed.blocks.size() == 2);
  CHECK(mixed.close()->order() == 1440);
  auto same = direct_sum(special_linear(2, 3), special_linear(2, 3));
  CHECK(same.single_block());
  CHECK(same.dim() == 4);
  CHECK(same.close()->order() == 576);
  auto t = tensor_embed(extraspecial2("Q8"), extraspecial2("Q8"));
  CHECK(t.close()->order() == 32);
}

TEST_CASE("permutation constructions") {
  CHECK(symmetric(5).close()->order() == 120);
  CHECK(alternating(5).close()->order() == 60);
  CHECK(alternating(6).close()->order() == 360);
  CHECK(semidirect_cyclic(11, 5).close()->order() == 55);
  CHECK(semidirect_cyclic(31, 5).close()->order() == 155);
  CHECK(semidirect_cyclic(11, 10).close()->order() == 110);
  CHECK_THROWS_AS(semidirect_cyclic(11, 3), DomainError);
  CHECK(affine(gamma0(2, 4)).close()->order() == 240);
  CHECK(affine(gamma(2, 4)).close()->order() == 960);
  CHECK(perm_product(semidirect_cyclic(11, 5), symmetric(3)).close()->order() == 330);
}

TEST_CASE("recipes round trip through json") {
  for (const auto& r : {nlohmann::json{{"construct", "gamma"}, {"q", 2}, {"n", 4}},
                        nlohmann::json{{"construct", "wreath"}, {"of", {{"construct", "gl"}, {"n", 2}, {"q", 2}}}, {"m", 2}},
                        nlohmann::json{{"construct", "direct_sum"},
                                       {"a", {{"construct", "sl"}, {"n", 2}, {"q", 3}}},
                                       {"b", {{"construct", "gamma"}, {"q", 2}, {"n", 4}}}},
                        nlohmann::json{{"construct", "semidirect"}, {"n", 11}, {"m", 5}}}) {
    auto c = from_recipe(r);
    auto order = c.close()->order();
    auto back = from_recipe(c.to_json());
    CHECK(back.close()->order() == order);
    CHECK(grp::group_from_json(c.to_json())->order() == order);
  }
  CHECK_THROWS_AS(from_recipe(nlohmann::json{{"construct", "nope"}}), UsageError);
}

TEST_CASE("invariant forms and symplectic bases") {
  for (auto c : {extraspecial2("D8oQ8"), semilinear(2, 4, 3, 1), special_linear(2, 3), extraspecial_rep(5, 1, 11)}) {
    auto gens = c.matrices();
    auto S = invariant_symplectic_form(gens);
    if (c.name == "extraspecial_rep") {
      // odd dimension: no non-degenerate alternating form
      CHECK_FALSE(S.has_value());
      continue;
    }
    REQUIRE(S.has_value());
    CHECK(S->valid());
    for (const auto& g : gens) CHECK(is_symplectic(g, *S));
    auto P = symplectic_basis_change(*S);
    CHECK(P.transpose() * S->gram * P == SymplecticSpace::standard(static_cast<unsigned>(S->dim()), c.field()).gram);
  }
  // Q8 on GF(3)^2 preserves exactly one form up to scalars
  CHECK(invariant_alternating_forms(extraspecial2("Q8").matrices()).size() == 1);
}

TEST_CASE("isotropy agrees with brute force") {
  auto F = FiniteField::get(3, 1);
  auto S = SymplecticSpace::standard(4, F);
  std::mt19937 rng(7);
  std::uniform_int_distribution<unsigned> d(0, 2);
  int seen[3] = {0, 0, 0};
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t k = 1 + trial % 3;
    gf::Rows rows;
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<gf::Elem> v(4);
      for (auto& x : v) x = d(rng);
      rows.push_back(v);
    }
    if (gf::rank(*F, rows, 4) != k) continue;
    std::vector<gf::Vector> basis;
    for (const auto& r : rows) basis.emplace_back(F, r);
    // enumerate U and its radical
    std::vector<std::vector<gf::Elem>> U;
    for (std::uint64_t code = 0; code < gf::checked_power(3, static_cast<unsigned>(k), 1000); ++code) {
      std::vector<gf::Elem> u(4, 0);
      std::uint64_t c = code;
      for (std::size_t i = 0; i < k; ++i, c /= 3)
        for (std::size_t t = 0; t < 4; ++t) u[t] = F->add(u[t], F->mul(static_cast<gf::Elem>(c % 3), rows[i][t]));
      U.push_back(u);
    }
    auto form = [&](const std::vector<gf::Elem>& x, const std::vector<gf::Elem>& y) {
      gf::Elem s = 0;
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) s = F->add(s, F->mul(x[i], F->mul(S.gram(i, j), y[j])));
      return s;
    };
    std::size_t radical = 0;
    for (const auto& x : U) {
      bool in = true;
      for (const auto& y : U) in &= form(x, y) == 0;
      radical += in;
    }
    Isotropy expect = radical == U.size() ? Isotropy::totally_isotropic
                      : radical == 1      ? Isotropy::nonsingular
                                          : Isotropy::mixed;
    auto got = isotropy_type(basis, S);
    CHECK(got == expect);
    ++seen[static_cast<int>(got)];
  }
  CHECK(seen[0] > 0);
  CHECK(seen[1] > 0);
  CHECK(seen[2] > 0);
}

TEST_CASE("extraspecial structure and the commutator form") {
  for (auto [p, m, r] : {std::tuple{3u, 1u, 4u}, std::tuple{5u, 1u, 11u}, std::tuple{3u, 2u, 4u}, std::tuple{3u, 1u, 7u}}) {
    auto G = extraspecial_rep(p, m, r).close();
    const auto E = grp::whole(*G);
    const auto Z = grp::center(*G, E);
    CHECK(Z.order() == p);
    CHECK(grp::commutator(*G, E, E) == Z);
    std::uint64_t rank_power = 1;
    for (unsigned i = 0; i < 2 * m; ++i) rank_power *= p;
    CHECK(G->order() / Z.order() == rank_power);
    for (grp::Index x = 0; x < G->order(); ++x) {
      CHECK(G->pow(x, p) == 0);  // exponent p
      // the form [x, -] vanishes identically only on Z
      bool radical = true;
      for (grp::Index y = 0; y < G->order() && radical; ++y) radical = G->commutator(x, y) == 0;
      CHECK(radical == Z.contains(x));
    }
    // center acts by scalars
    for (auto z : Z.elements()) {
      auto mz = grp::matrices_of(*G, z)[0];
      CHECK(mz == Matrix::identity(mz.field(), mz.n()).scaled(mz(0, 0)));
    }
  }
}
