#include <doctest.h>

#include <nlohmann/json.hpp>

#include "slg/errors.hpp"
#include "slg/families.hpp"
#include "slg/qp.hpp"

using namespace slg;
using namespace slg::qp;
namespace fam = slg::families;

namespace {

action::Action module(const fam::Construction& c) { return action::Action::on_module(c.close()); }

// Brute-force homogeneity: collect all irreducible N-submodules and compare
// them pairwise by searching for an intertwining isomorphism.
bool homogeneous_oracle(const action::Action& A, const grp::Subgroup& N) {
  const auto& G = A.group();
  const auto F = A.blocks()[0].field;
  const std::size_t n = A.blocks()[0].dim;
  const auto S = subgroup_matrices(G, N);
  std::vector<gf::Rows> subs;
  for (std::uint64_t v = 1; v < A.size(); ++v) {
    auto X = spin(S, gf::Vector::from_code(F, n, v).coords());
    auto b = X.basis();
    gf::row_reduce(*F, b, n);
    if (std::find(subs.begin(), subs.end(), b) == subs.end()) subs.push_back(b);
  }
  // irreducible = contains no other cyclic submodule of smaller dimension
  std::vector<gf::Rows> irr;
  for (const auto& X : subs) {
    bool minimal = true;
    for (const auto& Y : subs) {
      if (Y.size() >= X.size()) continue;
      Span sx(F, n);
      for (const auto& r : X) sx.add(r);
      bool inside = true;
      for (const auto& r : Y) inside &= sx.contains(r);
      if (inside) minimal = false;
    }
    if (minimal) irr.push_back(X);
  }
  auto isomorphic = [&](const gf::Rows& X, const gf::Rows& Y) {
    if (X.size() != Y.size()) return false;
    const std::size_t d = X.size();
    auto RX = restrict_to(S, X), RY = restrict_to(S, Y);
    const std::uint64_t total = gf::checked_power(F->q(), static_cast<unsigned>(d * d), 1u << 20);
    for (std::uint64_t code = 0; code < total; ++code) {
      gf::Matrix T(F, d);
      std::uint64_t c = code;
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j, c /= F->q()) T.set(i, j, static_cast<gf::Elem>(c % F->q()));
      if (!T.is_invertible()) continue;
      bool ok = true;
      for (std::size_t g = 0; g < RX.size() && ok; ++g) ok = T * RX[g] == RY[g] * T;
      if (ok) return true;
    }
    return false;
  };
  for (std::size_t i = 1; i < irr.size(); ++i)
    if (!isomorphic(irr[0], irr[i])) return false;
  return true;
}

}  // namespace

TEST_CASE("spin, restriction and Hom dimensions") {
  auto F = gf::FiniteField::get(2, 1);
  auto g = fam::gamma0(2, 4).matrices()[0];
  CHECK(spin({g}, {1, 0, 0, 0}).dim() == 4);
  auto I = gf::Matrix::identity(F, 4);
  CHECK(spin({I}, {1, 0, 0, 0}).dim() == 1);
  CHECK(hom_dimension({g}, {g}) == 4);  // End is GF(16)
  CHECK(hom_dimension({I}, {I}) == 16);
}

TEST_CASE("irreducibility and quasi-primitivity") {
  auto sl = module(fam::special_linear(2, 3));
  CHECK(is_irreducible(sl));
  CHECK(is_quasiprimitive(sl));
  auto wr = module(fam::wreath_embed(fam::general_linear(2, 2), 2));
  CHECK(is_irreducible(wr));
  CHECK_FALSE(is_quasiprimitive(wr));
  CHECK(is_quasiprimitive(module(fam::gamma(2, 4))));
  CHECK(is_quasiprimitive(module(fam::gamma0(2, 4))));
  auto red = module(fam::direct_sum(fam::special_linear(2, 3), fam::special_linear(2, 3)));
  CHECK_FALSE(is_irreducible(red));
  CHECK_THROWS_AS(is_quasiprimitive(red), UsageError);
  CHECK_THROWS_AS(is_quasiprimitive(module(fam::direct_sum(fam::special_linear(2, 3), fam::gamma(2, 4)))), UsageError);
}

TEST_CASE("homogeneity agrees with brute-force constituent comparison") {
  for (const auto& c : {fam::special_linear(2, 3), fam::wreath_embed(fam::general_linear(2, 2), 2), fam::gamma(2, 4),
                        fam::gamma(3, 2), fam::general_linear(2, 3), fam::extraspecial2("D8oQ8"),
                        fam::direct_sum(fam::general_linear(2, 2), fam::general_linear(1, 2))}) {
    auto A = module(c);
    auto O = action::orbits(A);
    for (const auto& N : grp::normal_subgroups(A.group())) CHECK(is_homogeneous(A, O, N) == homogeneous_oracle(A, N));
  }
}

TEST_CASE("decomposition of SL(2,3) on GF(3)^2") {
  auto A = module(fam::special_linear(2, 3));
  auto D = decompose(A);
  CHECK(D.e == 2);
  CHECK(D.U.order() == 2);
  CHECK(D.F.order() == 8);
  CHECK(D.A.order() / D.F.order() == 3);
  CHECK(D.W_size == 3);
  CHECK(D.b == 1);
  CHECK(D.dim_W == 1);
  CHECK(D.all_pass());
  CHECK(order_lemma_bound(D) == 24);
  CHECK(order_lemma_check(D, 24));
}

TEST_CASE("decomposition of Gamma(2^4) on GF(16)") {
  auto A = module(fam::gamma(2, 4));
  auto D = decompose(A);
  CHECK(D.e == 1);
  CHECK(D.U.order() == 15);
  CHECK(D.F.order() == 15);
  CHECK(D.A.order() == 15);
  CHECK(D.W_size == 16);
  CHECK(D.b == 1);
  CHECK(D.dim_W == 4);
  CHECK(order_lemma_bound(D) == 60);
  auto law = clause8_law(A, D);
  CHECK(law.checked > 0);
  CHECK(law.failures == 0);
}

TEST_CASE("decompositions of extraspecial normalizers") {
  auto A3 = module(fam::extraspecial_normalizer(3, 4, "full_sp"));
  auto D3 = decompose(A3);
  CHECK(D3.e == 3);
  CHECK(D3.dim_V % D3.e == 0);
  CHECK(order_lemma_check(D3, A3.group().order()));

  auto A5 = module(fam::extraspecial_normalizer(5, 11, "quaternion"));
  CHECK(is_quasiprimitive(A5, 200));
  auto D5 = decompose(A5);
  CHECK(D5.e == 5);
  CHECK(D5.W_size == 11);
  CHECK(D5.U.order() == 10);
  CHECK(order_lemma_bound(D5) == 2000);
  // the Borel piece is monomial: its diagonal 5-subgroup is abelian, normal, not cyclic
  CHECK_FALSE(is_quasiprimitive(module(fam::extraspecial_normalizer(5, 11, "borel")), 200));

  auto Af = module(fam::d8q8_f10());
  auto Df = decompose(Af);
  CHECK(Df.e == 4);
  CHECK(Df.E.order() == 32);
  CHECK(order_lemma_check(Df, 320));
  CHECK(to_json(Df, 320)["clauses"].size() == 9);
}

TEST_CASE("trivial group on GF(2)") {
  auto A = module(fam::general_linear(1, 2));
  auto D = decompose(A);
  CHECK(D.e == 1);
  CHECK(order_lemma_check(D, 1));
}
