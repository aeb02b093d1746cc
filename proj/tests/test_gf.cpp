#include <doctest.h>

#include <random>

#include <nlohmann/json.hpp>

#include "slg/errors.hpp"
#include "slg/gf.hpp"

using namespace slg;
using namespace slg::gf;

namespace {

// Matrix of the GF(p)-linear map a -> F.pow(a, e) on GF(p^k) in the digit basis.
Matrix power_map_matrix(const FieldPtr& big, std::int64_t e) {
  const auto small = FiniteField::get(big->p(), 1);
  const unsigned k = big->k();
  Matrix m(small, k);
  Elem basis = 1;
  for (unsigned j = 0; j < k; ++j) {
    Elem img = big->pow(basis, e);
    for (unsigned i = 0; i < k; ++i) {
      m.set(i, j, img % big->p());
      img /= big->p();
    }
    basis *= big->p();
  }
  return m;
}

std::uint64_t brute_fixed(const Matrix& m) {
  const std::uint64_t total = checked_power(m.F().q(), static_cast<unsigned>(m.n()), 1u << 24);
  std::uint64_t count = 0;
  for (std::uint64_t c = 0; c < total; ++c) {
    auto v = Vector::from_code(m.field(), m.n(), c);
    if (m * v == v) ++count;
  }
  return count;
}

Matrix random_matrix(const FieldPtr& F, std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<Elem> d(0, F->q() - 1);
  std::vector<Elem> e(n * n);
  for (auto& x : e) x = d(rng);
  return Matrix(F, n, std::move(e));
}

}  // namespace

TEST_CASE("small field examples") {
  auto F5 = FiniteField::get(5, 1);
  CHECK(F5->mul(2, 3) == 1);
  auto F4 = FiniteField::get(2, 2);
  CHECK(F4->generator() == 2);
  CHECK(F4->mul(2, 2) == 3);
  auto F9 = FiniteField::get(3, 2);
  for (Elem x = 1; x < 9; ++x) CHECK(F9->mul(F9->inv(x), x) == 1);
  CHECK_THROWS_AS(F9->inv(0), DomainError);
  CHECK_THROWS_AS(FiniteField::get(6, 1), DomainError);
  CHECK_THROWS_AS(FiniteField::get(2, 21), DomainError);
}

TEST_CASE("field axioms exhaustive for q <= 64") {
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 11u, 13u, 16u, 25u, 27u, 32u, 49u, 64u}) {
    auto F = FiniteField::of_size(q);
    CAPTURE(q);
    bool ok = true;
    for (Elem a = 0; a < q && ok; ++a) {
      ok &= F->add(a, F->neg(a)) == 0;
      ok &= F->add(a, 0) == a && F->mul(a, 1) == a;
      if (a != 0) ok &= F->mul(a, F->inv(a)) == 1;
      for (Elem b = 0; b < q && ok; ++b) {
        ok &= F->add(a, b) == F->add(b, a);
        ok &= F->mul(a, b) == F->mul(b, a);
        ok &= F->add(a, b) == F->add_digitwise(a, b);
        for (Elem c = 0; c < q && ok; ++c) {
          ok &= F->add(F->add(a, b), c) == F->add(a, F->add(b, c));
          ok &= F->mul(F->mul(a, b), c) == F->mul(a, F->mul(b, c));
          ok &= F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c));
        }
      }
    }
    CHECK(ok);
  }
}

TEST_CASE("field axioms on random triples for larger q") {
  std::mt19937_64 rng(7);
  for (std::uint32_t q : {81u, 121u, 125u, 243u, 256u, 625u, 1024u, 2187u, 4096u, 65536u, 59049u, 1u << 20}) {
    auto F = FiniteField::of_size(q);
    std::uniform_int_distribution<Elem> d(0, q - 1);
    bool ok = true;
    for (int t = 0; t < 10000; ++t) {
      Elem a = d(rng), b = d(rng), c = d(rng);
      ok &= F->add(F->add(a, b), c) == F->add(a, F->add(b, c));
      ok &= F->mul(F->mul(a, b), c) == F->mul(a, F->mul(b, c));
      ok &= F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c));
      ok &= F->add(a, b) == F->add_digitwise(a, b);
    }
    CAPTURE(q);
    CHECK(ok);
  }
}

TEST_CASE("frobenius is an automorphism of order k") {
  for (std::uint32_t q : {4u, 8u, 9u, 16u, 25u, 27u, 64u, 81u, 243u, 256u, 729u, 1024u, 2048u, 3125u}) {
    auto F = FiniteField::of_size(q);
    CAPTURE(q);
    bool ok = true;
    for (Elem a = 0; a < q; ++a) {
      Elem x = a;
      for (unsigned i = 0; i < F->k(); ++i) x = F->frobenius(x);
      ok &= x == a;
    }
    // order exactly k: the generator moves under every proper power
    Elem x = F->generator();
    for (unsigned i = 1; i < F->k(); ++i) {
      x = F->frobenius(x);
      ok &= x != F->generator();
    }
    std::mt19937_64 rng(q);
    std::uniform_int_distribution<Elem> d(0, q - 1);
    for (int t = 0; t < 2000; ++t) {
      Elem a = d(rng), b = d(rng);
      ok &= F->frobenius(F->add(a, b)) == F->add(F->frobenius(a), F->frobenius(b));
      ok &= F->frobenius(F->mul(a, b)) == F->mul(F->frobenius(a), F->frobenius(b));
    }
    CHECK(ok);
  }
}

TEST_CASE("bundled moduli are irreducible and primitive") {
  for (unsigned p : {2u, 3u, 5u, 7u, 11u, 13u}) {
    for (unsigned k = 1; k <= 20; ++k) {
      std::uint64_t q = 1;
      for (unsigned i = 0; i < k; ++i) q *= p;
      if (q > kMaxFieldSize) break;
      auto F = FiniteField::get(p, k);
      CHECK(is_irreducible(p, F->modulus()));
      CHECK(F->order(F->generator()) == F->q() - 1);
      if (k > 1) CHECK(F->generator() == p);
    }
  }
  const std::vector<Elem> reducible = {1, 0};  // x^2 + 1 = (x+1)^2 over GF(2)
  CHECK_FALSE(is_irreducible(2, reducible));
}

TEST_CASE("identity fixes every vector of GF(2)^3") {
  auto F = FiniteField::get(2, 1);
  auto I = Matrix::identity(F, 3);
  for (std::uint64_t c = 0; c < 8; ++c) {
    auto v = Vector::from_code(F, 3, c);
    CHECK(I * v == v);
    CHECK(v.code() == c);
  }
}

TEST_CASE("random invertible matrices over GF(3)") {
  auto F = FiniteField::get(3, 1);
  std::mt19937_64 rng(2024);
  int done = 0;
  while (done < 100) {
    auto m = random_matrix(F, 4, rng);
    if (m.det() == 0) {
      CHECK_THROWS_AS(m.inverse(), DomainError);
      continue;
    }
    CHECK((m * m.inverse()).is_identity());
    CHECK((m.inverse() * m).is_identity());
    ++done;
  }
}

TEST_CASE("determinant by cofactors agrees with elimination") {
  std::mt19937_64 rng(11);
  for (auto F : {FiniteField::get(2, 1), FiniteField::get(3, 1), FiniteField::get(2, 2), FiniteField::get(3, 2),
                 FiniteField::get(7, 1)}) {
    for (std::size_t n = 1; n <= 4; ++n)
      for (int t = 0; t < 50; ++t) {
        auto m = random_matrix(F, n, rng);
        CHECK(m.det() == m.det_cofactor());
        CHECK((m.det() != 0) == m.is_invertible());
      }
  }
}

TEST_CASE("fixed space sizes") {
  auto F2 = FiniteField::get(2, 1);
  CHECK(fixed_space(Matrix::identity(F2, 4)).size == 16);

  auto F16 = FiniteField::get(2, 4);
  auto frob2 = power_map_matrix(F16, 4);
  CHECK(fixed_space(frob2).size == 4);
  CHECK(brute_fixed(frob2) == 4);

  auto F3 = FiniteField::get(3, 1);
  auto i4 = Matrix::from_rows(F3, {{0, 2}, {1, 0}});
  CHECK(i4.pow(4).is_identity());
  CHECK_FALSE(i4.pow(2).is_identity());
  CHECK(fixed_space(i4).size == 1);
}

TEST_CASE("fixed space agrees with brute force") {
  std::mt19937_64 rng(5);
  for (auto F : {FiniteField::get(2, 1), FiniteField::get(3, 1), FiniteField::get(2, 2), FiniteField::get(5, 1)}) {
    for (std::size_t n = 1; n <= 4; ++n) {
      if (checked_power(F->q(), static_cast<unsigned>(n), ~0ull) > 10000) continue;
      for (int t = 0; t < 20; ++t) {
        auto m = random_matrix(F, n, rng);
        if (t % 2 == 0) {
          // identity with one random row: large fixed spaces
          auto id = Matrix::identity(F, n);
          for (std::size_t j = 0; j < n; ++j) id.set(0, j, m(0, j));
          m = id;
        }
        auto fs = fixed_space(m);
        CHECK(fs.size == brute_fixed(m));
        for (const auto& v : fs.basis) CHECK(m * v == v);
      }
    }
  }
}

TEST_CASE("matrix json round trip") {
  auto F = FiniteField::get(3, 2);
  auto m = Matrix::from_rows(F, {{1, 2}, {8, 0}});
  CHECK(matrix_from_json(to_json(m)) == m);
}
