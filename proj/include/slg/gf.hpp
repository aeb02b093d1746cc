#pragma once

// Exact arithmetic over small finite fields GF(p^k), plus dense vectors and
// square matrices over them.
//
// Elements are encoded as integers in [0, q): the base-p digits are the
// coefficients of a polynomial in x reduced modulo the field's modulus,
// constant term first.  The modulus for each (p, k) comes from a bundled
// table of primitive polynomials, so x (encoded as p) generates the
// multiplicative group and the encoding is identical across runs.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace slg::gf {

using Elem = std::uint32_t;

inline constexpr std::uint32_t kMaxFieldSize = 1u << 20;

class FiniteField;
using FieldPtr = std::shared_ptr<const FiniteField>;

class FiniteField {
 public:
  /// Shared, cached instance for GF(p^k).  Throws DomainError if p is not
  /// prime, k == 0, or p^k exceeds kMaxFieldSize.
  static FieldPtr get(unsigned p, unsigned k);
  /// Same, given the field size q.
  static FieldPtr of_size(std::uint32_t q);

  unsigned p() const noexcept { return p_; }
  unsigned k() const noexcept { return k_; }
  std::uint32_t q() const noexcept { return q_; }
  bool is_prime_field() const noexcept { return k_ == 1; }

  /// Lower coefficients c0..c_{k-1} of the monic modulus.  For k == 1 the
  /// modulus is x - g with g the least primitive root, stored as {p - g}.
  const std::vector<Elem>& modulus() const noexcept { return modulus_; }

  Elem zero() const noexcept { return 0; }
  Elem one() const noexcept { return 1; }
  /// The primitive element the log tables are built on.
  Elem generator() const noexcept { return exp_[1]; }

  bool contains(Elem a) const noexcept { return a < q_; }

  Elem add(Elem a, Elem b) const noexcept {
    if (k_ == 1) {
      Elem s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    if (p_ == 2) return a ^ b;
    return zech_add(a, b);
  }
  Elem neg(Elem a) const noexcept {
    if (a == 0 || p_ == 2) return a;
    if (k_ == 1) return p_ - a;
    return exp_[log_[a] + half_];
  }
  Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const noexcept {
    if (a == 0 || b == 0) return 0;
    if (k_ == 1) return static_cast<Elem>((std::uint64_t{a} * b) % p_);
    return exp_[log_[a] + log_[b]];
  }
  /// Throws DomainError on zero.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  /// a^e for any integer e; negative exponents need a != 0.  0^0 == 1.
  Elem pow(Elem a, std::int64_t e) const;

  /// Discrete log base generator(); requires a != 0.
  std::uint32_t log(Elem a) const;
  Elem exp(std::uint64_t n) const noexcept { return exp_[n % (q_ - 1)]; }

  /// x -> x^p.
  Elem frobenius(Elem a) const noexcept { return pow(a, p_); }
  /// Image of the integer n in the prime subfield.
  Elem from_int(std::int64_t n) const noexcept;
  /// Multiplicative order of a nonzero element.
  std::uint32_t order(Elem a) const;

  /// Digit-wise addition; independent of the log tables (used to build them
  /// and as a cross-check in tests).
  Elem add_digitwise(Elem a, Elem b) const noexcept;

  bool operator==(const FiniteField& o) const noexcept { return p_ == o.p_ && k_ == o.k_; }

  std::string name() const;

  FiniteField(unsigned p, unsigned k);  // use get()

 private:
  Elem zech_add(Elem a, Elem b) const noexcept;

  unsigned p_;
  unsigned k_;
  std::uint32_t q_;
  std::uint32_t half_ = 0;  // (q - 1) / 2 for odd q
  std::vector<Elem> modulus_;
  std::vector<Elem> exp_;            // 2(q-1) entries
  std::vector<std::uint32_t> log_;   // q entries, log_[0] unused
  std::vector<std::int64_t> zech_;   // 1 + g^n = g^zech_[n], -1 when the sum is 0
};

/// True iff the monic polynomial x^k + c_{k-1}x^{k-1} + ... + c0 is
/// irreducible over GF(p), by trial division against every monic polynomial
/// of degree 1..k/2.
bool is_irreducible(unsigned p, std::span<const Elem> lower_coeffs);

bool is_prime(std::uint64_t n);

/// q^n with overflow and cap checking; throws ResourceError when above cap.
std::uint64_t checked_power(std::uint64_t q, unsigned n, std::uint64_t cap);

class Vector {
 public:
  Vector(FieldPtr field, std::vector<Elem> coords);
  static Vector zero(FieldPtr field, std::size_t n);
  /// Base-q digits of `code`, coordinate 0 least significant.
  static Vector from_code(FieldPtr field, std::size_t n, std::uint64_t code);

  std::uint64_t code() const;
  std::size_t dim() const noexcept { return coords_.size(); }
  const FieldPtr& field() const noexcept { return field_; }
  const std::vector<Elem>& coords() const noexcept { return coords_; }
  Elem operator[](std::size_t i) const { return coords_[i]; }
  bool is_zero() const noexcept;

  bool operator==(const Vector& o) const noexcept;

 private:
  FieldPtr field_;
  std::vector<Elem> coords_;
};

class Matrix {
 public:
  Matrix(FieldPtr field, std::size_t n);  // zero matrix
  Matrix(FieldPtr field, std::size_t n, std::vector<Elem> entries);  // row major
  static Matrix identity(FieldPtr field, std::size_t n);
  static Matrix from_rows(FieldPtr field, const std::vector<std::vector<Elem>>& rows);
  static Matrix diagonal(FieldPtr field, const std::vector<Elem>& diag);
  /// Permutation matrix sending basis vector j to basis vector images[j].
  static Matrix permutation(FieldPtr field, const std::vector<std::size_t>& images);

  std::size_t n() const noexcept { return n_; }
  const FieldPtr& field() const noexcept { return field_; }
  const FiniteField& F() const noexcept { return *field_; }
  Elem operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, Elem v);
  std::span<const Elem> entries() const noexcept { return a_; }

  Matrix operator*(const Matrix& o) const;
  Vector operator*(const Vector& v) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(Elem c) const;
  Matrix transpose() const;
  /// Throws DomainError when singular.
  Matrix inverse() const;
  Matrix pow(std::int64_t e) const;
  /// Entry-wise x -> x^(p^i).
  Matrix frobenius_twist(unsigned i = 1) const;

  Elem det() const;           // Gaussian elimination
  Elem det_cofactor() const;  // Laplace expansion; n <= 9
  std::size_t rank() const;
  bool is_identity() const noexcept;
  bool is_invertible() const { return rank() == n_; }

  bool operator==(const Matrix& o) const noexcept;

 private:
  void require_same_field(const Matrix& o) const;

  FieldPtr field_;
  std::size_t n_;
  std::vector<Elem> a_;
};

/// Kronecker product a (x) b.
Matrix kronecker(const Matrix& a, const Matrix& b);
/// Block-diagonal matrix diag(a, b).
Matrix block_diagonal(const Matrix& a, const Matrix& b);

struct FixedSpace {
  std::vector<Vector> basis;
  std::uint64_t size = 0;  // q^dim
};

/// Vectors v with m v = v.
FixedSpace fixed_space(const Matrix& m);

// Dense row-based linear algebra used by the higher layers.
using Rows = std::vector<std::vector<Elem>>;

/// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> row_reduce(const FiniteField& F, Rows& rows, std::size_t cols);
/// Basis of { x : rows * x = 0 }.
Rows nullspace(const FiniteField& F, Rows rows, std::size_t cols);
std::size_t rank(const FiniteField& F, Rows rows, std::size_t cols);

/// Raw square product out = a * b over F with n x n row-major operands.
void mul_raw(const FiniteField& F, std::size_t n, const Elem* a, const Elem* b, Elem* out);
/// Raw matrix-vector product.
void apply_raw(const FiniteField& F, std::size_t n, const Elem* m, const Elem* v, Elem* out);

// JSON: {"field":{"p":..,"k":..},"matrix":[[..],..]}
nlohmann::json to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);
nlohmann::json field_to_json(const FiniteField& F);
FieldPtr field_from_json(const nlohmann::json& j);

}  // namespace slg::gf
