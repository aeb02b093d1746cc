#include <algorithm>

#include <nlohmann/json.hpp>

#include "slg/errors.hpp"
#include "slg/gf.hpp"

namespace slg::gf {

namespace {

void require_same(const FieldPtr& a, const FieldPtr& b) {
  if (!(*a == *b)) throw UsageError("mixed fields: " + a->name() + " and " + b->name());
}

}  // namespace

Vector::Vector(FieldPtr field, std::vector<Elem> coords) : field_(std::move(field)), coords_(std::move(coords)) {
  for (Elem c : coords_)
    if (!field_->contains(c)) throw UsageError("vector entry outside " + field_->name());
}

Vector Vector::zero(FieldPtr field, std::size_t n) { return Vector(std::move(field), std::vector<Elem>(n, 0)); }

Vector Vector::from_code(FieldPtr field, std::size_t n, std::uint64_t code) {
  std::vector<Elem> c(n);
  const std::uint64_t q = field->q();
  for (std::size_t i = 0; i < n; ++i) {
    c[i] = static_cast<Elem>(code % q);
    code /= q;
  }
  if (code != 0) throw UsageError("vector code out of range");
  return Vector(std::move(field), std::move(c));
}

std::uint64_t Vector::code() const {
  std::uint64_t r = 0;
  const std::uint64_t q = field_->q();
  for (std::size_t i = coords_.size(); i-- > 0;) r = r * q + coords_[i];
  return r;
}

bool Vector::is_zero() const noexcept {
  return std::all_of(coords_.begin(), coords_.end(), [](Elem c) { return c == 0; });
}

bool Vector::operator==(const Vector& o) const noexcept { return *field_ == *o.field_ && coords_ == o.coords_; }

Matrix::Matrix(FieldPtr field, std::size_t n) : field_(std::move(field)), n_(n), a_(n * n, 0) {
  if (n == 0) throw UsageError("matrix dimension must be positive");
}

Matrix::Matrix(FieldPtr field, std::size_t n, std::vector<Elem> entries)
    : field_(std::move(field)), n_(n), a_(std::move(entries)) {
  if (n == 0) throw UsageError("matrix dimension must be positive");
  if (a_.size() != n * n) throw UsageError("matrix entry count does not match dimension");
  for (Elem c : a_)
    if (!field_->contains(c)) throw UsageError("matrix entry outside " + field_->name());
}

Matrix Matrix::identity(FieldPtr field, std::size_t n) {
  Matrix m(std::move(field), n);
  for (std::size_t i = 0; i < n; ++i) m.a_[i * n + i] = 1;
  return m;
}

Matrix Matrix::from_rows(FieldPtr field, const std::vector<std::vector<Elem>>& rows) {
  const std::size_t n = rows.size();
  std::vector<Elem> e;
  e.reserve(n * n);
  for (const auto& r : rows) {
    if (r.size() != n) throw UsageError("matrix must be square");
    e.insert(e.end(), r.begin(), r.end());
  }
  return Matrix(std::move(field), n, std::move(e));
}

Matrix Matrix::diagonal(FieldPtr field, const std::vector<Elem>& diag) {
  Matrix m(std::move(field), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m.set(i, i, diag[i]);
  return m;
}

Matrix Matrix::permutation(FieldPtr field, const std::vector<std::size_t>& images) {
  const std::size_t n = images.size();
  Matrix m(std::move(field), n);
  for (std::size_t j = 0; j < n; ++j) {
    if (images[j] >= n) throw UsageError("permutation image out of range");
    m.a_[images[j] * n + j] = 1;
  }
  if (m.rank() != n) throw UsageError("images do not form a permutation");
  return m;
}

void Matrix::set(std::size_t i, std::size_t j, Elem v) {
  if (i >= n_ || j >= n_) throw UsageError("matrix index out of range");
  if (!field_->contains(v)) throw UsageError("entry outside " + field_->name());
  a_[i * n_ + j] = v;
}

void Matrix::require_same_field(const Matrix& o) const {
  require_same(field_, o.field_);
  if (n_ != o.n_) throw UsageError("matrix dimensions differ");
}

void mul_raw(const FiniteField& F, std::size_t n, const Elem* a, const Elem* b, Elem* out) {
  if (F.is_prime_field()) {
    const std::uint64_t p = F.p();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        std::uint64_t s = 0;
        for (std::size_t t = 0; t < n; ++t) s += std::uint64_t{a[i * n + t]} * b[t * n + j];
        out[i * n + j] = static_cast<Elem>(s % p);
      }
    return;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Elem s = 0;
      for (std::size_t t = 0; t < n; ++t) s = F.add(s, F.mul(a[i * n + t], b[t * n + j]));
      out[i * n + j] = s;
    }
}

void apply_raw(const FiniteField& F, std::size_t n, const Elem* m, const Elem* v, Elem* out) {
  for (std::size_t i = 0; i < n; ++i) {
    Elem s = 0;
    for (std::size_t t = 0; t < n; ++t) s = F.add(s, F.mul(m[i * n + t], v[t]));
    out[i] = s;
  }
}

Matrix Matrix::operator*(const Matrix& o) const {
  require_same_field(o);
  Matrix r(field_, n_);
  mul_raw(*field_, n_, a_.data(), o.a_.data(), r.a_.data());
  return r;
}

Vector Matrix::operator*(const Vector& v) const {
  require_same(field_, v.field());
  if (v.dim() != n_) throw UsageError("vector dimension differs from matrix");
  std::vector<Elem> out(n_);
  apply_raw(*field_, n_, a_.data(), v.coords().data(), out.data());
  return Vector(field_, std::move(out));
}

Matrix Matrix::operator+(const Matrix& o) const {
  require_same_field(o);
  Matrix r(field_, n_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = field_->add(a_[i], o.a_[i]);
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  require_same_field(o);
  Matrix r(field_, n_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = field_->sub(a_[i], o.a_[i]);
  return r;
}

Matrix Matrix::scaled(Elem c) const {
  Matrix r(field_, n_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = field_->mul(c, a_[i]);
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(field_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) r.a_[j * n_ + i] = a_[i * n_ + j];
  return r;
}

Matrix Matrix::inverse() const {
  const FiniteField& F = *field_;
  const std::size_t n = n_;
  Rows aug(n, std::vector<Elem>(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = a_[i * n + j];
    aug[i][n + i] = 1;
  }
  auto piv = row_reduce(F, aug, 2 * n);
  if (piv.size() < n || piv[n - 1] != n - 1) throw DomainError("singular matrix has no inverse");
  Matrix r(field_, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r.a_[i * n + j] = aug[i][n + j];
  return r;
}

Matrix Matrix::pow(std::int64_t e) const {
  Matrix base = e < 0 ? inverse() : *this;
  std::uint64_t k = e < 0 ? static_cast<std::uint64_t>(-e) : static_cast<std::uint64_t>(e);
  Matrix r = identity(field_, n_);
  while (k) {
    if (k & 1) r = r * base;
    base = base * base;
    k >>= 1;
  }
  return r;
}

Matrix Matrix::frobenius_twist(unsigned i) const {
  std::int64_t e = 1;
  for (unsigned t = 0; t < i % field_->k(); ++t) e *= field_->p();
  Matrix r(field_, n_);
  for (std::size_t t = 0; t < a_.size(); ++t) r.a_[t] = field_->pow(a_[t], e);
  return r;
}

Elem Matrix::det() const {
  const FiniteField& F = *field_;
  std::vector<Elem> m = a_;
  const std::size_t n = n_;
  Elem d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t r = c;
    while (r < n && m[r * n + c] == 0) ++r;
    if (r == n) return 0;
    if (r != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m[r * n + j], m[c * n + j]);
      d = F.neg(d);
    }
    const Elem pv = m[c * n + c];
    d = F.mul(d, pv);
    const Elem pinv = F.inv(pv);
    for (std::size_t i = c + 1; i < n; ++i) {
      const Elem f = F.mul(m[i * n + c], pinv);
      if (f == 0) continue;
      for (std::size_t j = c; j < n; ++j) m[i * n + j] = F.sub(m[i * n + j], F.mul(f, m[c * n + j]));
    }
  }
  return d;
}

namespace {

Elem cofactor_det(const FiniteField& F, const std::vector<Elem>& m, std::size_t n) {
  if (n == 1) return m[0];
  Elem d = 0;
  std::vector<Elem> minor((n - 1) * (n - 1));
  for (std::size_t c = 0; c < n; ++c) {
    if (m[c] == 0) continue;
    std::size_t t = 0;
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) minor[t++] = m[i * n + j];
    Elem term = F.mul(m[c], cofactor_det(F, minor, n - 1));
    d = (c % 2 == 0) ? F.add(d, term) : F.sub(d, term);
  }
  return d;
}

}  // namespace

Elem Matrix::det_cofactor() const {
  if (n_ > 9) throw UsageError("cofactor determinant limited to n <= 9");
  return cofactor_det(*field_, a_, n_);
}

std::size_t Matrix::rank() const {
  Rows rows(n_);
  for (std::size_t i = 0; i < n_; ++i) rows[i].assign(a_.begin() + i * n_, a_.begin() + (i + 1) * n_);
  return gf::rank(*field_, std::move(rows), n_);
}

bool Matrix::is_identity() const noexcept {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (a_[i * n_ + j] != (i == j ? 1u : 0u)) return false;
  return true;
}

bool Matrix::operator==(const Matrix& o) const noexcept {
  return *field_ == *o.field_ && n_ == o.n_ && a_ == o.a_;
}

Matrix kronecker(const Matrix& a, const Matrix& b) {
  require_same(a.field(), b.field());
  const std::size_t n = a.n(), m = b.n();
  const FiniteField& F = a.F();
  std::vector<Elem> e(n * m * n * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < m; ++l) e[(i * m + k) * (n * m) + (j * m + l)] = F.mul(a(i, j), b(k, l));
  return Matrix(a.field(), n * m, std::move(e));
}

Matrix block_diagonal(const Matrix& a, const Matrix& b) {
  require_same(a.field(), b.field());
  const std::size_t n = a.n(), m = b.n();
  Matrix r(a.field(), n + m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r.set(i, j, a(i, j));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) r.set(n + i, n + j, b(i, j));
  return r;
}

std::vector<std::size_t> row_reduce(const FiniteField& F, Rows& rows, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t i = r;
    while (i < rows.size() && rows[i][c] == 0) ++i;
    if (i == rows.size()) continue;
    std::swap(rows[i], rows[r]);
    const Elem inv = F.inv(rows[r][c]);
    for (std::size_t j = c; j < cols; ++j) rows[r][j] = F.mul(rows[r][j], inv);
    for (std::size_t t = 0; t < rows.size(); ++t) {
      if (t == r || rows[t][c] == 0) continue;
      const Elem f = rows[t][c];
      for (std::size_t j = c; j < cols; ++j) rows[t][j] = F.sub(rows[t][j], F.mul(f, rows[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

Rows nullspace(const FiniteField& F, Rows rows, std::size_t cols) {
  auto piv = row_reduce(F, rows, cols);
  std::vector<bool> is_piv(cols, false);
  for (auto c : piv) is_piv[c] = true;
  Rows basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_piv[f]) continue;
    std::vector<Elem> v(cols, 0);
    v[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = F.neg(rows[r][f]);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t rank(const FiniteField& F, Rows rows, std::size_t cols) { return row_reduce(F, rows, cols).size(); }

FixedSpace fixed_space(const Matrix& m) {
  const FiniteField& F = m.F();
  const std::size_t n = m.n();
  Rows rows(n, std::vector<Elem>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = i == j ? F.sub(m(i, j), 1) : m(i, j);
  FixedSpace out;
  for (auto& v : nullspace(F, std::move(rows), n)) out.basis.emplace_back(m.field(), std::move(v));
  out.size = checked_power(F.q(), static_cast<unsigned>(out.basis.size()), ~std::uint64_t{0});
  return out;
}

nlohmann::json field_to_json(const FiniteField& F) { return {{"p", F.p()}, {"k", F.k()}}; }

FieldPtr field_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("p")) throw UsageError("field header needs \"p\"");
  return FiniteField::get(j.at("p").get<unsigned>(), j.value("k", 1u));
}

nlohmann::json to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.n(); ++i) {
    nlohmann::json r = nlohmann::json::array();
    for (std::size_t j = 0; j < m.n(); ++j) r.push_back(m(i, j));
    rows.push_back(std::move(r));
  }
  return {{"field", field_to_json(m.F())}, {"matrix", std::move(rows)}};
}

Matrix matrix_from_json(const nlohmann::json& j) {
  auto F = field_from_json(j.at("field"));
  std::vector<std::vector<Elem>> rows = j.at("matrix").get<std::vector<std::vector<Elem>>>();
  return Matrix::from_rows(F, rows);
}

}  // namespace slg::gf
