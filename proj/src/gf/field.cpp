#include "slg/gf.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <tuple>

#include "slg/errors.hpp"

namespace slg::gf {

namespace {

struct ModulusRow {
  unsigned p;
  unsigned k;
  std::vector<Elem> lower;
};

const std::vector<ModulusRow>& modulus_table() {
  static const std::vector<ModulusRow> table = {
#include "modulus_table.inc"
  };
  return table;
}

std::vector<unsigned> prime_factors(std::uint64_t n) {
  std::vector<unsigned> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(static_cast<unsigned>(d));
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(static_cast<unsigned>(n));
  return out;
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

unsigned least_primitive_root(unsigned p) {
  if (p == 2) return 1;
  auto fs = prime_factors(p - 1);
  for (unsigned g = 2; g < p; ++g) {
    bool ok = std::all_of(fs.begin(), fs.end(),
                          [&](unsigned r) { return powmod(g, (p - 1) / r, p) != 1; });
    if (ok) return g;
  }
  throw InternalError("no primitive root mod " + std::to_string(p));
}

// Polynomial remainder of `num` by monic `den` over GF(p); coefficients
// constant-first.  Returns true iff the remainder is zero.
bool divides(unsigned p, const std::vector<Elem>& den, std::vector<Elem> num) {
  const std::size_t dd = den.size() - 1;
  for (std::size_t d = num.size(); d-- > dd;) {
    Elem c = num[d];
    if (c == 0) continue;
    for (std::size_t i = 0; i <= dd; ++i) {
      num[d - dd + i] = static_cast<Elem>((num[d - dd + i] + (p - c) * std::uint64_t{den[i]}) % p);
    }
  }
  return std::all_of(num.begin(), num.begin() + static_cast<std::ptrdiff_t>(dd),
                     [](Elem c) { return c == 0; });
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t checked_power(std::uint64_t q, unsigned n, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < n; ++i) {
    if (r > cap / q) throw ResourceError("space size exceeds cap", static_cast<std::size_t>(r));
    r *= q;
  }
  return r;
}

bool is_irreducible(unsigned p, std::span<const Elem> lower) {
  const std::size_t k = lower.size();
  std::vector<Elem> f(lower.begin(), lower.end());
  f.push_back(1);
  for (std::size_t deg = 1; deg <= k / 2; ++deg) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < deg; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      std::vector<Elem> g(deg + 1);
      std::uint64_t c = code;
      for (std::size_t i = 0; i < deg; ++i) {
        g[i] = static_cast<Elem>(c % p);
        c /= p;
      }
      g[deg] = 1;
      if (divides(p, g, f)) return false;
    }
  }
  return true;
}

FiniteField::FiniteField(unsigned p, unsigned k) : p_(p), k_(k) {
  if (k == 0) throw DomainError("field degree must be positive");
  if (!is_prime(p)) throw DomainError("field characteristic " + std::to_string(p) + " is not prime");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < k; ++i) {
    q *= p;
    if (q > kMaxFieldSize) throw DomainError("GF(" + std::to_string(p) + "^" + std::to_string(k) + ") exceeds 2^20");
  }
  q_ = static_cast<std::uint32_t>(q);
  half_ = (q_ - 1) / 2;

  exp_.resize(2 * std::size_t{q_ - 1} + 1);
  log_.assign(q_, 0);
  if (k == 1) {
    const unsigned g = least_primitive_root(p);
    modulus_ = {static_cast<Elem>((p - g) % p)};
    Elem x = 1;
    for (std::uint32_t n = 0; n < q_ - 1; ++n) {
      exp_[n] = x;
      x = static_cast<Elem>(std::uint64_t{x} * g % p);
    }
  } else {
    const auto& table = modulus_table();
    auto it = std::find_if(table.begin(), table.end(),
                           [&](const ModulusRow& r) { return r.p == p && r.k == k; });
    if (it == table.end()) throw DomainError("no bundled modulus for " + name());
    modulus_ = it->lower;
    if (!is_irreducible(p, modulus_)) throw InternalError("bundled modulus for " + name() + " is reducible");
    // Multiply by x repeatedly: shift digits up and fold the top digit back
    // through the modulus.
    std::vector<Elem> digits(k, 0);
    digits[0] = 1;
    for (std::uint32_t n = 0; n < q_ - 1; ++n) {
      Elem v = 0;
      for (unsigned i = k; i-- > 0;) v = v * p + digits[i];
      exp_[n] = v;
      const Elem top = digits[k - 1];
      for (unsigned i = k - 1; i > 0; --i) digits[i] = digits[i - 1];
      digits[0] = 0;
      if (top != 0) {
        for (unsigned i = 0; i < k; ++i)
          digits[i] = static_cast<Elem>((digits[i] + (p - top) * std::uint64_t{modulus_[i]}) % p);
      }
    }
  }
  for (std::uint32_t n = 0; n < q_ - 1; ++n) {
    if (exp_[n] == 0 || (n > 0 && exp_[n] == 1))
      throw InternalError("modulus for " + name() + " is not primitive");
    log_[exp_[n]] = n;
  }
  for (std::uint32_t n = q_ - 1; n < exp_.size(); ++n) exp_[n] = exp_[n - (q_ - 1)];

  if (k > 1 && p != 2) {
    zech_.assign(q_ - 1, -1);
    for (std::uint32_t n = 0; n < q_ - 1; ++n) {
      Elem s = add_digitwise(1, exp_[n]);
      zech_[n] = s == 0 ? -1 : static_cast<std::int64_t>(log_[s]);
    }
  }
}

FieldPtr FiniteField::get(unsigned p, unsigned k) {
  static std::mutex mu;
  static std::map<std::pair<unsigned, unsigned>, FieldPtr> cache;
  std::lock_guard lock(mu);
  auto key = std::make_pair(p, k);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto f = std::make_shared<const FiniteField>(p, k);
  cache.emplace(key, f);
  return f;
}

FieldPtr FiniteField::of_size(std::uint32_t q) {
  if (q < 2) throw DomainError("field size must be at least 2");
  auto fs = prime_factors(q);
  if (fs.size() != 1) throw DomainError(std::to_string(q) + " is not a prime power");
  unsigned k = 0;
  for (std::uint32_t x = q; x > 1; x /= fs[0]) ++k;
  return get(fs[0], k);
}

Elem FiniteField::zech_add(Elem a, Elem b) const noexcept {
  if (a == 0) return b;
  if (b == 0) return a;
  const std::uint32_t la = log_[a];
  const std::uint32_t lb = log_[b];
  const std::uint32_t d = lb >= la ? lb - la : lb + (q_ - 1) - la;
  const std::int64_t z = zech_[d];
  if (z < 0) return 0;
  return exp_[la + static_cast<std::uint32_t>(z)];
}

Elem FiniteField::add_digitwise(Elem a, Elem b) const noexcept {
  Elem r = 0;
  Elem scale = 1;
  for (unsigned i = 0; i < k_; ++i) {
    Elem s = a % p_ + b % p_;
    if (s >= p_) s -= p_;
    r += s * scale;
    scale *= p_;
    a /= p_;
    b /= p_;
  }
  return r;
}

Elem FiniteField::inv(Elem a) const {
  if (a == 0) throw DomainError("inverse of zero in " + name());
  if (a >= q_) throw UsageError("element outside " + name());
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

Elem FiniteField::pow(Elem a, std::int64_t e) const {
  if (e == 0) return 1;
  if (a == 0) {
    if (e < 0) throw DomainError("negative power of zero");
    return 0;
  }
  const std::int64_t order = q_ - 1;
  std::int64_t l = (static_cast<std::int64_t>(log_[a]) * (e % order)) % order;
  if (l < 0) l += order;
  return exp_[static_cast<std::size_t>(l)];
}

std::uint32_t FiniteField::log(Elem a) const {
  if (a == 0) throw DomainError("log of zero");
  return log_[a];
}

Elem FiniteField::from_int(std::int64_t n) const noexcept {
  std::int64_t r = n % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

std::uint32_t FiniteField::order(Elem a) const {
  if (a == 0) throw DomainError("order of zero");
  std::uint32_t l = log_[a];
  std::uint32_t n = q_ - 1;
  std::uint32_t g = n, x = l;
  while (x) {
    std::uint32_t t = g % x;
    g = x;
    x = t;
  }
  return n / g;
}

std::string FiniteField::name() const {
  return k_ == 1 ? "GF(" + std::to_string(p_) + ")"
                 : "GF(" + std::to_string(p_) + "^" + std::to_string(k_) + ")";
}

}  // namespace slg::gf
