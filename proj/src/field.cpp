#include "dzv/field.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace dzv {

namespace {

using Digits = std::vector<std::uint32_t>;

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t k, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (k) {
    if (k & 1) r = r * b % m;
    b = b * b % m;
    k >>= 1;
  }
  return r;
}

// Dense F_p[x] helpers used only while building the tables.
void trim(Digits& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Digits poly_mod(Digits a, const Digits& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint64_t lead_inv = pow_mod(m.back(), p - 2, p);
  while (a.size() > dm) {
    const std::uint64_t c = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - c * m[i] % p) % p);
    }
    trim(a);
  }
  return a;
}

Digits poly_mulmod(const Digits& a, const Digits& b, const Digits& m, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Digits r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    }
  }
  return poly_mod(std::move(r), m, p);
}

Digits poly_gcd(Digits a, Digits b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Digits r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Rabin-style test: f of degree e is irreducible iff gcd(x^{p^i} - x, f) = 1
// for every i <= e/2.
bool is_irreducible(const Digits& f, std::uint32_t p) {
  const std::size_t e = f.size() - 1;
  Digits x{0, 1};
  Digits power = poly_mod(x, f, p);
  for (std::size_t i = 1; i <= e / 2; ++i) {
    // power <- power^p mod f
    Digits acc{1};
    Digits base = power;
    std::uint64_t k = p;
    while (k) {
      if (k & 1) acc = poly_mulmod(acc, base, f, p);
      base = poly_mulmod(base, base, f, p);
      k >>= 1;
    }
    power = acc;
    Digits diff = power;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = (diff[1] + p - 1) % p;
    trim(diff);
    if (diff.empty()) return false;
    if (poly_gcd(f, diff, p).size() != 1) return false;
  }
  return true;
}

Digits choose_modulus(std::uint32_t p, std::uint32_t e) {
  if (e == 1) return {0, 1};
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < e; ++i) count *= p;
  for (std::uint32_t weight = 2; weight <= e + 1; ++weight) {
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      // c_0 is the most significant digit of idx, so idx order is lexicographic.
      Digits f(e + 1, 0);
      std::uint64_t v = idx;
      for (std::uint32_t i = e; i-- > 0;) {
        f[i] = static_cast<std::uint32_t>(v % p);
        v /= p;
      }
      f[e] = 1;
      const auto w = static_cast<std::uint32_t>(std::count_if(f.begin(), f.end(), [](auto c) { return c != 0; }));
      if (w != weight || f[0] == 0) continue;
      if (is_irreducible(f, p)) return f;
    }
  }
  throw std::logic_error("no irreducible polynomial found");
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

FiniteField::FiniteField(std::uint32_t p, std::uint32_t e) : p_(p), e_(e), q_(1) {
  if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
  if (e == 0) throw std::invalid_argument("field degree must be >= 1");
  for (std::uint32_t i = 0; i < e; ++i) {
    if (std::uint64_t{q_} * p > kMaxOrder) throw std::invalid_argument("field order exceeds 2^16");
    q_ *= p;
  }
  modulus_ = choose_modulus(p, e);

  auto to_digits = [&](std::uint32_t v) {
    Digits d(e_, 0);
    for (std::uint32_t i = 0; i < e_; ++i) {
      d[i] = v % p_;
      v /= p_;
    }
    trim(d);
    return d;
  };
  auto from_digits = [&](const Digits& d) {
    std::uint32_t v = 0;
    for (std::size_t i = d.size(); i-- > 0;) v = v * p_ + d[i];
    return v;
  };
  auto slow_mul = [&](std::uint32_t a, std::uint32_t b) {
    if (e_ == 1) return static_cast<std::uint32_t>(std::uint64_t{a} * b % p_);
    return from_digits(poly_mulmod(to_digits(a), to_digits(b), modulus_, p_));
  };

  const std::uint32_t order = q_ - 1;
  exp_.assign(2 * std::max<std::uint32_t>(order, 1), 0);
  log_.assign(q_, 0);
  if (q_ == 2) {
    exp_[0] = exp_[1] = 1;
    return;
  }
  const auto factors = prime_factors(order);
  auto slow_pow = [&](std::uint32_t a, std::uint64_t k) {
    std::uint32_t r = 1;
    while (k) {
      if (k & 1) r = slow_mul(r, a);
      a = slow_mul(a, a);
      k >>= 1;
    }
    return r;
  };
  std::uint32_t gen = 0;
  for (std::uint32_t cand = 2; cand < q_ && gen == 0; ++cand) {
    bool ok = true;
    for (auto f : factors) {
      if (slow_pow(cand, order / f) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) gen = cand;
  }
  std::uint32_t x = 1;
  for (std::uint32_t i = 0; i < order; ++i) {
    exp_[i] = x;
    exp_[i + order] = x;
    log_[x] = i;
    x = slow_mul(x, gen);
  }
}

FiniteField FiniteField::of_order(std::uint32_t q) {
  if (q < 2) throw std::invalid_argument("field order must be >= 2");
  for (std::uint32_t p = 2; p <= q; ++p) {
    if (q % p != 0) continue;
    if (!is_prime(p)) throw std::invalid_argument("field order must be a prime power");
    std::uint32_t e = 0;
    std::uint32_t r = q;
    while (r % p == 0) {
      r /= p;
      ++e;
    }
    if (r != 1) throw std::invalid_argument("field order must be a prime power");
    return FiniteField(p, e);
  }
  throw std::invalid_argument("field order must be a prime power");
}

Fq FiniteField::inv(Fq a) const {
  if (a.value == 0) throw std::domain_error("inverse of zero in F_q");
  const std::uint32_t order = q_ - 1;
  return Fq{exp_[(order - log_[a.value]) % order]};
}

Fq FiniteField::pow(Fq a, std::uint64_t k) const noexcept {
  if (k == 0) return one();
  if (a.value == 0) return zero();
  const std::uint64_t order = q_ - 1;
  return Fq{exp_[(std::uint64_t{log_[a.value]} * (k % order)) % order]};
}

Fq FiniteField::add_digits(Fq a, Fq b) const noexcept {
  std::uint32_t r = 0;
  std::uint32_t scale = 1;
  std::uint32_t x = a.value;
  std::uint32_t y = b.value;
  for (std::uint32_t i = 0; i < e_; ++i) {
    std::uint32_t d = x % p_ + y % p_;
    if (d >= p_) d -= p_;
    r += d * scale;
    scale *= p_;
    x /= p_;
    y /= p_;
  }
  return Fq{r};
}

Fq FiniteField::neg_digits(Fq a) const noexcept {
  std::uint32_t r = 0;
  std::uint32_t scale = 1;
  std::uint32_t x = a.value;
  for (std::uint32_t i = 0; i < e_; ++i) {
    const std::uint32_t d = x % p_;
    r += (d == 0 ? 0 : p_ - d) * scale;
    scale *= p_;
    x /= p_;
  }
  return Fq{r};
}

std::vector<std::uint32_t> FiniteField::coords(Fq a) const {
  std::vector<std::uint32_t> out(e_, 0);
  std::uint32_t v = a.value;
  for (std::uint32_t i = 0; i < e_; ++i) {
    out[i] = v % p_;
    v /= p_;
  }
  return out;
}

Fq FiniteField::from_coords(std::span<const std::uint32_t> c) const {
  if (c.size() != e_) throw std::invalid_argument("wrong number of F_p coordinates");
  std::uint32_t v = 0;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] >= p_) throw std::invalid_argument("F_p coordinate out of range");
    v = v * p_ + c[i];
  }
  return Fq{v};
}

std::string FiniteField::describe() const {
  std::ostringstream os;
  os << "F_" << q_;
  if (e_ > 1) {
    os << " = F_" << p_ << "[x]/(";
    bool first = true;
    for (std::size_t i = modulus_.size(); i-- > 0;) {
      if (modulus_[i] == 0) continue;
      if (!first) os << " + ";
      first = false;
      if (modulus_[i] != 1 || i == 0) os << modulus_[i];
      if (i > 0) os << "x";
      if (i > 1) os << "^" << i;
    }
    os << ")";
  }
  return os.str();
}

std::uint32_t binomial_mod(std::uint64_t n, std::uint64_t k, std::uint32_t p) {
  if (k > n) return 0;
  std::uint64_t result = 1;
  while (n > 0 || k > 0) {
    const std::uint64_t ni = n % p;
    const std::uint64_t ki = k % p;
    if (ki > ni) return 0;
    std::uint64_t num = 1;
    std::uint64_t den = 1;
    for (std::uint64_t j = 0; j < ki; ++j) {
      num = num * ((ni - j) % p) % p;
      den = den * ((j + 1) % p) % p;
    }
    result = result * num % p * pow_mod(den, p - 2, p) % p;
    n /= p;
    k /= p;
  }
  return static_cast<std::uint32_t>(result);
}

}  // namespace dzv
