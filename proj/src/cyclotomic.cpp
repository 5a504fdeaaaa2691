#include "kuniform/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "kuniform/checked.hpp"
#include "kuniform/error.hpp"

namespace kuniform {

namespace {

void require_level(int d) {
  if (d < 2) throw Error(ErrorKind::InvalidLevel, "level must be >= 2, got " + std::to_string(d));
}

void require_same_level(const CycInt& a, const CycInt& b) {
  if (a.level() != b.level()) {
    throw Error(ErrorKind::LevelMismatch,
                std::to_string(a.level()) + " vs " + std::to_string(b.level()));
  }
}

void trim(std::vector<std::int64_t>& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact quotient of a by a monic divisor; throws if the remainder is nonzero.
std::vector<std::int64_t> divide_exact(std::vector<std::int64_t> a, const std::vector<std::int64_t>& b) {
  const int db = static_cast<int>(b.size()) - 1;
  const int da = static_cast<int>(a.size()) - 1;
  std::vector<std::int64_t> q(static_cast<std::size_t>(std::max(da - db + 1, 0)), 0);
  for (int i = da; i >= db; --i) {
    const std::int64_t c = a[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    q[static_cast<std::size_t>(i - db)] = c;
    for (int j = 0; j <= db; ++j) {
      auto& slot = a[static_cast<std::size_t>(i - db + j)];
      slot = checked_sub(slot, checked_mul(c, b[static_cast<std::size_t>(j)]));
    }
  }
  trim(a);
  if (!a.empty()) throw Error(ErrorKind::PreconditionViolated, "inexact cyclotomic division");
  return q;
}

}  // namespace

CycInt::CycInt(int level) : level_(level), coeffs_(static_cast<std::size_t>(level), 0) {
  require_level(level);
}

CycInt::CycInt(int level, std::vector<std::int64_t> coeffs) : level_(level), coeffs_(std::move(coeffs)) {
  require_level(level);
  if (coeffs_.size() != static_cast<std::size_t>(level)) {
    throw Error(ErrorKind::Shape, "CycInt needs exactly " + std::to_string(level) + " coefficients");
  }
}

int CycInt::single_root_exponent() const noexcept {
  int found = -1;
  for (int j = 0; j < level_; ++j) {
    const auto c = coeffs_[static_cast<std::size_t>(j)];
    if (c == 0) continue;
    if (c != 1 || found >= 0) return -1;
    found = j;
  }
  return found;
}

CycInt& CycInt::operator+=(const CycInt& other) {
  require_same_level(*this, other);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] = checked_add(coeffs_[j], other.coeffs_[j]);
  return *this;
}

CycInt& CycInt::operator-=(const CycInt& other) {
  require_same_level(*this, other);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] = checked_sub(coeffs_[j], other.coeffs_[j]);
  return *this;
}

CycInt operator*(const CycInt& a, const CycInt& b) {
  require_same_level(a, b);
  const int d = a.level();
  std::vector<std::int64_t> out(static_cast<std::size_t>(d), 0);
  for (int i = 0; i < d; ++i) {
    const auto ai = a.coeffs_[static_cast<std::size_t>(i)];
    if (ai == 0) continue;
    for (int j = 0; j < d; ++j) {
      const auto bj = b.coeffs_[static_cast<std::size_t>(j)];
      if (bj == 0) continue;
      auto& slot = out[static_cast<std::size_t>((i + j) % d)];
      slot = checked_add(slot, checked_mul(ai, bj));
    }
  }
  return CycInt(d, std::move(out));
}

CycInt root_power(int d, std::int64_t e) {
  require_level(d);
  std::vector<std::int64_t> coeffs(static_cast<std::size_t>(d), 0);
  coeffs[static_cast<std::size_t>(mod_floor(e, d))] = 1;
  return CycInt(d, std::move(coeffs));
}

CycInt add(const CycInt& a, const CycInt& b) { return a + b; }
CycInt sub(const CycInt& a, const CycInt& b) { return a - b; }
CycInt mul(const CycInt& a, const CycInt& b) { return a * b; }

CycInt scale(const CycInt& a, std::int64_t factor) {
  std::vector<std::int64_t> out(a.coeffs().begin(), a.coeffs().end());
  for (auto& c : out) c = checked_mul(c, factor);
  return CycInt(a.level(), std::move(out));
}

CycInt from_integer(int d, std::int64_t value) { return scale(root_power(d, 0), value); }

CycInt conjugate(const CycInt& a) {
  const int d = a.level();
  std::vector<std::int64_t> out(static_cast<std::size_t>(d), 0);
  for (int j = 0; j < d; ++j) out[static_cast<std::size_t>((d - j) % d)] = a.coeff(j);
  return CycInt(d, std::move(out));
}

const CycPoly& cyclotomic_polynomial(int d) {
  if (d < 1) throw Error(ErrorKind::InvalidLevel, "cyclotomic index must be >= 1");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const CycPoly>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(d); it != cache.end()) return *it->second;
  }
  // x^d - 1 divided by Phi_e for every proper divisor e.
  std::vector<std::int64_t> poly(static_cast<std::size_t>(d) + 1, 0);
  poly.front() = -1;
  poly.back() = 1;
  for (int e = 1; e < d; ++e) {
    if (d % e == 0) poly = divide_exact(std::move(poly), cyclotomic_polynomial(e).coeffs);
  }
  std::lock_guard lock(mutex);
  auto [it, inserted] = cache.emplace(d, std::make_unique<const CycPoly>(CycPoly{std::move(poly)}));
  return *it->second;
}

bool zero_test(int d, std::span<const std::int64_t> coeffs) {
  const auto& phi = cyclotomic_polynomial(d).coeffs;
  std::vector<std::int64_t> rem(coeffs.begin(), coeffs.end());
  trim(rem);
  const int dp = static_cast<int>(phi.size()) - 1;
  // Phi_d is monic, so long division stays in the integers.
  for (int i = static_cast<int>(rem.size()) - 1; i >= dp; --i) {
    const std::int64_t c = rem[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    for (int j = 0; j <= dp; ++j) {
      auto& slot = rem[static_cast<std::size_t>(i - dp + j)];
      slot = checked_sub(slot, checked_mul(c, phi[static_cast<std::size_t>(j)]));
    }
  }
  for (int i = 0; i < std::min<int>(dp, static_cast<int>(rem.size())); ++i) {
    if (rem[static_cast<std::size_t>(i)] != 0) return false;
  }
  return true;
}

bool zero_test(const CycInt& a) { return zero_test(a.level(), a.coeffs()); }

std::pair<double, double> evaluate(const CycInt& a) {
  double re = 0.0;
  double im = 0.0;
  for (int j = 0; j < a.level(); ++j) {
    const double angle = 2.0 * std::numbers::pi * j / a.level();
    re += static_cast<double>(a.coeff(j)) * std::cos(angle);
    im += static_cast<double>(a.coeff(j)) * std::sin(angle);
  }
  return {re, im};
}

}  // namespace kuniform
