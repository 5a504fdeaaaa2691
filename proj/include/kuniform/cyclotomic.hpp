#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace kuniform {

/// Element of Z[zeta_d] stored as an unreduced coefficient vector:
/// coeffs[j] multiplies zeta_d^j. Two vectors may represent the same
/// number, so equality must go through zero_test on the difference.
class CycInt {
 public:
  CycInt() = default;
  /// Zero at the given level.
  explicit CycInt(int level);
  CycInt(int level, std::vector<std::int64_t> coeffs);

  int level() const noexcept { return level_; }
  std::span<const std::int64_t> coeffs() const noexcept { return coeffs_; }
  std::int64_t coeff(int j) const { return coeffs_.at(static_cast<std::size_t>(j)); }

  /// Exponent e if the value is stored as exactly zeta^e, else -1.
  int single_root_exponent() const noexcept;

  CycInt& operator+=(const CycInt& other);
  CycInt& operator-=(const CycInt& other);

  friend CycInt operator+(CycInt a, const CycInt& b) { return a += b; }
  friend CycInt operator-(CycInt a, const CycInt& b) { return a -= b; }
  friend CycInt operator*(const CycInt& a, const CycInt& b);

  /// Coefficient-wise comparison of the stored vectors (not numeric equality).
  friend bool operator==(const CycInt&, const CycInt&) = default;

 private:
  int level_ = 0;
  std::vector<std::int64_t> coeffs_;
};

/// Integer polynomial, ascending degree, no trailing zeros.
struct CycPoly {
  std::vector<std::int64_t> coeffs;

  int degree() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
  friend bool operator==(const CycPoly&, const CycPoly&) = default;
};

CycInt root_power(int d, std::int64_t e);
CycInt add(const CycInt& a, const CycInt& b);
CycInt sub(const CycInt& a, const CycInt& b);
CycInt mul(const CycInt& a, const CycInt& b);
CycInt scale(const CycInt& a, std::int64_t factor);
CycInt from_integer(int d, std::int64_t value);
CycInt conjugate(const CycInt& a);

/// Phi_d, computed once per d and cached for the life of the process.
const CycPoly& cyclotomic_polynomial(int d);

/// True iff sum coeffs[j] x^j is divisible by Phi_d over the integers.
bool zero_test(const CycInt& a);

/// Zero test on a raw exponent histogram at level d.
bool zero_test(int d, std::span<const std::int64_t> coeffs);

/// Numeric value of a CycInt (real and imaginary parts); test and
/// reporting use only.
std::pair<double, double> evaluate(const CycInt& a);

}  // namespace kuniform
