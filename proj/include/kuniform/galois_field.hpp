#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace kuniform {

/// Element of GF(p^r), packed as the base-p integer whose digit i is the
/// coefficient of x^i in the polynomial representative.
struct FieldElem {
  std::uint32_t value = 0;
  auto operator<=>(const FieldElem&) const = default;
};

/// GF(p^r) over the lexicographically smallest monic irreducible of degree r
/// (candidates scanned by packed index of their lower coefficients).
/// Instances are immutable and shared through GaloisField::get.
class GaloisField {
 public:
  static std::shared_ptr<const GaloisField> get(int p, int r);

  int characteristic() const noexcept { return p_; }
  int degree() const noexcept { return r_; }
  std::uint32_t size() const noexcept { return q_; }
  /// Monic modulus, ascending coefficients, length r + 1.
  std::span<const int> modulus() const noexcept { return modulus_; }
  FieldElem primitive() const noexcept { return primitive_; }

  FieldElem zero() const noexcept { return {0}; }
  FieldElem one() const noexcept { return {1}; }
  FieldElem from_int(std::int64_t v) const;
  FieldElem from_coeffs(std::span<const int> coeffs) const;
  std::vector<int> coeffs(FieldElem x) const;

  FieldElem add(FieldElem a, FieldElem b) const;
  FieldElem sub(FieldElem a, FieldElem b) const;
  FieldElem neg(FieldElem a) const;
  FieldElem mul(FieldElem a, FieldElem b) const;
  FieldElem inv(FieldElem a) const;
  FieldElem pow(FieldElem a, std::uint64_t e) const;
  /// Multiply by an element of the prime field.
  FieldElem scale(FieldElem a, int c) const;

  /// Tr(x) = sum x^{p^i}, as an integer in [0, p).
  int trace(FieldElem x) const;

  /// Successive powers of the primitive element, preceded by 0:
  /// 0, 1, g, g^2, ..., g^{q-2}.
  std::vector<FieldElem> enumeration_order() const;

  GaloisField(int p, int r);

 private:
  int p_;
  int r_;
  std::uint32_t q_;
  std::vector<int> modulus_;
  FieldElem primitive_;
  std::vector<std::uint32_t> exp_;  // exp_[i] = g^i, i in [0, q-1)
  std::vector<std::int32_t> log_;   // log_[x] for x != 0
};

/// Tr over the field of x.
int field_trace(const GaloisField& field, FieldElem x);

struct TraceOrthBasis {
  int p = 0;
  int r = 0;
  std::vector<FieldElem> basis;
  std::vector<int> weights;  // a_i = Tr(alpha_i^2)
};

/// Checks pairwise trace-orthogonality, nonzero weights, weights matching
/// Tr(alpha_i^2), and F_p-linear independence.
bool is_trace_orthogonal_basis(const GaloisField& field, const TraceOrthBasis& basis);

/// Odd p: orthogonalization of B(x, y) = Tr(xy) starting from the polynomial
/// basis. p = 2: seeded randomized greedy search with restarts.
TraceOrthBasis find_trace_orthogonal_basis(int p, int r, std::uint64_t seed = 0,
                                           std::uint64_t max_restarts = 10000,
                                           std::uint64_t field_budget = 1u << 20);

/// Row-major matrix of field elements.
struct FieldMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<FieldElem> entries;

  FieldMatrix() = default;
  FieldMatrix(int r, int c) : rows(r), cols(c), entries(static_cast<std::size_t>(r) * static_cast<std::size_t>(c)) {}

  FieldElem& at(int i, int j) {
    return entries[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(j)];
  }
  FieldElem at(int i, int j) const {
    return entries[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(j)];
  }
  std::span<const FieldElem> row(int i) const {
    return std::span<const FieldElem>(entries).subspan(static_cast<std::size_t>(i) * static_cast<std::size_t>(cols),
                                                       static_cast<std::size_t>(cols));
  }
  friend bool operator==(const FieldMatrix&, const FieldMatrix&) = default;
};

/// In-place reduced row echelon form; returns pivot columns.
std::vector<int> row_reduce(const GaloisField& field, FieldMatrix& m);
int rank(const GaloisField& field, const FieldMatrix& m);
/// Basis of {x : m x^T = 0}.
FieldMatrix null_space(const GaloisField& field, const FieldMatrix& m);

}  // namespace kuniform
