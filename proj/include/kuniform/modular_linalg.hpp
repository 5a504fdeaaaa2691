#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace kuniform {

/// Dense row-major matrix over Z_d with entries kept in [0, d).
class ZnMatrix {
 public:
  ZnMatrix() = default;
  ZnMatrix(int modulus, int rows, int cols);
  /// Entries must already lie in [0, modulus).
  ZnMatrix(int modulus, int rows, int cols, std::vector<int> entries);

  static ZnMatrix identity(int modulus, int n);
  /// Reduces each entry of a nested initializer into [0, modulus).
  static ZnMatrix from_rows(int modulus, const std::vector<std::vector<std::int64_t>>& rows);

  int modulus() const noexcept { return modulus_; }
  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  std::span<const int> entries() const noexcept { return entries_; }
  std::span<const int> row(int i) const;

  int at(int i, int j) const { return entries_[index(i, j)]; }
  /// Stores value mod modulus.
  void set(int i, int j, std::int64_t value);

  ZnMatrix submatrix(std::span<const int> row_idx, std::span<const int> col_idx) const;
  ZnMatrix transpose() const;

  bool is_symmetric() const noexcept;
  bool has_zero_diagonal() const noexcept;

  friend bool operator==(const ZnMatrix&, const ZnMatrix&) = default;

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(j);
  }

  int modulus_ = 2;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<int> entries_;
};

bool is_prime(std::int64_t n);
std::int64_t gcd_nonneg(std::int64_t a, std::int64_t b);
/// Inverse of a modulo m; throws Range when gcd(a, m) != 1.
std::int64_t inverse_mod(std::int64_t a, std::int64_t m);

/// Rank over F_p. Throws UseDetPath for a composite modulus.
int rank_mod_p(const ZnMatrix& m);

/// Determinant of the integer lift (fraction-free Bareiss elimination), reduced into [0, d).
int det_mod_d(const ZnMatrix& m);

/// Bareiss on an n x n row-major integer buffer (overwritten); result in [0, d).
int det_mod_d_inplace(std::span<std::int64_t> a, int n, int d);

/// gcd(det, d) == 1.
bool invertible_mod_d(const ZnMatrix& m);

/// Number of x in Z_d^m with sum a_i x_i == target (mod d), by the gcd closed form.
std::uint64_t count_linear_solutions(std::span<const std::int64_t> a, int d, std::int64_t target);

/// Rows form a basis of {x : m x^T = 0} over F_p, one row per free column
/// of the reduced echelon form.
ZnMatrix null_space_mod_p(const ZnMatrix& m);

/// Reduced row echelon form over F_p; returns the pivot columns.
std::vector<int> rref_mod_p(ZnMatrix& m);

}  // namespace kuniform
