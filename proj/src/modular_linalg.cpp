#include "kuniform/modular_linalg.hpp"

#include <numeric>
#include <string>
#include <utility>

#include "kuniform/checked.hpp"
#include "kuniform/error.hpp"

namespace kuniform {

namespace {

void require_prime_modulus(const ZnMatrix& m, ErrorKind kind) {
  if (!is_prime(m.modulus())) {
    throw Error(kind, "modulus " + std::to_string(m.modulus()) + " is not prime");
  }
}

}  // namespace

ZnMatrix::ZnMatrix(int modulus, int rows, int cols)
    : modulus_(modulus), rows_(rows), cols_(cols),
      entries_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0) {
  if (modulus < 2) throw Error(ErrorKind::InvalidLevel, "modulus must be >= 2");
  if (rows < 0 || cols < 0) throw Error(ErrorKind::Shape, "negative dimension");
}

ZnMatrix::ZnMatrix(int modulus, int rows, int cols, std::vector<int> entries)
    : modulus_(modulus), rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (modulus < 2) throw Error(ErrorKind::InvalidLevel, "modulus must be >= 2");
  if (rows < 0 || cols < 0 ||
      entries_.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
    throw Error(ErrorKind::Shape, "entry count does not match rows*cols");
  }
  for (int v : entries_) {
    if (v < 0 || v >= modulus) throw Error(ErrorKind::Range, "entry outside [0, modulus)");
  }
}

ZnMatrix ZnMatrix::identity(int modulus, int n) {
  ZnMatrix out(modulus, n, n);
  for (int i = 0; i < n; ++i) out.set(i, i, 1);
  return out;
}

ZnMatrix ZnMatrix::from_rows(int modulus, const std::vector<std::vector<std::int64_t>>& rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r == 0 ? 0 : static_cast<int>(rows.front().size());
  ZnMatrix out(modulus, r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != c) throw Error(ErrorKind::Shape, "ragged rows");
    for (int j = 0; j < c; ++j) out.set(i, j, rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  }
  return out;
}

std::span<const int> ZnMatrix::row(int i) const {
  return std::span<const int>(entries_).subspan(index(i, 0), static_cast<std::size_t>(cols_));
}

void ZnMatrix::set(int i, int j, std::int64_t value) {
  entries_[index(i, j)] = static_cast<int>(mod_floor(value, modulus_));
}

ZnMatrix ZnMatrix::submatrix(std::span<const int> row_idx, std::span<const int> col_idx) const {
  ZnMatrix out(modulus_, static_cast<int>(row_idx.size()), static_cast<int>(col_idx.size()));
  for (std::size_t i = 0; i < row_idx.size(); ++i) {
    for (std::size_t j = 0; j < col_idx.size(); ++j) {
      out.entries_[i * col_idx.size() + j] = at(row_idx[i], col_idx[j]);
    }
  }
  return out;
}

ZnMatrix ZnMatrix::transpose() const {
  ZnMatrix out(modulus_, cols_, rows_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) out.entries_[out.index(j, i)] = at(i, j);
  }
  return out;
}

bool ZnMatrix::is_symmetric() const noexcept {
  if (!is_square()) return false;
  for (int i = 0; i < rows_; ++i) {
    for (int j = i + 1; j < cols_; ++j) {
      if (at(i, j) != at(j, i)) return false;
    }
  }
  return true;
}

bool ZnMatrix::has_zero_diagonal() const noexcept {
  for (int i = 0; i < std::min(rows_, cols_); ++i) {
    if (at(i, i) != 0) return false;
  }
  return true;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) return false;
  }
  return true;
}

std::int64_t gcd_nonneg(std::int64_t a, std::int64_t b) {
  return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  std::int64_t old_r = mod_floor(a, m), r = m;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    old_s = std::exchange(s, old_s - q * s);
  }
  if (old_r != 1) throw Error(ErrorKind::Range, std::to_string(a) + " is not invertible mod " + std::to_string(m));
  return mod_floor(old_s, m);
}

std::vector<int> rref_mod_p(ZnMatrix& m) {
  require_prime_modulus(m, ErrorKind::Unsupported);
  const int p = m.modulus();
  std::vector<int> pivots;
  int lead_row = 0;
  for (int col = 0; col < m.cols() && lead_row < m.rows(); ++col) {
    int pivot = -1;
    for (int i = lead_row; i < m.rows(); ++i) {
      if (m.at(i, col) != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != lead_row) {
      for (int j = 0; j < m.cols(); ++j) {
        const int tmp = m.at(pivot, j);
        m.set(pivot, j, m.at(lead_row, j));
        m.set(lead_row, j, tmp);
      }
    }
    const std::int64_t inv = inverse_mod(m.at(lead_row, col), p);
    for (int j = 0; j < m.cols(); ++j) m.set(lead_row, j, m.at(lead_row, j) * inv);
    for (int i = 0; i < m.rows(); ++i) {
      if (i == lead_row) continue;
      const std::int64_t factor = m.at(i, col);
      if (factor == 0) continue;
      for (int j = 0; j < m.cols(); ++j) {
        m.set(i, j, m.at(i, j) - factor * m.at(lead_row, j));
      }
    }
    pivots.push_back(col);
    ++lead_row;
  }
  return pivots;
}

int rank_mod_p(const ZnMatrix& m) {
  require_prime_modulus(m, ErrorKind::UseDetPath);
  ZnMatrix work = m;
  return static_cast<int>(rref_mod_p(work).size());
}

int det_mod_d_inplace(std::span<std::int64_t> a, int n, int d) {
  if (n == 0) return 1 % d;
  auto at = [&](int i, int j) -> std::int64_t& {
    return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)];
  };
  std::int64_t sign = 1;
  std::int64_t prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (at(k, k) == 0) {
      int swap_row = -1;
      for (int i = k + 1; i < n; ++i) {
        if (at(i, k) != 0) {
          swap_row = i;
          break;
        }
      }
      if (swap_row < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(at(k, j), at(swap_row, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        // Sylvester's identity guarantees the division is exact.
        const __int128 num = static_cast<__int128>(at(i, j)) * at(k, k) - static_cast<__int128>(at(i, k)) * at(k, j);
        const __int128 q = num / prev;
        if (q > INT64_MAX || q < INT64_MIN) throw Error(ErrorKind::Overflow, "Bareiss intermediate");
        at(i, j) = static_cast<std::int64_t>(q);
      }
      at(i, k) = 0;
    }
    prev = at(k, k);
  }
  return static_cast<int>(mod_floor(mod_floor(at(n - 1, n - 1), d) * sign, d));
}

int det_mod_d(const ZnMatrix& m) {
  if (!m.is_square()) throw Error(ErrorKind::Shape, "determinant of a non-square matrix");
  std::vector<std::int64_t> a(m.entries().begin(), m.entries().end());
  return det_mod_d_inplace(a, m.rows(), m.modulus());
}

bool invertible_mod_d(const ZnMatrix& m) {
  return gcd_nonneg(det_mod_d(m), m.modulus()) == 1;
}

std::uint64_t count_linear_solutions(std::span<const std::int64_t> a, int d, std::int64_t target) {
  if (a.empty()) throw Error(ErrorKind::Shape, "empty coefficient list");
  if (d < 2) throw Error(ErrorKind::InvalidLevel, "modulus must be >= 2");
  std::int64_t e = d;
  for (auto ai : a) e = gcd_nonneg(e, mod_floor(ai, d));
  if (mod_floor(target, d) % e != 0) return 0;
  return static_cast<std::uint64_t>(e) * checked_pow(static_cast<std::uint64_t>(d), static_cast<unsigned>(a.size() - 1));
}

ZnMatrix null_space_mod_p(const ZnMatrix& m) {
  require_prime_modulus(m, ErrorKind::Unsupported);
  ZnMatrix work = m;
  const auto pivots = rref_mod_p(work);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  const int nullity = m.cols() - static_cast<int>(pivots.size());
  ZnMatrix basis(m.modulus(), nullity, m.cols());
  int row = 0;
  for (int free_col = 0; free_col < m.cols(); ++free_col) {
    if (is_pivot[static_cast<std::size_t>(free_col)]) continue;
    basis.set(row, free_col, 1);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      basis.set(row, pivots[r], -static_cast<std::int64_t>(work.at(static_cast<int>(r), free_col)));
    }
    ++row;
  }
  return basis;
}

}  // namespace kuniform
