#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kuniform/galois_field.hpp"
#include "kuniform/state.hpp"

namespace kuniform {

struct CodeDistances {
  int min_dist = 0;
  int dual_min_dist = 0;
};

/// Linear [n, m] code over GF(p^r) given by a full-row-rank generator.
class LinearCode {
 public:
  /// Rejects generators without full row rank.
  LinearCode(std::shared_ptr<const GaloisField> field, FieldMatrix generator);
  /// Zero code of length n.
  LinearCode(std::shared_ptr<const GaloisField> field, int n);

  const GaloisField& field() const noexcept { return *field_; }
  std::shared_ptr<const GaloisField> field_ptr() const noexcept { return field_; }
  int p() const noexcept { return field_->characteristic(); }
  int r() const noexcept { return field_->degree(); }
  int length() const noexcept { return n_; }
  int dimension() const noexcept { return generator_.rows; }
  const FieldMatrix& generator() const noexcept { return generator_; }

  /// Distances cached by compute_distances.
  const std::optional<CodeDistances>& cached() const noexcept { return cached_; }
  void set_cached(CodeDistances d) { cached_ = d; }

  /// Codeword for a message of field elements.
  std::vector<FieldElem> encode(std::span<const FieldElem> message) const;

 private:
  std::shared_ptr<const GaloisField> field_;
  int n_ = 0;
  FieldMatrix generator_;
  std::optional<CodeDistances> cached_;
};

struct DistanceOptions {
  /// Maximum number of codewords (q^m) enumerated.
  std::uint64_t budget = 1u << 24;
  int workers = 1;
};

/// Null space of the generator under sum u_i v_i.
LinearCode dual_code(const LinearCode& c);

/// Minimum nonzero Hamming weight by exhaustive enumeration of the q^m
/// codewords, stopping early once a weight-1 word is seen. The zero code has
/// no nonzero word and reports n + 1. Throws TooLarge above the budget.
int min_distance(const LinearCode& c, const DistanceOptions& opts = {});

/// Both distances, recomputed and cached on the code.
CodeDistances compute_distances(LinearCode& c, const DistanceOptions& opts = {});

/// True when the two codes span the same subspace.
bool same_code(const LinearCode& a, const LinearCode& b);

/// State with amplitude 1 on each codeword; requires r = 1 and both computed
/// distances >= k + 1. Throws HypothesisFailed naming the short distance.
PureState state_from_code(const LinearCode& c, int k, const DistanceOptions& opts = {});

/// Codewords with last coordinate 0, last coordinate deleted.
LinearCode shorten_last(const LinearCode& c);

/// Deletes the last coordinate of every codeword.
LinearCode puncture_last(const LinearCode& c);

/// Trace-orthogonal basis of GF(p^r)/F_p used by the expansion maps.
struct ConcatMaps {
  TraceOrthBasis basis;
};

enum class Expansion { Primal, DualWeighted };

/// pi(u) = (b_1..b_r) with u = sum b_i alpha_i; the dual-weighted map
/// multiplies coordinate i by a_i = Tr(alpha_i^2).
std::vector<int> expand_symbol(const GaloisField& field, const ConcatMaps& maps, FieldElem u, Expansion which);

/// p-ary [rn, rm] image of the code under the chosen expansion.
LinearCode expand_code(const LinearCode& c, const ConcatMaps& maps, Expansion which);

/// Evaluation code of polynomials of degree < m at the first n points of
/// GaloisField::enumeration_order (0, 1, g, g^2, ...).
LinearCode reed_solomon(int p, int r, int n, int m);

/// Every row of a is orthogonal to every row of b and dimensions sum to the length.
bool are_dual_pair(const LinearCode& a, const LinearCode& b);

/// Text format: "n m p r", then m generator rows; for r > 1 each entry is
/// r comma-separated base-p digits (coefficient of x^0 first).
void write_code(std::ostream& out, const LinearCode& c);
LinearCode read_code(std::istream& in);
LinearCode read_code_file(const std::string& path);
void write_code_file(const std::string& path, const LinearCode& c);

}  // namespace kuniform
