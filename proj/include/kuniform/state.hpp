#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kuniform/cyclotomic.hpp"

namespace kuniform {

/// Basis string c in Z_d^n, one digit per qudit.
using Basis = std::vector<int>;

/// Unnormalized n-qudit pure state with cyclotomic-integer amplitudes.
/// Kets missing from the table have amplitude zero.
class PureState {
 public:
  PureState(int n, int d);

  int qudits() const noexcept { return n_; }
  int level() const noexcept { return d_; }
  const std::map<Basis, CycInt>& amplitudes() const noexcept { return amps_; }
  std::size_t support() const noexcept { return amps_.size(); }

  /// Stores amp at c; an all-zero coefficient vector erases the ket.
  void set(const Basis& c, const CycInt& amp);
  void set_phase(const Basis& c, std::int64_t exponent) { set(c, root_power(d_, exponent)); }
  /// Amplitude at c (zero if absent).
  CycInt at(const Basis& c) const;

  /// True when every stored amplitude is a single root of unity.
  bool is_pure_phase() const noexcept;

  friend bool operator==(const PureState&, const PureState&) = default;

 private:
  int n_;
  int d_;
  std::map<Basis, CycInt> amps_;
};

/// <Phi|Phi> as an element of Z[zeta_d].
CycInt norm(const PureState& s);

struct UniformityReport {
  int k_requested = 0;
  bool uniform = false;
  CycInt norm;
  /// Set when the norm is a rational integer (always the case for pure-phase states).
  std::optional<std::int64_t> norm_value;
  std::optional<std::vector<int>> failing_subset;  // 0-based qudit positions
  std::optional<std::pair<Basis, Basis>> failing_pair;
  std::string failure_reason;
};

struct VerifyOptions {
  /// Refuse instances whose estimated elementary-operation count exceeds this.
  std::uint64_t op_ceiling = 1'000'000'000;
  int workers = 1;
};

/// Estimated elementary operations for verify_uniform at k.
std::uint64_t verification_cost(const PureState& s, int k);

/// sum over c_Abar of conj(phi(cA, c_Abar)) * phi(cA2, c_Abar), joined sparsely on c_Abar.
CycInt marginal_sum(const PureState& s, std::span<const int> subset, std::span<const int> cA,
                    std::span<const int> cA2);

/// Checks every k-subset and every pair (c_A, c'_A): off-diagonal sums vanish
/// and diagonal sums equal <Phi|Phi>/d^k. The reported failure is the first one
/// in lexicographic subset order regardless of worker count.
UniformityReport verify_uniform(const PureState& s, int k, const VerifyOptions& opts = {});

/// Largest k in [0, n/2] for which verify_uniform passes.
int max_uniformity(const PureState& s, const VerifyOptions& opts = {});

/// Text format: header "n d", then one ket per line as n digits (run together
/// when d <= 10, space-separated otherwise) followed by
/// either "^e" (amplitude zeta_d^e) or d integer coefficients.
void write_state(std::ostream& out, const PureState& s);
PureState read_state(std::istream& in);
PureState read_state_file(const std::string& path);
void write_state_file(const std::string& path, const PureState& s);

}  // namespace kuniform
