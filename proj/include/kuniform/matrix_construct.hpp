#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kuniform/modular_linalg.hpp"
#include "kuniform/state.hpp"

namespace kuniform {

enum class WitnessMethod { Exhaustive, Random, Fixture };

std::string_view to_string(WitnessMethod m);
WitnessMethod parse_witness_method(std::string_view text);

struct Provenance {
  WitnessMethod method = WitnessMethod::Fixture;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> candidate_index;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// Zero-diagonal symmetric matrix over Z_d together with the uniformity k it certifies.
struct SymWitness {
  int n = 0;
  int d = 0;
  ZnMatrix H;
  int k = 0;
  Provenance provenance;

  friend bool operator==(const SymWitness&, const SymWitness&) = default;
};

/// Strict upper triangle h_ij (i < j), row-major.
struct UpperTri {
  int n = 0;
  int d = 0;
  std::vector<int> entries;
};

UpperTri upper_triangle(const ZnMatrix& H);
ZnMatrix matrix_from_upper(int n, int d, std::span<const int> entries);

/// Precomputed subset tables for repeatedly certifying n x n matrices at one (d, k).
/// Prime d uses the rank route; composite d searches for an invertible k x k block.
class CertificateChecker {
 public:
  CertificateChecker(int n, int d, int k);

  int n() const noexcept { return n_; }
  int d() const noexcept { return d_; }
  int k() const noexcept { return k_; }
  bool prime_route() const noexcept { return prime_; }
  std::size_t subset_count() const noexcept { return subsets_.size(); }

  /// H given row-major with n*n entries in [0, d).
  bool passes(std::span<const int> H) const;
  /// Certificate condition for the single subset with index i (lexicographic order).
  bool subset_passes(std::span<const int> H, std::size_t i) const;
  bool subset_passes_prime(std::span<const int> H, std::size_t i) const;
  bool subset_passes_general(std::span<const int> H, std::size_t i) const;

 private:
  int n_;
  int d_;
  int k_;
  bool prime_;
  std::vector<std::vector<int>> subsets_;
  std::vector<std::vector<int>> complements_;
  std::vector<std::vector<int>> b_choices_;  // k-subsets of {0..n-k-1}
  std::vector<int> inverse_;                  // inverses mod p on the prime route
};

/// rank_mod_p(H[A x Abar]) == k for every k-subset A. Throws UseDetPath for composite d.
bool check_certificate_prime(const ZnMatrix& H, int k, int workers = 1);

/// Every k-subset A has some B in Abar, |B| = k, with H[A x B] invertible over Z_d.
bool check_certificate_general(const ZnMatrix& H, int k, int workers = 1);

/// Prime modulus goes through the rank test, composite through the block test.
bool check_certificate(const ZnMatrix& H, int k, int workers = 1);

/// c H~ c^T = sum_{i<j} h_ij c_i c_j mod d.
int quadratic_phase(const ZnMatrix& H, std::span<const int> c);

/// Validates shape and certificate, then packages the witness.
SymWitness make_witness(const ZnMatrix& H, int k, Provenance provenance);

/// Full-support state with amplitude zeta_d^{c H~ c^T} on every c in Z_d^n.
PureState state_from_matrix(const SymWitness& w, std::uint64_t max_kets = 1u << 24);

/// Text format: "n d k", n rows of n entries, then "# method=... [seed=...] [index=...]".
void write_witness(std::ostream& out, const SymWitness& w);
/// Parses and re-checks the certificate.
SymWitness read_witness(std::istream& in);
SymWitness read_witness_file(const std::string& path);
void write_witness_file(const std::string& path, const SymWitness& w);

}  // namespace kuniform
