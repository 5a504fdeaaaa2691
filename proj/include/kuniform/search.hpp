#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kuniform/matrix_construct.hpp"

namespace kuniform {

enum class SearchMode { Exhaustive, Random };

struct SearchBudget {
  std::uint64_t max_candidates = 10'000'000;
  std::uint64_t seed = 0;
  SearchMode mode = SearchMode::Random;
};

struct SearchResult {
  std::optional<SymWitness> witness;
  /// Candidates examined: winning index + 1 on success, else the whole range.
  std::uint64_t candidates = 0;
  /// True when every candidate matrix was examined (exhaustive mode, no hit).
  bool exhaustive_negative = false;
};

/// Number of zero-diagonal symmetric n x n matrices over Z_d, saturating.
std::uint64_t candidate_space(int n, int d);

/// Upper triangle of candidate `index`. Exhaustive: base-d digits of the index,
/// h_12 most significant. Random: entries drawn in row-major upper-triangle order
/// from SplitMix64 seeded with stream_seed(seed, index), each uniform in [0, d).
std::vector<int> candidate_upper(int n, int d, SearchMode mode, std::uint64_t seed, std::uint64_t index);

/// First candidate (smallest index) passing the certificate for (n, d, k).
/// Prime d uses the rank test, composite d the invertible-block test.
SearchResult search_witness(int n, int d, int k, const SearchBudget& budget, int workers = 1);

struct TableCell {
  int n = 0;
  /// Largest k with a witness; 0 when none was found.
  int best_k = 0;
  std::optional<SymWitness> witness;
  /// Next k up was ruled out by complete enumeration (for this construction only).
  bool exhaustive_above = false;
  std::uint64_t candidates = 0;
};

/// For every n, tries k = 1..n/2 in order with a shared per-cell candidate budget
/// and keeps the largest success. Attempts whose full space fits in the remaining
/// budget run exhaustively; the rest run in random mode with `seed`.
std::vector<TableCell> table_scan(int d, int n_min, int n_max, std::uint64_t budget_per_cell, std::uint64_t seed,
                                  int workers = 1,
                                  const std::function<void(const SymWitness&)>& on_witness = {});

/// One line per witness: n d k method seed index upper-triangle entries
/// (seed is "-" for exhaustive and fixture records).
void append_registry(std::ostream& out, const SymWitness& w);
std::vector<SymWitness> read_registry(std::istream& in);

/// Best k per n from registry records at level d, certificates re-checked.
std::vector<TableCell> table_from_registry(const std::vector<SymWitness>& records, int d);

}  // namespace kuniform
