#include "kuniform/search.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "kuniform/checked.hpp"
#include "kuniform/error.hpp"
#include "kuniform/parallel.hpp"
#include "kuniform/rng.hpp"

namespace kuniform {

std::uint64_t candidate_space(int n, int d) {
  return saturating_pow(static_cast<std::uint64_t>(d), static_cast<unsigned>(n * (n - 1) / 2));
}

std::vector<int> candidate_upper(int n, int d, SearchMode mode, std::uint64_t seed, std::uint64_t index) {
  const std::size_t len = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
  std::vector<int> out(len);
  if (mode == SearchMode::Exhaustive) {
    for (std::size_t t = len; t-- > 0;) {
      out[t] = static_cast<int>(index % static_cast<std::uint64_t>(d));
      index /= static_cast<std::uint64_t>(d);
    }
  } else {
    SplitMix64 rng(stream_seed(seed, index));
    for (auto& v : out) v = static_cast<int>(rng.below(static_cast<std::uint64_t>(d)));
  }
  return out;
}

SearchResult search_witness(int n, int d, int k, const SearchBudget& budget, int workers) {
  if (budget.max_candidates == 0) throw Error(ErrorKind::BudgetMalformed, "budget must allow at least one candidate");
  if (d < 2) throw Error(ErrorKind::InvalidLevel, "level must be >= 2");
  if (k < 1 || 2 * k > n) throw Error(ErrorKind::Range, "k must lie in [1, n/2]");
  const std::uint64_t space = candidate_space(n, d);
  if (budget.mode == SearchMode::Exhaustive && space > budget.max_candidates) {
    throw Error(ErrorKind::BudgetMalformed, "exhaustive mode needs d^(n(n-1)/2) = " + std::to_string(space) +
                                                " <= max_candidates");
  }
  const std::uint64_t count = budget.mode == SearchMode::Exhaustive ? space : budget.max_candidates;
  const CertificateChecker checker(n, d, k);
  const std::size_t nn = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);

  auto fill = [&](std::uint64_t index, std::vector<int>& H) {
    const auto upper = candidate_upper(n, d, budget.mode, budget.seed, index);
    std::size_t t = 0;
    for (int i = 0; i < n; ++i) {
      H[static_cast<std::size_t>(i * n + i)] = 0;
      for (int j = i + 1; j < n; ++j) {
        H[static_cast<std::size_t>(i * n + j)] = upper[t];
        H[static_cast<std::size_t>(j * n + i)] = upper[t];
        ++t;
      }
    }
  };

  const std::uint64_t hit = parallel_first(count, workers, [&](std::uint64_t index) {
    thread_local std::vector<int> H;
    H.resize(nn);
    fill(index, H);
    return checker.passes(H);
  });

  SearchResult result;
  if (hit == count) {
    result.candidates = count;
    result.exhaustive_negative = budget.mode == SearchMode::Exhaustive;
    return result;
  }
  result.candidates = hit + 1;
  const auto upper = candidate_upper(n, d, budget.mode, budget.seed, hit);
  Provenance prov;
  prov.method = budget.mode == SearchMode::Exhaustive ? WitnessMethod::Exhaustive : WitnessMethod::Random;
  if (budget.mode == SearchMode::Random) prov.seed = budget.seed;
  prov.candidate_index = hit;
  result.witness = make_witness(matrix_from_upper(n, d, upper), k, prov);
  return result;
}

std::vector<TableCell> table_scan(int d, int n_min, int n_max, std::uint64_t budget_per_cell, std::uint64_t seed,
                                  int workers, const std::function<void(const SymWitness&)>& on_witness) {
  std::vector<TableCell> cells;
  for (int n = std::max(n_min, 2); n <= n_max; ++n) {
    TableCell cell;
    cell.n = n;
    std::uint64_t remaining = budget_per_cell;
    bool next_exhaustive_negative = false;
    for (int k = 1; 2 * k <= n && remaining > 0; ++k) {
      SearchBudget budget;
      budget.seed = seed;
      const std::uint64_t space = candidate_space(n, d);
      if (space <= remaining) {
        budget.mode = SearchMode::Exhaustive;
        budget.max_candidates = space;
      } else {
        budget.mode = SearchMode::Random;
        budget.max_candidates = remaining;
      }
      const auto result = search_witness(n, d, k, budget, workers);
      remaining -= std::min(remaining, result.candidates);
      if (result.witness) {
        cell.best_k = k;
        cell.witness = result.witness;
        next_exhaustive_negative = false;
        if (on_witness) on_witness(*result.witness);
      } else if (k == cell.best_k + 1) {
        next_exhaustive_negative = result.exhaustive_negative;
      }
    }
    cell.exhaustive_above = next_exhaustive_negative;
    cell.candidates = budget_per_cell - remaining;
    cells.push_back(std::move(cell));
  }
  return cells;
}

void append_registry(std::ostream& out, const SymWitness& w) {
  out << w.n << ' ' << w.d << ' ' << w.k << ' ' << to_string(w.provenance.method) << ' ';
  if (w.provenance.seed) {
    out << *w.provenance.seed;
  } else {
    out << '-';
  }
  out << ' ';
  if (w.provenance.candidate_index) {
    out << *w.provenance.candidate_index;
  } else {
    out << '-';
  }
  for (int v : upper_triangle(w.H).entries) out << ' ' << v;
  out << '\n';
}

std::vector<SymWitness> read_registry(std::istream& in) {
  std::vector<SymWitness> out;
  int line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream row(line);
    int n = 0, d = 0, k = 0;
    std::string method, seed, index;
    if (!(row >> n >> d >> k >> method >> seed >> index) || n < 2 || d < 2) {
      throw Error(ErrorKind::Parse, "registry line " + std::to_string(line_no) + ": bad record header");
    }
    std::vector<int> entries;
    for (int v; row >> v;) entries.push_back(v);
    if (!row.eof()) throw Error(ErrorKind::Parse, "registry line " + std::to_string(line_no) + ": bad entry");
    Provenance prov;
    prov.method = parse_witness_method(method);
    try {
      if (seed != "-") prov.seed = std::stoull(seed);
      if (index != "-") prov.candidate_index = std::stoull(index);
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::Parse, "registry line " + std::to_string(line_no) + ": bad seed or index");
    }
    out.push_back(make_witness(matrix_from_upper(n, d, entries), k, prov));
  }
  return out;
}

std::vector<TableCell> table_from_registry(const std::vector<SymWitness>& records, int d) {
  std::map<int, TableCell> by_n;
  for (const auto& w : records) {
    if (w.d != d) continue;
    auto& cell = by_n[w.n];
    cell.n = w.n;
    if (w.k > cell.best_k && check_certificate(w.H, w.k)) {
      cell.best_k = w.k;
      cell.witness = w;
    }
  }
  std::vector<TableCell> out;
  for (auto& [n, cell] : by_n) out.push_back(std::move(cell));
  return out;
}

}  // namespace kuniform
