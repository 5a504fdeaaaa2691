#include "kuniform/linear_code.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "kuniform/checked.hpp"
#include "kuniform/error.hpp"
#include "kuniform/modular_linalg.hpp"

namespace kuniform {

namespace {

void require_same_field(const LinearCode& a, const LinearCode& b) {
  if (a.p() != b.p() || a.r() != b.r() || a.length() != b.length()) {
    throw Error(ErrorKind::FieldMismatch, "codes live in different ambient spaces");
  }
}

FieldMatrix drop_last_column(const FieldMatrix& g) {
  FieldMatrix out(g.rows, g.cols - 1);
  for (int i = 0; i < g.rows; ++i) {
    for (int j = 0; j + 1 < g.cols; ++j) out.at(i, j) = g.at(i, j);
  }
  return out;
}

// Nonzero rows of the reduced echelon form.
FieldMatrix row_basis(const GaloisField& field, FieldMatrix g) {
  const auto pivots = row_reduce(field, g);
  FieldMatrix out(static_cast<int>(pivots.size()), g.cols);
  for (int i = 0; i < out.rows; ++i) {
    for (int j = 0; j < g.cols; ++j) out.at(i, j) = g.at(i, j);
  }
  return out;
}

}  // namespace

LinearCode::LinearCode(std::shared_ptr<const GaloisField> field, FieldMatrix generator)
    : field_(std::move(field)), n_(generator.cols), generator_(std::move(generator)) {
  for (auto e : generator_.entries) {
    if (e.value >= field_->size()) throw Error(ErrorKind::Range, "generator entry outside the field");
  }
  if (rank(*field_, generator_) != generator_.rows) {
    throw Error(ErrorKind::PreconditionViolated, "generator does not have full row rank");
  }
}

LinearCode::LinearCode(std::shared_ptr<const GaloisField> field, int n)
    : field_(std::move(field)), n_(n), generator_(0, n) {}

std::vector<FieldElem> LinearCode::encode(std::span<const FieldElem> message) const {
  if (static_cast<int>(message.size()) != dimension()) throw Error(ErrorKind::Shape, "message length != dimension");
  std::vector<FieldElem> out(static_cast<std::size_t>(n_), field_->zero());
  for (int i = 0; i < dimension(); ++i) {
    const FieldElem mi = message[static_cast<std::size_t>(i)];
    if (mi.value == 0) continue;
    for (int j = 0; j < n_; ++j) {
      out[static_cast<std::size_t>(j)] = field_->add(out[static_cast<std::size_t>(j)], field_->mul(mi, generator_.at(i, j)));
    }
  }
  return out;
}

LinearCode dual_code(const LinearCode& c) {
  if (c.dimension() == 0) {
    FieldMatrix full(c.length(), c.length());
    for (int i = 0; i < c.length(); ++i) full.at(i, i) = c.field().one();
    return LinearCode(c.field_ptr(), std::move(full));
  }
  return LinearCode(c.field_ptr(), null_space(c.field(), c.generator()));
}

int min_distance(const LinearCode& c, const DistanceOptions& opts) {
  const auto& f = c.field();
  const int n = c.length();
  if (c.dimension() == 0) return n + 1;
  const int p = f.characteristic();
  const int digits = c.dimension() * f.degree();
  const std::uint64_t total = saturating_pow(static_cast<std::uint64_t>(p), static_cast<unsigned>(digits));
  if (total > opts.budget) {
    throw Error(ErrorKind::TooLarge, std::to_string(total) + " codewords exceed the enumeration budget of " +
                                         std::to_string(opts.budget));
  }
  // F_p-spanning rows x^j * g_i; an F_p odometer over their coefficients
  // visits every codeword with one row addition per step (amortized).
  std::vector<std::vector<FieldElem>> rows;
  for (int i = 0; i < c.dimension(); ++i) {
    std::uint32_t place = 1;
    for (int j = 0; j < f.degree(); ++j, place *= static_cast<std::uint32_t>(p)) {
      std::vector<FieldElem> row(static_cast<std::size_t>(n));
      for (int col = 0; col < n; ++col) row[static_cast<std::size_t>(col)] = f.mul(FieldElem{place}, c.generator().at(i, col));
      rows.push_back(std::move(row));
    }
  }

  std::atomic<int> best{n + 1};
  std::atomic<std::uint64_t> next_chunk{1};
  const std::uint64_t chunk = 1u << 14;
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    try {
      std::vector<int> coef(static_cast<std::size_t>(digits));
      std::vector<FieldElem> word(static_cast<std::size_t>(n));
      for (;;) {
        const std::uint64_t start = next_chunk.fetch_add(chunk);
        if (start >= total || best.load() == 1) return;
        const std::uint64_t stop = std::min(total, start + chunk);
        std::uint64_t idx = start;
        std::fill(word.begin(), word.end(), f.zero());
        for (int t = 0; t < digits; ++t) {
          coef[static_cast<std::size_t>(t)] = static_cast<int>(idx % static_cast<std::uint64_t>(p));
          idx /= static_cast<std::uint64_t>(p);
          for (int rep = 0; rep < coef[static_cast<std::size_t>(t)]; ++rep) {
            for (int col = 0; col < n; ++col) {
              word[static_cast<std::size_t>(col)] = f.add(word[static_cast<std::size_t>(col)], rows[static_cast<std::size_t>(t)][static_cast<std::size_t>(col)]);
            }
          }
        }
        int local = n + 1;
        for (std::uint64_t cur = start;;) {
          int weight = 0;
          for (auto e : word) weight += e.value != 0;
          if (weight > 0) local = std::min(local, weight);
          if (++cur >= stop || local == 1) break;
          // Odometer step: each wrapped digit contributes one more copy of its row (p*v = 0).
          for (int t = 0; t < digits; ++t) {
            const auto& row = rows[static_cast<std::size_t>(t)];
            for (int col = 0; col < n; ++col) {
              word[static_cast<std::size_t>(col)] = f.add(word[static_cast<std::size_t>(col)], row[static_cast<std::size_t>(col)]);
            }
            if (++coef[static_cast<std::size_t>(t)] < p) break;
            coef[static_cast<std::size_t>(t)] = 0;
          }
        }
        int cur_best = best.load();
        while (local < cur_best && !best.compare_exchange_weak(cur_best, local)) {
        }
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  const int workers = std::max(opts.workers, 1);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return best.load();
}

CodeDistances compute_distances(LinearCode& c, const DistanceOptions& opts) {
  const CodeDistances out{min_distance(c, opts), min_distance(dual_code(c), opts)};
  c.set_cached(out);
  return out;
}

bool same_code(const LinearCode& a, const LinearCode& b) {
  require_same_field(a, b);
  if (a.dimension() != b.dimension()) return false;
  FieldMatrix stacked(a.dimension() + b.dimension(), a.length());
  for (int i = 0; i < a.dimension(); ++i) {
    for (int j = 0; j < a.length(); ++j) stacked.at(i, j) = a.generator().at(i, j);
  }
  for (int i = 0; i < b.dimension(); ++i) {
    for (int j = 0; j < b.length(); ++j) stacked.at(a.dimension() + i, j) = b.generator().at(i, j);
  }
  return rank(a.field(), stacked) == a.dimension();
}

PureState state_from_code(const LinearCode& c, int k, const DistanceOptions& opts) {
  if (c.r() != 1) {
    throw Error(ErrorKind::PreconditionViolated, "state_from_code needs a prime-field code; expand it first");
  }
  const int dist = min_distance(c, opts);
  const int dual_dist = min_distance(dual_code(c), opts);
  std::string shortfall;
  if (dist < k + 1) shortfall = "minimum distance " + std::to_string(dist) + " < k+1 = " + std::to_string(k + 1);
  if (dual_dist < k + 1) {
    if (!shortfall.empty()) shortfall += "; ";
    shortfall += "dual distance " + std::to_string(dual_dist) + " < k+1 = " + std::to_string(k + 1);
  }
  if (!shortfall.empty()) throw Error(ErrorKind::HypothesisFailed, shortfall);
  const int p = c.p();
  const std::uint64_t words = saturating_pow(static_cast<std::uint64_t>(p), static_cast<unsigned>(c.dimension()));
  if (words > opts.budget) throw Error(ErrorKind::TooLarge, "code too large to expand into a state");
  PureState state(c.length(), p);
  std::vector<FieldElem> msg(static_cast<std::size_t>(c.dimension()), c.field().zero());
  for (std::uint64_t idx = 0; idx < words; ++idx) {
    std::uint64_t rest = idx;
    for (auto& m : msg) {
      m = FieldElem{static_cast<std::uint32_t>(rest % static_cast<std::uint64_t>(p))};
      rest /= static_cast<std::uint64_t>(p);
    }
    const auto word = c.encode(msg);
    Basis digits(word.size());
    std::transform(word.begin(), word.end(), digits.begin(), [](FieldElem e) { return static_cast<int>(e.value); });
    state.set_phase(digits, 0);
  }
  return state;
}

LinearCode shorten_last(const LinearCode& c) {
  const auto& f = c.field();
  const int last = c.length() - 1;
  if (last < 0) throw Error(ErrorKind::PreconditionViolated, "empty code length");
  int pivot = -1;
  for (int i = 0; i < c.dimension() && pivot < 0; ++i) {
    if (c.generator().at(i, last).value != 0) pivot = i;
  }
  if (pivot < 0) throw Error(ErrorKind::PreconditionViolated, "every codeword ends in 0");
  FieldMatrix g = c.generator();
  const FieldElem inv = f.inv(g.at(pivot, last));
  FieldMatrix out(c.dimension() - 1, last);
  int row = 0;
  for (int i = 0; i < g.rows; ++i) {
    if (i == pivot) continue;
    const FieldElem factor = f.mul(g.at(i, last), inv);
    for (int j = 0; j < last; ++j) out.at(row, j) = f.sub(g.at(i, j), f.mul(factor, g.at(pivot, j)));
    ++row;
  }
  return LinearCode(c.field_ptr(), std::move(out));
}

LinearCode puncture_last(const LinearCode& c) {
  if (c.length() < 1) throw Error(ErrorKind::PreconditionViolated, "empty code length");
  return LinearCode(c.field_ptr(), row_basis(c.field(), drop_last_column(c.generator())));
}

std::vector<int> expand_symbol(const GaloisField& field, const ConcatMaps& maps, FieldElem u, Expansion which) {
  const auto& tob = maps.basis;
  const int p = field.characteristic();
  std::vector<int> out(tob.basis.size());
  for (std::size_t i = 0; i < tob.basis.size(); ++i) {
    // Tr(u alpha_i) = b_i a_i by trace-orthogonality.
    const std::int64_t t = field.trace(field.mul(u, tob.basis[i]));
    out[i] = which == Expansion::DualWeighted
                 ? static_cast<int>(t)
                 : static_cast<int>(mod_floor(t * inverse_mod(tob.weights[i], p), p));
  }
  return out;
}

LinearCode expand_code(const LinearCode& c, const ConcatMaps& maps, Expansion which) {
  const auto& f = c.field();
  if (maps.basis.p != c.p() || maps.basis.r != c.r()) {
    throw Error(ErrorKind::FieldMismatch, "expansion basis built over a different field");
  }
  const int r = c.r();
  const auto prime = GaloisField::get(c.p(), 1);
  if (c.dimension() == 0) return LinearCode(prime, r * c.length());
  FieldMatrix out(r * c.dimension(), r * c.length());
  for (int i = 0; i < c.dimension(); ++i) {
    for (int b = 0; b < r; ++b) {
      const int row = i * r + b;
      for (int j = 0; j < c.length(); ++j) {
        const auto block = expand_symbol(f, maps, f.mul(maps.basis.basis[static_cast<std::size_t>(b)], c.generator().at(i, j)), which);
        for (int t = 0; t < r; ++t) out.at(row, j * r + t) = FieldElem{static_cast<std::uint32_t>(block[static_cast<std::size_t>(t)])};
      }
    }
  }
  return LinearCode(prime, std::move(out));
}

LinearCode reed_solomon(int p, int r, int n, int m) {
  const auto field = GaloisField::get(p, r);
  if (n < 1 || static_cast<std::uint64_t>(n) > field->size()) {
    throw Error(ErrorKind::Range, "Reed-Solomon length must lie in [1, p^r]");
  }
  if (m < 0 || m > n) throw Error(ErrorKind::Range, "Reed-Solomon dimension must lie in [0, n]");
  const auto points = field->enumeration_order();
  FieldMatrix g(m, n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) g.at(i, j) = field->pow(points[static_cast<std::size_t>(j)], static_cast<std::uint64_t>(i));
  }
  return LinearCode(field, std::move(g));
}

bool are_dual_pair(const LinearCode& a, const LinearCode& b) {
  require_same_field(a, b);
  if (a.dimension() + b.dimension() != a.length()) return false;
  const auto& f = a.field();
  for (int i = 0; i < a.dimension(); ++i) {
    for (int j = 0; j < b.dimension(); ++j) {
      FieldElem dot = f.zero();
      for (int t = 0; t < a.length(); ++t) dot = f.add(dot, f.mul(a.generator().at(i, t), b.generator().at(j, t)));
      if (dot.value != 0) return false;
    }
  }
  return true;
}

void write_code(std::ostream& out, const LinearCode& c) {
  out << c.length() << ' ' << c.dimension() << ' ' << c.p() << ' ' << c.r() << '\n';
  for (int i = 0; i < c.dimension(); ++i) {
    for (int j = 0; j < c.length(); ++j) {
      if (j) out << ' ';
      const auto digits = c.field().coeffs(c.generator().at(i, j));
      for (std::size_t t = 0; t < digits.size(); ++t) out << (t ? "," : "") << digits[t];
    }
    out << '\n';
  }
}

LinearCode read_code(std::istream& in) {
  std::vector<std::string> content;
  for (std::string line; std::getline(in, line);) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    content.push_back(line);
  }
  if (content.empty()) throw Error(ErrorKind::Parse, "empty code file");
  int n = 0, m = 0, p = 0, r = 0;
  {
    std::istringstream header(content.front());
    std::string extra;
    if (!(header >> n >> m >> p >> r) || (header >> extra)) throw Error(ErrorKind::Parse, "header must be \"n m p r\"");
  }
  if (n < 1 || m < 0 || m > n || r < 1) throw Error(ErrorKind::Parse, "header values out of range");
  if (content.size() != static_cast<std::size_t>(m) + 1) throw Error(ErrorKind::Parse, "expected m generator rows");
  std::shared_ptr<const GaloisField> field;
  try {
    field = GaloisField::get(p, r);
  } catch (const Error& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
  FieldMatrix g(m, n);
  for (int i = 0; i < m; ++i) {
    std::istringstream row(content[static_cast<std::size_t>(i) + 1]);
    int j = 0;
    for (std::string tok; row >> tok; ++j) {
      if (j >= n) throw Error(ErrorKind::Parse, "row has more than n entries");
      std::vector<int> digits;
      std::istringstream parts(tok);
      for (std::string part; std::getline(parts, part, ',');) {
        try {
          std::size_t used = 0;
          digits.push_back(std::stoi(part, &used));
          if (used != part.size()) throw Error(ErrorKind::Parse, "bad digit '" + part + "'");
        } catch (const std::logic_error&) {
          throw Error(ErrorKind::Parse, "bad digit '" + part + "'");
        }
      }
      if (static_cast<int>(digits.size()) != r) throw Error(ErrorKind::Parse, "entry needs r digits");
      for (int dgt : digits) {
        if (dgt < 0 || dgt >= p) throw Error(ErrorKind::Parse, "digit outside [0, p)");
      }
      g.at(i, j) = field->from_coeffs(digits);
    }
    if (j != n) throw Error(ErrorKind::Parse, "row needs n entries");
  }
  try {
    return LinearCode(field, std::move(g));
  } catch (const Error& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
}

LinearCode read_code_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  return read_code(in);
}

void write_code_file(const std::string& path, const LinearCode& c) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Parse, "cannot write " + path);
  write_code(out, c);
}

}  // namespace kuniform
