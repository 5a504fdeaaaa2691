#include "kuniform/matrix_construct.hpp"

#include <array>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "kuniform/checked.hpp"
#include "kuniform/error.hpp"
#include "kuniform/parallel.hpp"
#include "kuniform/subsets.hpp"

namespace kuniform {

namespace {

constexpr int kMaxQudits = 32;

void require_witness_shape(const ZnMatrix& H, int k) {
  if (!H.is_square()) throw Error(ErrorKind::MalformedWitness, "matrix is not square");
  if (!H.is_symmetric()) throw Error(ErrorKind::MalformedWitness, "matrix is not symmetric");
  if (!H.has_zero_diagonal()) throw Error(ErrorKind::MalformedWitness, "diagonal is not zero");
  if (H.rows() > kMaxQudits) throw Error(ErrorKind::TooLarge, "at most 32 qudits supported");
  if (k < 1 || 2 * k > H.rows()) throw Error(ErrorKind::Range, "k must lie in [1, n/2]");
}

}  // namespace

std::string_view to_string(WitnessMethod m) {
  switch (m) {
    case WitnessMethod::Exhaustive: return "exhaustive";
    case WitnessMethod::Random: return "random";
    case WitnessMethod::Fixture: return "fixture";
  }
  return "fixture";
}

WitnessMethod parse_witness_method(std::string_view text) {
  if (text == "exhaustive") return WitnessMethod::Exhaustive;
  if (text == "random") return WitnessMethod::Random;
  if (text == "fixture") return WitnessMethod::Fixture;
  throw Error(ErrorKind::Parse, "unknown witness method '" + std::string(text) + "'");
}

UpperTri upper_triangle(const ZnMatrix& H) {
  UpperTri out{H.rows(), H.modulus(), {}};
  for (int i = 0; i < H.rows(); ++i) {
    for (int j = i + 1; j < H.cols(); ++j) out.entries.push_back(H.at(i, j));
  }
  return out;
}

ZnMatrix matrix_from_upper(int n, int d, std::span<const int> entries) {
  if (entries.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2) {
    throw Error(ErrorKind::Shape, "upper triangle needs n(n-1)/2 entries");
  }
  ZnMatrix H(d, n, n);
  std::size_t idx = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int v = entries[idx++];
      if (v < 0 || v >= d) throw Error(ErrorKind::Range, "entry outside [0, d)");
      H.set(i, j, v);
      H.set(j, i, v);
    }
  }
  return H;
}

CertificateChecker::CertificateChecker(int n, int d, int k)
    : n_(n), d_(d), k_(k), prime_(is_prime(d)), subsets_(k_subsets(n, k)) {
  if (d < 2) throw Error(ErrorKind::InvalidLevel, "level must be >= 2");
  if (n > kMaxQudits) throw Error(ErrorKind::TooLarge, "at most 32 qudits supported");
  if (k < 1 || 2 * k > n) throw Error(ErrorKind::Range, "k must lie in [1, n/2]");
  for (const auto& a : subsets_) complements_.push_back(complement(n, a));
  b_choices_ = k_subsets(n - k, k);
  if (prime_) {
    inverse_.assign(static_cast<std::size_t>(d), 0);
    for (int x = 1; x < d; ++x) inverse_[static_cast<std::size_t>(x)] = static_cast<int>(inverse_mod(x, d));
  }
}

bool CertificateChecker::subset_passes_prime(std::span<const int> H, std::size_t i) const {
  const auto& rows = subsets_[i];
  const auto& cols = complements_[i];
  const int r = k_;
  const int c = static_cast<int>(cols.size());
  std::array<int, kMaxQudits * kMaxQudits> a{};
  for (int x = 0; x < r; ++x) {
    for (int y = 0; y < c; ++y) {
      a[static_cast<std::size_t>(x * c + y)] = H[static_cast<std::size_t>(rows[static_cast<std::size_t>(x)] * n_ + cols[static_cast<std::size_t>(y)])];
    }
  }
  int rank = 0;
  for (int col = 0; col < c && rank < r; ++col) {
    int pivot = -1;
    for (int x = rank; x < r; ++x) {
      if (a[static_cast<std::size_t>(x * c + col)] != 0) {
        pivot = x;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != rank) {
      for (int y = col; y < c; ++y) std::swap(a[static_cast<std::size_t>(pivot * c + y)], a[static_cast<std::size_t>(rank * c + y)]);
    }
    const int inv = inverse_[static_cast<std::size_t>(a[static_cast<std::size_t>(rank * c + col)])];
    for (int x = rank + 1; x < r; ++x) {
      const int f = a[static_cast<std::size_t>(x * c + col)] * inv % d_;
      if (f == 0) continue;
      for (int y = col; y < c; ++y) {
        auto& slot = a[static_cast<std::size_t>(x * c + y)];
        slot = ((slot - f * a[static_cast<std::size_t>(rank * c + y)]) % d_ + d_) % d_;
      }
    }
    ++rank;
  }
  return rank == r;
}

bool CertificateChecker::subset_passes_general(std::span<const int> H, std::size_t i) const {
  const auto& rows = subsets_[i];
  const auto& rest = complements_[i];
  std::array<std::int64_t, kMaxQudits * kMaxQudits / 4> block{};
  const std::span<std::int64_t> view(block.data(), static_cast<std::size_t>(k_ * k_));
  for (const auto& choice : b_choices_) {
    for (int x = 0; x < k_; ++x) {
      for (int y = 0; y < k_; ++y) {
        const int col = rest[static_cast<std::size_t>(choice[static_cast<std::size_t>(y)])];
        block[static_cast<std::size_t>(x * k_ + y)] = H[static_cast<std::size_t>(rows[static_cast<std::size_t>(x)] * n_ + col)];
      }
    }
    if (gcd_nonneg(det_mod_d_inplace(view, k_, d_), d_) == 1) return true;
  }
  return false;
}

bool CertificateChecker::subset_passes(std::span<const int> H, std::size_t i) const {
  return prime_ ? subset_passes_prime(H, i) : subset_passes_general(H, i);
}

bool CertificateChecker::passes(std::span<const int> H) const {
  for (std::size_t i = 0; i < subsets_.size(); ++i) {
    if (!subset_passes(H, i)) return false;
  }
  return true;
}

bool check_certificate_prime(const ZnMatrix& H, int k, int workers) {
  require_witness_shape(H, k);
  if (!is_prime(H.modulus())) {
    throw Error(ErrorKind::UseDetPath, "composite modulus; use check_certificate_general");
  }
  const CertificateChecker checker(H.rows(), H.modulus(), k);
  const auto count = checker.subset_count();
  return parallel_first(count, workers, [&](std::uint64_t i) { return !checker.subset_passes_prime(H.entries(), i); }, 1) ==
         count;
}

bool check_certificate_general(const ZnMatrix& H, int k, int workers) {
  require_witness_shape(H, k);
  const CertificateChecker checker(H.rows(), H.modulus(), k);
  const auto count = checker.subset_count();
  return parallel_first(count, workers, [&](std::uint64_t i) { return !checker.subset_passes_general(H.entries(), i); }, 1) ==
         count;
}

bool check_certificate(const ZnMatrix& H, int k, int workers) {
  return is_prime(H.modulus()) ? check_certificate_prime(H, k, workers) : check_certificate_general(H, k, workers);
}

int quadratic_phase(const ZnMatrix& H, std::span<const int> c) {
  if (!H.is_square() || static_cast<int>(c.size()) != H.rows()) {
    throw Error(ErrorKind::Shape, "basis string length must equal matrix size");
  }
  const std::int64_t d = H.modulus();
  std::int64_t acc = 0;
  for (int i = 0; i < H.rows(); ++i) {
    const std::int64_t ci = mod_floor(c[static_cast<std::size_t>(i)], d);
    if (ci == 0) continue;
    for (int j = i + 1; j < H.cols(); ++j) {
      acc = (acc + H.at(i, j) * ci % d * mod_floor(c[static_cast<std::size_t>(j)], d)) % d;
    }
  }
  return static_cast<int>(acc);
}

SymWitness make_witness(const ZnMatrix& H, int k, Provenance provenance) {
  require_witness_shape(H, k);
  if (!check_certificate(H, k)) {
    throw Error(ErrorKind::MalformedWitness, "certificate check fails for k=" + std::to_string(k));
  }
  return SymWitness{H.rows(), H.modulus(), H, k, provenance};
}

PureState state_from_matrix(const SymWitness& w, std::uint64_t max_kets) {
  const std::uint64_t kets = saturating_pow(static_cast<std::uint64_t>(w.d), static_cast<unsigned>(w.n));
  if (kets > max_kets) {
    throw Error(ErrorKind::TooLarge, "d^n = " + std::to_string(kets) + " kets above ceiling " + std::to_string(max_kets));
  }
  PureState state(w.n, w.d);
  Basis c(static_cast<std::size_t>(w.n), 0);
  for (std::uint64_t idx = 0; idx < kets; ++idx) {
    state.set_phase(c, quadratic_phase(w.H, c));
    for (int pos = w.n - 1; pos >= 0; --pos) {
      if (++c[static_cast<std::size_t>(pos)] < w.d) break;
      c[static_cast<std::size_t>(pos)] = 0;
    }
  }
  return state;
}

void write_witness(std::ostream& out, const SymWitness& w) {
  out << w.n << ' ' << w.d << ' ' << w.k << '\n';
  for (int i = 0; i < w.n; ++i) {
    for (int j = 0; j < w.n; ++j) out << (j ? " " : "") << w.H.at(i, j);
    out << '\n';
  }
  out << "# method=" << to_string(w.provenance.method);
  if (w.provenance.seed) out << " seed=" << *w.provenance.seed;
  if (w.provenance.candidate_index) out << " index=" << *w.provenance.candidate_index;
  out << '\n';
}

SymWitness read_witness(std::istream& in) {
  std::string line;
  std::vector<std::string> content;
  std::string provenance_line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      if (line.find("method=") != std::string::npos) provenance_line = line.substr(first + 1);
      continue;
    }
    content.push_back(line);
  }
  if (content.empty()) throw Error(ErrorKind::Parse, "empty witness file");
  int n = 0, d = 0, k = 0;
  {
    std::istringstream header(content.front());
    std::string extra;
    if (!(header >> n >> d >> k) || (header >> extra)) throw Error(ErrorKind::Parse, "header must be \"n d k\"");
  }
  if (n < 1 || d < 2) throw Error(ErrorKind::Parse, "header needs n >= 1 and d >= 2");
  if (content.size() != static_cast<std::size_t>(n) + 1) throw Error(ErrorKind::Parse, "expected n matrix rows");
  std::vector<std::vector<std::int64_t>> rows;
  for (int i = 0; i < n; ++i) {
    std::istringstream row(content[static_cast<std::size_t>(i) + 1]);
    std::vector<std::int64_t> values;
    for (std::int64_t v; row >> v;) {
      if (v < 0 || v >= d) throw Error(ErrorKind::Parse, "matrix entry outside [0, d)");
      values.push_back(v);
    }
    if (!row.eof() || values.size() != static_cast<std::size_t>(n)) throw Error(ErrorKind::Parse, "row needs n integers");
    rows.push_back(std::move(values));
  }
  Provenance prov;
  std::istringstream tags(provenance_line);
  for (std::string tag; tags >> tag;) {
    const auto eq = tag.find('=');
    if (eq == std::string::npos) continue;
    const auto key = tag.substr(0, eq);
    const auto value = tag.substr(eq + 1);
    try {
      if (key == "method") prov.method = parse_witness_method(value);
      if (key == "seed") prov.seed = std::stoull(value);
      if (key == "index") prov.candidate_index = std::stoull(value);
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::Parse, "bad provenance tag '" + tag + "'");
    }
  }
  return make_witness(ZnMatrix::from_rows(d, rows), k, prov);
}

SymWitness read_witness_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  return read_witness(in);
}

void write_witness_file(const std::string& path, const SymWitness& w) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Parse, "cannot write " + path);
  write_witness(out, w);
}

}  // namespace kuniform
