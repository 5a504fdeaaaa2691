#include "kuniform/state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "kuniform/checked.hpp"
#include "kuniform/error.hpp"
#include "kuniform/parallel.hpp"
#include "kuniform/subsets.hpp"

namespace kuniform {

namespace {

// Histogram cells allowed per subset (pairs x level), 256 MiB of int64.
constexpr std::uint64_t kMaxAccumulatorCells = 1ull << 25;

struct Ket {
  const Basis* digits;
  const CycInt* amp;
  int exponent;  // >= 0 on the pure-phase path
};

std::uint64_t pack_digits(const Basis& c, std::span<const int> positions, int d) {
  std::uint64_t out = 0;
  for (int pos : positions) out = out * static_cast<std::uint64_t>(d) + static_cast<std::uint64_t>(c[static_cast<std::size_t>(pos)]);
  return out;
}

Basis unpack_digits(std::uint64_t value, int len, int d) {
  Basis out(static_cast<std::size_t>(len));
  for (int i = len - 1; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = static_cast<int>(value % static_cast<std::uint64_t>(d));
    value /= static_cast<std::uint64_t>(d);
  }
  return out;
}

struct SubsetFailure {
  std::uint64_t a = 0;
  std::uint64_t a2 = 0;
  bool diagonal = false;
};

// Everything verify_uniform needs per call, shared read-only by the workers.
struct Verifier {
  const PureState& state;
  int d;
  std::uint64_t dk;
  bool pure_phase;
  std::vector<Ket> kets;
  CycInt norm_value;

  // First failing pair of the subset in row-major (a, a') order.
  std::optional<SubsetFailure> check(const std::vector<int>& subset) const {
    const int n = state.qudits();
    const auto rest = complement(n, subset);
    struct Keyed {
      std::uint64_t rest_key;
      std::uint64_t a;
      std::size_t ket;
    };
    std::vector<Keyed> keyed;
    keyed.reserve(kets.size());
    for (std::size_t i = 0; i < kets.size(); ++i) {
      keyed.push_back({pack_digits(*kets[i].digits, rest, d), pack_digits(*kets[i].digits, subset, d), i});
    }
    std::sort(keyed.begin(), keyed.end(), [](const Keyed& x, const Keyed& y) {
      return x.rest_key < y.rest_key || (x.rest_key == y.rest_key && x.a < y.a);
    });

    const std::size_t cells = static_cast<std::size_t>(dk * dk * static_cast<std::uint64_t>(d));
    std::vector<std::int64_t> acc(cells, 0);
    auto cell = [&](std::uint64_t a, std::uint64_t a2) {
      return static_cast<std::size_t>((a * dk + a2) * static_cast<std::uint64_t>(d));
    };

    for (std::size_t lo = 0; lo < keyed.size();) {
      std::size_t hi = lo;
      while (hi < keyed.size() && keyed[hi].rest_key == keyed[lo].rest_key) ++hi;
      for (std::size_t x = lo; x < hi; ++x) {
        const Ket& kx = kets[keyed[x].ket];
        for (std::size_t y = lo; y < hi; ++y) {
          const Ket& ky = kets[keyed[y].ket];
          std::int64_t* slot = &acc[cell(keyed[x].a, keyed[y].a)];
          if (pure_phase) {
            ++slot[((ky.exponent - kx.exponent) % d + d) % d];
          } else {
            const CycInt term = conjugate(*kx.amp) * *ky.amp;
            for (int j = 0; j < d; ++j) slot[j] = checked_add(slot[j], term.coeff(j));
          }
        }
      }
      lo = hi;
    }

    const auto dk_signed = static_cast<std::int64_t>(dk);
    std::vector<std::int64_t> diff(static_cast<std::size_t>(d));
    for (std::uint64_t a = 0; a < dk; ++a) {
      for (std::uint64_t a2 = 0; a2 < dk; ++a2) {
        const std::int64_t* slot = &acc[cell(a, a2)];
        if (a != a2) {
          if (!zero_test(d, std::span<const std::int64_t>(slot, static_cast<std::size_t>(d)))) {
            return SubsetFailure{a, a2, false};
          }
          continue;
        }
        // d^k * diagonal - norm must vanish.
        for (int j = 0; j < d; ++j) {
          diff[static_cast<std::size_t>(j)] = checked_sub(checked_mul(dk_signed, slot[j]), norm_value.coeff(j));
        }
        if (!zero_test(d, diff)) return SubsetFailure{a, a2, true};
      }
    }
    return std::nullopt;
  }
};

void require_subset(const PureState& s, std::span<const int> subset) {
  std::vector<bool> seen(static_cast<std::size_t>(s.qudits()), false);
  for (int pos : subset) {
    if (pos < 0 || pos >= s.qudits() || seen[static_cast<std::size_t>(pos)]) {
      throw Error(ErrorKind::Shape, "subset positions must be distinct and within [0, n)");
    }
    seen[static_cast<std::size_t>(pos)] = true;
  }
}

}  // namespace

PureState::PureState(int n, int d) : n_(n), d_(d) {
  if (d < 2) throw Error(ErrorKind::InvalidLevel, "level must be >= 2");
  if (n < 1) throw Error(ErrorKind::Range, "qudit count must be >= 1");
  if (saturating_pow(static_cast<std::uint64_t>(d), static_cast<unsigned>(n)) == UINT64_MAX) {
    throw Error(ErrorKind::TooLarge, "d^n does not fit in 64 bits");
  }
}

void PureState::set(const Basis& c, const CycInt& amp) {
  if (static_cast<int>(c.size()) != n_) throw Error(ErrorKind::Shape, "basis string length != n");
  for (int digit : c) {
    if (digit < 0 || digit >= d_) throw Error(ErrorKind::Range, "basis digit outside [0, d)");
  }
  if (amp.level() != d_) throw Error(ErrorKind::LevelMismatch, "amplitude level differs from state level");
  const auto coeffs = amp.coeffs();
  if (std::all_of(coeffs.begin(), coeffs.end(), [](std::int64_t x) { return x == 0; })) {
    amps_.erase(c);
    return;
  }
  amps_.insert_or_assign(c, amp);
}

CycInt PureState::at(const Basis& c) const {
  auto it = amps_.find(c);
  return it == amps_.end() ? CycInt(d_) : it->second;
}

bool PureState::is_pure_phase() const noexcept {
  return std::all_of(amps_.begin(), amps_.end(), [](const auto& kv) { return kv.second.single_root_exponent() >= 0; });
}

CycInt norm(const PureState& s) {
  CycInt total(s.level());
  for (const auto& [c, amp] : s.amplitudes()) total += conjugate(amp) * amp;
  return total;
}

std::uint64_t verification_cost(const PureState& s, int k) {
  const std::uint64_t d = static_cast<std::uint64_t>(s.level());
  const std::uint64_t dk = saturating_pow(d, static_cast<unsigned>(k));
  const std::uint64_t support = s.support();
  const std::uint64_t join = saturating_mul(support, std::min<std::uint64_t>(support, dk));
  const std::uint64_t pairs = saturating_mul(saturating_mul(dk, dk), d);
  return saturating_mul(binomial(static_cast<unsigned>(s.qudits()), static_cast<unsigned>(k)), saturating_add(join, pairs));
}

CycInt marginal_sum(const PureState& s, std::span<const int> subset, std::span<const int> cA,
                    std::span<const int> cA2) {
  require_subset(s, subset);
  if (cA.size() != subset.size() || cA2.size() != subset.size()) {
    throw Error(ErrorKind::Shape, "c_A length must equal |A|");
  }
  std::vector<int> sorted_subset(subset.begin(), subset.end());
  std::sort(sorted_subset.begin(), sorted_subset.end());
  const auto rest = complement(s.qudits(), sorted_subset);
  auto matches = [&](const Basis& c, std::span<const int> target) {
    for (std::size_t i = 0; i < subset.size(); ++i) {
      if (c[static_cast<std::size_t>(subset[i])] != target[i]) return false;
    }
    return true;
  };
  std::map<std::uint64_t, const CycInt*> left;
  for (const auto& [c, amp] : s.amplitudes()) {
    if (matches(c, cA)) left.emplace(pack_digits(c, rest, s.level()), &amp);
  }
  CycInt total(s.level());
  for (const auto& [c, amp] : s.amplitudes()) {
    if (!matches(c, cA2)) continue;
    auto it = left.find(pack_digits(c, rest, s.level()));
    if (it != left.end()) total += conjugate(*it->second) * amp;
  }
  return total;
}

UniformityReport verify_uniform(const PureState& s, int k, const VerifyOptions& opts) {
  const int n = s.qudits();
  const int d = s.level();
  if (k < 0 || 2 * k > n) {
    throw Error(ErrorKind::Range, "k must lie in [0, n/2], got k=" + std::to_string(k) + " for n=" + std::to_string(n));
  }
  if (std::all_of(s.amplitudes().begin(), s.amplitudes().end(), [](const auto& kv) { return zero_test(kv.second); })) {
    throw Error(ErrorKind::ViolatesConditionI, "state is identically zero");
  }
  const std::uint64_t cost = verification_cost(s, k);
  if (cost > opts.op_ceiling) {
    throw Error(ErrorKind::TooLarge, "estimated " + std::to_string(cost) + " operations exceeds ceiling " +
                                         std::to_string(opts.op_ceiling));
  }
  const std::uint64_t dk = checked_pow(static_cast<std::uint64_t>(d), static_cast<unsigned>(k));
  if (saturating_mul(saturating_mul(dk, dk), static_cast<std::uint64_t>(d)) > kMaxAccumulatorCells) {
    throw Error(ErrorKind::TooLarge, "d^(2k+1) accumulator cells exceed the memory ceiling");
  }

  Verifier v{s, d, dk, s.is_pure_phase(), {}, norm(s)};
  v.kets.reserve(s.support());
  for (const auto& [c, amp] : s.amplitudes()) v.kets.push_back({&c, &amp, amp.single_root_exponent()});

  UniformityReport report;
  report.k_requested = k;
  report.norm = v.norm_value;
  if (v.pure_phase) {
    report.norm_value = static_cast<std::int64_t>(s.support());
  } else {
    const auto approx = static_cast<std::int64_t>(std::llround(evaluate(v.norm_value).first));
    if (zero_test(v.norm_value - from_integer(d, approx))) report.norm_value = approx;
  }

  const auto subsets = k_subsets(n, k);
  const std::uint64_t first = parallel_first(
      subsets.size(), opts.workers, [&](std::uint64_t i) { return v.check(subsets[i]).has_value(); }, 1);
  if (first == subsets.size()) {
    report.uniform = true;
    return report;
  }
  const auto failure = *v.check(subsets[first]);
  report.uniform = false;
  report.failing_subset = subsets[first];
  report.failing_pair = std::make_pair(unpack_digits(failure.a, k, d), unpack_digits(failure.a2, k, d));
  report.failure_reason = failure.diagonal ? "diagonal entry differs from norm/d^k" : "off-diagonal entry is nonzero";
  return report;
}

int max_uniformity(const PureState& s, const VerifyOptions& opts) {
  for (int k = s.qudits() / 2; k >= 1; --k) {
    if (verify_uniform(s, k, opts).uniform) return k;
  }
  return 0;
}

}  // namespace kuniform
