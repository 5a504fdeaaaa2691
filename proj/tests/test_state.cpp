#include <doctest.h>

#include <complex>
#include <numeric>
#include <sstream>

#include "kuniform/error.hpp"
#include "kuniform/matrix_construct.hpp"
#include "kuniform/rng.hpp"
#include "kuniform/state.hpp"
#include "kuniform/subsets.hpp"

using namespace kuniform;

namespace {

std::string fixture(const std::string& name) { return std::string(KUNIFORM_FIXTURES) + "/" + name; }

/// Reduced density matrices in complex doubles, compared against norm/d^k * I.
bool dense_uniform(const PureState& s, int k) {
  const int n = s.qudits(), d = s.level();
  std::complex<double> nrm = 0;
  std::map<Basis, std::complex<double>> amp;
  for (const auto& [c, a] : s.amplitudes()) {
    const auto [re, im] = evaluate(a);
    amp[c] = {re, im};
    nrm += std::norm(amp[c]);
  }
  const double target = nrm.real() / std::pow(d, k);
  for (const auto& A : k_subsets(n, k)) {
    const auto Abar = complement(n, A);
    std::map<Basis, std::map<Basis, std::complex<double>>> by_rest;  // c_Abar -> c_A -> amp
    for (const auto& [c, a] : amp) {
      Basis ca, cr;
      for (int i : A) ca.push_back(c[static_cast<std::size_t>(i)]);
      for (int i : Abar) cr.push_back(c[static_cast<std::size_t>(i)]);
      by_rest[cr][ca] = a;
    }
    int dk = 1;
    for (int i = 0; i < k; ++i) dk *= d;
    for (int x = 0; x < dk; ++x)
      for (int y = 0; y < dk; ++y) {
        Basis cx(static_cast<std::size_t>(k)), cy(static_cast<std::size_t>(k));
        for (int i = k - 1, xx = x, yy = y; i >= 0; --i, xx /= d, yy /= d) {
          cx[static_cast<std::size_t>(i)] = xx % d;
          cy[static_cast<std::size_t>(i)] = yy % d;
        }
        std::complex<double> rho = 0;
        for (const auto& [cr, row] : by_rest) {
          const auto ix = row.find(cx), iy = row.find(cy);
          if (ix != row.end() && iy != row.end()) rho += ix->second * std::conj(iy->second);
        }
        const std::complex<double> want = x == y ? target : 0.0;
        if (std::abs(rho - want) > 1e-7) return false;
      }
  }
  return true;
}

PureState random_state(SplitMix64& rng, int n, int d, bool phases_only) {
  PureState s(n, d);
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= static_cast<std::uint64_t>(d);
  const bool full = rng.below(2) == 0;
  for (std::uint64_t x = 0; x < total; ++x) {
    if (!full && rng.below(2)) continue;
    Basis c(static_cast<std::size_t>(n));
    for (int i = n - 1, y = static_cast<int>(x); i >= 0; --i, y /= d) c[static_cast<std::size_t>(i)] = y % d;
    if (phases_only) {
      s.set_phase(c, static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(d))));
    } else {
      std::vector<std::int64_t> v(static_cast<std::size_t>(d));
      for (auto& e : v) e = static_cast<std::int64_t>(rng.below(3)) - 1;
      s.set(c, CycInt(d, v));
    }
  }
  if (s.support() == 0) s.set_phase(Basis(static_cast<std::size_t>(n), 0), 0);
  return s;
}

PureState permute(const PureState& s, const std::vector<int>& perm) {
  PureState out(s.qudits(), s.level());
  for (const auto& [c, a] : s.amplitudes()) {
    Basis t(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) t[static_cast<std::size_t>(perm[i])] = c[i];
    out.set(t, a);
  }
  return out;
}

}  // namespace

TEST_CASE("5-qubit example is 2-uniform with rho_34 = 2 I") {
  const auto s = read_state_file(fixture("state_5qubit.txt"));
  CHECK(s.support() == 8);
  const auto r = verify_uniform(s, 2);
  CHECK(r.uniform);
  REQUIRE(r.norm_value);
  CHECK(*r.norm_value == 8);
  const std::vector<int> A{2, 3};
  for (int x = 0; x < 4; ++x) {
    const std::vector<int> c{x / 2, x % 2};
    const auto diag = marginal_sum(s, A, c, c);
    CHECK(zero_test(diag - from_integer(2, 2)));
    for (int y = 0; y < 4; ++y) {
      if (y == x) continue;
      const std::vector<int> c2{y / 2, y % 2};
      CHECK(zero_test(marginal_sum(s, A, c, c2)));
    }
  }
  CHECK(max_uniformity(s) == 2);
  try {
    verify_uniform(s, 3);
    FAIL("k above n/2 accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Range);
  }
}

TEST_CASE("GHZ and W states") {
  const auto ghz = read_state_file(fixture("ghz.txt"));
  CHECK(verify_uniform(ghz, 1).uniform);
  const auto w = read_state_file(fixture("w_state.txt"));
  const auto r = verify_uniform(w, 1);
  CHECK_FALSE(r.uniform);
  REQUIRE(r.failing_subset);
  CHECK(*r.failing_subset == std::vector<int>{0});
  CHECK(max_uniformity(w) == 0);
}

TEST_CASE("zero state violates the existence condition") {
  PureState s(3, 2);
  try {
    verify_uniform(s, 1);
    FAIL("zero state accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ViolatesConditionI);
  }
}

TEST_CASE("exact verifier agrees with dense density matrices") {
  SplitMix64 rng(99);
  int uniform_seen = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(3));
    const int d = 2 + static_cast<int>(rng.below(2));
    const int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n / 2)));
    PureState s(n, d);
    if (trial % 3 == 0) {
      // Known-uniform from a random witness search, sometimes perturbed.
      std::vector<int> upper(static_cast<std::size_t>(n * (n - 1) / 2));
      bool found = false;
      for (int attempt = 0; attempt < 200 && !found; ++attempt) {
        for (auto& v : upper) v = static_cast<int>(rng.below(static_cast<std::uint64_t>(d)));
        const auto H = matrix_from_upper(n, d, upper);
        found = check_certificate(H, k);
        if (found) s = state_from_matrix(make_witness(H, k, {}));
      }
      if (!found) s = random_state(rng, n, d, true);
      if (rng.below(2)) {
        Basis c(static_cast<std::size_t>(n));
        for (auto& v : c) v = static_cast<int>(rng.below(static_cast<std::uint64_t>(d)));
        s.set_phase(c, static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(d))));
      }
    } else {
      s = random_state(rng, n, d, trial % 3 == 1);
    }
    bool exact = false;
    try {
      exact = verify_uniform(s, k).uniform;
    } catch (const Error& e) {
      // Every amplitude can vanish numerically (e.g. 1 + zeta_2).
      CHECK(e.kind() == ErrorKind::ViolatesConditionI);
      CHECK(std::abs(evaluate(norm(s)).first) < 1e-9);
      continue;
    }
    uniform_seen += exact;
    CHECK(exact == dense_uniform(s, k));
  }
  CHECK(uniform_seen > 20);
}

TEST_CASE("uniformity is monotone, relabeling- and phase-invariant") {
  SplitMix64 rng(123);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 4 + static_cast<int>(rng.below(3));
    const int d = 2 + static_cast<int>(rng.below(2));
    std::vector<int> upper(static_cast<std::size_t>(n * (n - 1) / 2));
    for (auto& v : upper) v = static_cast<int>(rng.below(static_cast<std::uint64_t>(d)));
    const auto H = matrix_from_upper(n, d, upper);
    PureState s(n, d);
    for (std::uint64_t x = 0, total = static_cast<std::uint64_t>(std::pow(d, n)); x < total; ++x) {
      std::vector<int> c(static_cast<std::size_t>(n));
      for (int i = n - 1, y = static_cast<int>(x); i >= 0; --i, y /= d) c[static_cast<std::size_t>(i)] = y % d;
      s.set_phase(c, quadratic_phase(H, c));
    }
    const int kmax = max_uniformity(s);
    for (int k = 0; k <= n / 2; ++k) CHECK(verify_uniform(s, k).uniform == (k <= kmax));

    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i) std::swap(perm[static_cast<std::size_t>(i)], perm[rng.below(static_cast<std::uint64_t>(i + 1))]);
    CHECK(max_uniformity(permute(s, perm)) == kmax);

    PureState rotated(n, d);
    const CycInt phase = root_power(d, static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(d))));
    for (const auto& [c, a] : s.amplitudes()) rotated.set(c, a * phase);
    CHECK(max_uniformity(rotated) == kmax);
  }
}

TEST_CASE("reported failure does not depend on worker count") {
  SplitMix64 rng(321);
  for (int trial = 0; trial < 40; ++trial) {
    const auto s = random_state(rng, 5, 2, true);
    VerifyOptions one, many;
    many.workers = 4;
    const auto a = verify_uniform(s, 2, one);
    const auto b = verify_uniform(s, 2, many);
    CHECK(a.uniform == b.uniform);
    CHECK(a.failing_subset == b.failing_subset);
    CHECK(a.failing_pair == b.failing_pair);
  }
}

TEST_CASE("cost ceiling") {
  PureState s(4, 2);
  s.set_phase({0, 0, 0, 0}, 0);
  VerifyOptions opts;
  opts.op_ceiling = 1;
  try {
    verify_uniform(s, 2, opts);
    FAIL("ceiling ignored");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TooLarge);
  }
}

TEST_CASE("state files round-trip") {
  SplitMix64 rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = trial % 5 == 0 ? 12 : 2 + static_cast<int>(rng.below(4));
    const auto s = random_state(rng, 3, d, trial % 2 == 0);
    std::stringstream io;
    write_state(io, s);
    CHECK(read_state(io) == s);
  }
  for (const char* name : {"state_5qubit.txt", "state_8x8_d2_reference.txt", "state_2x2_d6_reference.txt"}) {
    const auto s = read_state_file(fixture(name));
    std::stringstream io;
    write_state(io, s);
    CHECK(read_state(io) == s);
  }
}

TEST_CASE("state parse errors") {
  const auto parse_kind = [](const std::string& text) {
    std::istringstream in(text);
    try {
      read_state(in);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Overflow;
  };
  CHECK(parse_kind("") == ErrorKind::Parse);
  CHECK(parse_kind("2 2\n00 ^0\n00 ^1\n") == ErrorKind::Parse);
  CHECK(parse_kind("2 2\n02 ^0\n") == ErrorKind::Parse);
  CHECK(parse_kind("2 2\n01 1 2 3\n") == ErrorKind::Parse);
  CHECK(parse_kind("2 2\n01 ^x\n") == ErrorKind::Parse);
  std::istringstream ok("# comment\n\n2 3\n0 1 ^2\n10 1 0 -1\n");
  const auto s = read_state(ok);
  CHECK(s.support() == 2);
  CHECK(s.at({0, 1}).single_root_exponent() == 2);
}
