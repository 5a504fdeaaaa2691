#include <doctest.h>

#include <numeric>
#include <sstream>

#include "kuniform/error.hpp"
#include "kuniform/matrix_construct.hpp"
#include "kuniform/rng.hpp"

using namespace kuniform;

namespace {

std::string fixture(const std::string& name) { return std::string(KUNIFORM_FIXTURES) + "/" + name; }

ZnMatrix random_symmetric(SplitMix64& rng, int n, int d) {
  std::vector<int> upper(static_cast<std::size_t>(n * (n - 1) / 2));
  for (auto& v : upper) v = static_cast<int>(rng.below(static_cast<std::uint64_t>(d)));
  return matrix_from_upper(n, d, upper);
}

/// Exponent of every reference ket equals the generated one after reduction mod d.
bool same_phases(const PureState& a, const PureState& b) {
  if (a.qudits() != b.qudits() || a.level() != b.level() || a.support() != b.support()) return false;
  for (const auto& [c, amp] : a.amplitudes()) {
    const auto other = b.at(c);
    if (!zero_test(amp - other)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("fixture witnesses pass and reproduce the reference states") {
  const std::vector<std::tuple<const char*, const char*, int>> cases = {
      {"witness_2x2_d4.txt", "state_2x2_d4_reference.txt", 1},
      {"witness_2x2_d6.txt", "state_2x2_d6_reference.txt", 1},
      {"witness_6x6_d2.txt", "state_6x6_d2_reference.txt", 3},
      {"witness_8x8_d2.txt", "state_8x8_d2_reference.txt", 3},
  };
  for (const auto& [wname, sname, k] : cases) {
    CAPTURE(wname);
    const auto w = read_witness_file(fixture(wname));
    CHECK(w.k == k);
    CHECK(check_certificate(w.H, k));
    const auto s = state_from_matrix(w);
    CHECK(same_phases(s, read_state_file(fixture(sname))));
    CHECK(verify_uniform(s, k).uniform);
  }
}

TEST_CASE("certificate examples") {
  const auto swap2 = ZnMatrix::from_rows(2, {{0, 1}, {1, 0}});
  CHECK(check_certificate_prime(swap2, 1));
  CHECK(check_certificate_general(ZnMatrix::from_rows(4, {{0, 1}, {1, 0}}), 1));
  CHECK(check_certificate_general(ZnMatrix::from_rows(6, {{0, 1}, {1, 0}}), 1));
  CHECK_FALSE(check_certificate_general(ZnMatrix::from_rows(6, {{0, 2}, {2, 0}}), 1));
  CHECK_FALSE(check_certificate(ZnMatrix::from_rows(2, {{0, 0}, {0, 0}}), 1));
  try {
    check_certificate_prime(ZnMatrix::from_rows(4, {{0, 1}, {1, 0}}), 1);
    FAIL("composite modulus accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UseDetPath);
  }
  try {
    check_certificate(ZnMatrix::from_rows(2, {{0, 1}, {0, 0}}), 1);
    FAIL("asymmetric matrix accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MalformedWitness);
  }
  try {
    check_certificate(ZnMatrix::from_rows(2, {{1, 1}, {1, 0}}), 1);
    FAIL("nonzero diagonal accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MalformedWitness);
  }
  CHECK_THROWS_AS(check_certificate(swap2, 2), Error);
}

TEST_CASE("quadratic phase") {
  const auto H = ZnMatrix::from_rows(3, {{0, 1, 2}, {1, 0, 1}, {2, 1, 0}});
  CHECK(quadratic_phase(H, std::vector<int>{1, 1, 1}) == (1 + 2 + 1) % 3);
  CHECK(quadratic_phase(H, std::vector<int>{2, 1, 0}) == 2);
  CHECK(quadratic_phase(H, std::vector<int>{0, 0, 0}) == 0);
}

TEST_CASE("certificate soundness on random witnesses") {
  SplitMix64 rng(4242);
  for (int n = 4; n <= 6; ++n)
    for (int d : {2, 3})
      for (int k : {1, 2}) {
        CAPTURE(n);
        CAPTURE(d);
        CAPTURE(k);
        int found = 0;
        for (int attempt = 0; attempt < 200000 && found < 50; ++attempt) {
          const auto H = random_symmetric(rng, n, d);
          if (!check_certificate(H, k)) continue;
          ++found;
          const auto s = state_from_matrix(make_witness(H, k, {}));
          REQUIRE(verify_uniform(s, k).uniform);
        }
        // No 4 x 4 binary matrix certifies k = 2.
        CHECK(found == (n == 4 && d == 2 && k == 2 ? 0 : 50));
      }
}

TEST_CASE("rank and invertible-block certificates agree at prime level") {
  SplitMix64 rng(777);
  for (int p : {2, 3, 5}) {
    for (int n = 2; n <= 6; ++n) {
      int agree = 0, passes = 0;
      for (int trial = 0; trial < 1000; ++trial) {
        const int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n / 2)));
        const auto H = random_symmetric(rng, n, p);
        const bool a = check_certificate_prime(H, k);
        const bool b = check_certificate_general(H, k);
        agree += a == b;
        passes += a;
      }
      CAPTURE(p);
      CAPTURE(n);
      CHECK(agree == 1000);
      CHECK(passes > 0);
    }
  }
}

TEST_CASE("certificate is invariant under simultaneous permutation") {
  SplitMix64 rng(888);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(4));
    const int d = std::vector<int>{2, 3, 4, 6}[rng.below(4)];
    const int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n / 2)));
    const auto H = random_symmetric(rng, n, d);
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i) std::swap(perm[static_cast<std::size_t>(i)], perm[rng.below(static_cast<std::uint64_t>(i + 1))]);
    CHECK(check_certificate(H, k) == check_certificate(H.submatrix(perm, perm), k));
  }
}

TEST_CASE("checker object matches the free functions") {
  SplitMix64 rng(999);
  for (int d : {2, 3, 4, 9}) {
    const CertificateChecker checker(5, d, 2);
    for (int trial = 0; trial < 300; ++trial) {
      const auto H = random_symmetric(rng, 5, d);
      CHECK(checker.passes(H.entries()) == check_certificate(H, 2));
    }
  }
}

TEST_CASE("witness files round-trip and are re-checked on load") {
  SplitMix64 rng(31);
  int written = 0;
  for (int trial = 0; trial < 2000 && written < 30; ++trial) {
    const int d = 2 + static_cast<int>(rng.below(5));
    const auto H = random_symmetric(rng, 4, d);
    if (!check_certificate(H, 1)) continue;
    Provenance prov{WitnessMethod::Random, rng.next(), rng.below(1000)};
    const auto w = make_witness(H, 1, prov);
    std::stringstream io;
    write_witness(io, w);
    CHECK(read_witness(io) == w);
    ++written;
  }
  CHECK(written == 30);
  std::istringstream bad("2 2 1\n0 0\n0 0\n# method=fixture\n");
  try {
    read_witness(bad);
    FAIL("failing certificate accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MalformedWitness);
  }
  const auto upper = upper_triangle(read_witness_file(fixture("witness_6x6_d2.txt")).H);
  CHECK(upper.entries.size() == 15);
  CHECK(upper.entries[0] == 1);
}
