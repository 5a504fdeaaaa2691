#include <doctest.h>

#include <sstream>

#include "kuniform/error.hpp"
#include "kuniform/search.hpp"

using namespace kuniform;

TEST_CASE("exhaustive search examples") {
  SearchBudget b;
  b.mode = SearchMode::Exhaustive;
  b.max_candidates = 2;
  const auto r = search_witness(2, 2, 1, b);
  REQUIRE(r.witness);
  CHECK(r.witness->H == ZnMatrix::from_rows(2, {{0, 1}, {1, 0}}));
  CHECK(r.witness->provenance.method == WitnessMethod::Exhaustive);
  CHECK(*r.witness->provenance.candidate_index == 1);

  b.max_candidates = 64;
  const auto none = search_witness(4, 2, 2, b);
  CHECK_FALSE(none.witness);
  CHECK(none.exhaustive_negative);
  CHECK(none.candidates == 64);
}

TEST_CASE("exhaustive order is base-d over the upper triangle") {
  CHECK(candidate_upper(3, 2, SearchMode::Exhaustive, 0, 0) == std::vector<int>{0, 0, 0});
  CHECK(candidate_upper(3, 2, SearchMode::Exhaustive, 0, 1) == std::vector<int>{0, 0, 1});
  CHECK(candidate_upper(3, 2, SearchMode::Exhaustive, 0, 4) == std::vector<int>{1, 0, 0});
  CHECK(candidate_upper(3, 3, SearchMode::Exhaustive, 0, 26) == std::vector<int>{2, 2, 2});
  CHECK(candidate_space(4, 2) == 64);
  CHECK(candidate_space(7, 2) == 1u << 21);
}

TEST_CASE("budget validation") {
  SearchBudget b;
  b.mode = SearchMode::Exhaustive;
  b.max_candidates = 63;
  try {
    search_witness(4, 2, 2, b);
    FAIL("undersized exhaustive budget accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BudgetMalformed);
  }
  b.max_candidates = 0;
  CHECK_THROWS_AS(search_witness(4, 2, 1, b), Error);
  b.max_candidates = 10;
  CHECK_THROWS_AS(search_witness(4, 2, 3, b), Error);
}

TEST_CASE("random search is reproducible across worker counts") {
  for (auto [n, d, k] : std::vector<std::tuple<int, int, int>>{{6, 2, 3}, {5, 3, 2}, {5, 4, 2}, {6, 3, 3}, {5, 9, 2}}) {
    for (std::uint64_t seed : {0u, 7u, 99u}) {
      SearchBudget b;
      b.seed = seed;
      b.max_candidates = 1'000'000;
      const auto one = search_witness(n, d, k, b, 1);
      REQUIRE(one.witness);
      CHECK(check_certificate(one.witness->H, k));
      for (int workers : {2, 3, 8}) {
        const auto many = search_witness(n, d, k, b, workers);
        REQUIRE(many.witness);
        CHECK(*many.witness == *one.witness);
        CHECK(many.candidates == one.candidates);
      }
      // The winning index regenerates the witness.
      const auto upper = candidate_upper(n, d, SearchMode::Random, seed, *one.witness->provenance.candidate_index);
      CHECK(matrix_from_upper(n, d, upper) == one.witness->H);
    }
  }
}

TEST_CASE("small table scans") {
  const auto d2 = table_scan(2, 2, 6, 1'000'000, 0);
  std::vector<int> ks;
  for (const auto& c : d2) ks.push_back(c.best_k);
  CHECK(ks == std::vector<int>{1, 1, 1, 2, 3});
  CHECK(d2[2].exhaustive_above);  // n = 4: all 64 candidates fail at k = 2
  for (const auto& c : d2) {
    REQUIRE(c.witness);
    CHECK(verify_uniform(state_from_matrix(*c.witness), c.best_k).uniform);
  }
  const auto single = table_scan(2, 2, 2, 10, 0);
  REQUIRE(single.size() == 1);
  CHECK(single[0].best_k == 1);
}

TEST_CASE("registry round-trip rebuilds the table") {
  std::stringstream reg;
  std::vector<SymWitness> emitted;
  table_scan(3, 2, 5, 100'000, 5, 1, [&](const SymWitness& w) {
    append_registry(reg, w);
    emitted.push_back(w);
  });
  const auto records = read_registry(reg);
  CHECK(records == emitted);
  const auto cells = table_from_registry(records, 3);
  std::vector<int> ks;
  for (const auto& c : cells) ks.push_back(c.best_k);
  CHECK(ks == std::vector<int>{1, 1, 2, 2});
  CHECK(table_from_registry(records, 2).empty());

  std::istringstream bad("4 2 1 random 0 5 1 1\n");
  CHECK_THROWS_AS(read_registry(bad), Error);
}
