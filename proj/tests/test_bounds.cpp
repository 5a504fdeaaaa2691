#include <doctest.h>

#include "kuniform/bounds.hpp"
#include "kuniform/error.hpp"

using namespace kuniform;

TEST_CASE("np lower bound examples") {
  CHECK(np_lower_bound(16, 3, 2) > 0);
  CHECK(np_lower_bound(4, 2, 7) > 0);
  CHECK(np_lower_bound(4, 2, 7) == Rational(13, 343));
  CHECK(np_lower_bound(8, 3, 2) == Rational(-5375, 512));
  // Only the sign is informative at (6, 3, 2); the value is exact either way.
  CHECK(np_lower_bound(6, 3, 2) < 0);
  CHECK_THROWS_AS(np_lower_bound(4, 3, 2), Error);
  CHECK_THROWS_AS(np_lower_bound(4, 0, 2), Error);
  CHECK_THROWS_AS(np_lower_bound(4, 1, 4), Error);
}

TEST_CASE("first n with N_2(n, k) > 0") {
  const auto first_positive = [](int k, int p = 2) {
    for (int n = 2 * k; n < 200; ++n)
      if (np_lower_bound(n, k, p) > 0) return n;
    return -1;
  };
  CHECK(first_positive(3, 3) == 10);
  CHECK(first_positive(3, 5) == 8);
  CHECK(first_positive(3) == 15);
  CHECK(first_positive(4) == 21);
  CHECK(first_positive(5) == 26);
}

TEST_CASE("counting condition") {
  CHECK(counting_condition(2, 1, 2));
  CHECK_FALSE(counting_condition(8, 3, 2));
  CHECK(counting_condition(20, 3, 2));
}

TEST_CASE("counting condition implies a positive bound") {
  int holds = 0;
  for (int p : {2, 3, 5, 7})
    for (int n = 2; n <= 24; ++n)
      for (int k = 1; 2 * k <= n; ++k) {
        if (!counting_condition(n, k, p)) continue;
        ++holds;
        CAPTURE(n);
        CAPTURE(k);
        CAPTURE(p);
        // k = 1 with equality leaves no slack: C(n,1)(p-1) = (p-1)p^{n-1} forces n = p = 2.
        if (n == 2 && k == 1 && p == 2) {
          CHECK(np_lower_bound(n, k, p) == 0);
        } else {
          CHECK(np_lower_bound(n, k, p) > 0);
        }
      }
  CHECK(holds > 50);
}

TEST_CASE("prime threshold") {
  CHECK(prime_level_threshold(2) == 3);
  CHECK(prime_level_threshold(4) == 7);
  CHECK(prime_level_threshold(6) == 21);
  CHECK_THROWS_AS(prime_level_threshold(5), Error);
}

TEST_CASE("entropy") {
  CHECK(entropy(2, 0.5) == doctest::Approx(1.0));
  CHECK(entropy(2, 0.0) == 0.0);
  CHECK(entropy(2, 0.1705) == doctest::Approx(1 - 2 * 0.1705).epsilon(2e-3));
  CHECK(entropy(3, 2.0 / 3.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(entropy(2, 1.5), Error);
}

TEST_CASE("lambda bounds") {
  const std::vector<int> primes{2, 3, 5, 7, 11, 13, 17};
  const std::vector<double> existence{0.1705, 0.2461, 0.3081, 0.3360, 0.3634, 0.3714, 0.3821};
  const std::vector<double> selfdual{0.110, 0.159, 0.210, 0.237, 0.268, 0.278, 0.293};
  const std::vector<double> constructive{0.060, 0.094, 0.125, 0.167, 0.2, 0.208, 0.219};
  const std::vector<int> ts{3, 2, 1, 1, 1, 1, 1};
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const int p = primes[i];
    CAPTURE(p);
    const double e = lambda_existence(p);
    const double s = lambda_selfdual(p);
    const auto c = lambda_constructive(p);
    CHECK(std::abs(e - existence[i]) <= 1e-3);
    CHECK(std::abs(s - selfdual[i]) <= 1e-3);
    CHECK(round_places(c.value, 3) == doctest::Approx(constructive[i]).epsilon(1e-12));
    CHECK(c.t == ts[i]);
    CHECK(c.value < s);
    CHECK(s < e);
    CHECK(e < 0.5);
  }
  CHECK(std::abs(lambda_existence(2, 1e-3) - lambda_existence(2, 1e-12)) <= 1e-3);
}

TEST_CASE("bound report") {
  const auto r = make_bound_report(7, 4, 2);
  CHECK(*r.prime_threshold == 7);
  CHECK(*r.counting_condition_holds);
  CHECK(*r.np_lower_bound > 0);
  const auto lam = make_bound_report(2, std::nullopt, std::nullopt);
  CHECK_FALSE(lam.np_lower_bound);
  CHECK(lam.lambda_constructive.t == 3);
}
