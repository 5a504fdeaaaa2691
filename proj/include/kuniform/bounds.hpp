#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>

namespace kuniform {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// 1 - C(n,k) (1 - prod_{i<k} (1 - p^{-(n-k-i)})), exact. Positive means a
/// witness matrix exists for (n, k) at prime level p.
/// Requires k >= 1 and n - 2k + 1 >= 1.
Rational np_lower_bound(int n, int k, int p);

/// C(n,k) (p^k - 1) <= (p-1) p^{n-k}, exact integers.
bool counting_condition(int n, int k, int p);

/// C(n, n/2) + 1. Throws Range on odd or small n.
BigInt prime_level_threshold(int n);

/// d-ary entropy on [0, 1], with H_d(0) = 0 and H_d(1) = log_d(d-1).
double entropy(int d, double x);

/// Root in (0, 1/2) of H_2(x) - (1 - 2x) log2 p.
double lambda_existence(int p, double tol = 1e-9);

/// H_p^{-1}(1/2) on (0, 1 - 1/p).
double lambda_selfdual(int p, double tol = 1e-9);

struct ConstructiveBound {
  double value = 0;
  int t = 1;
};

/// max over t in [1, 8] of (1/2t)(1/2 - 1/(p^t - 1)); the smallest t wins ties.
ConstructiveBound lambda_constructive(int p);

/// Half-up rounding to `places` decimals.
double round_places(double x, int places);

struct BoundReport {
  int p = 0;
  std::optional<int> n;
  std::optional<int> k;
  std::optional<Rational> np_lower_bound;
  std::optional<bool> counting_condition_holds;
  std::optional<BigInt> prime_threshold;
  double tolerance = 1e-9;
  double lambda_existence = 0;
  double lambda_selfdual = 0;
  ConstructiveBound lambda_constructive;
};

/// Fills the (n, k) fields when both are given and in range; the lambda fields always.
BoundReport make_bound_report(int p, std::optional<int> n, std::optional<int> k, double tol = 1e-9);

}  // namespace kuniform
