#include "kuniform/bounds.hpp"

#include <cmath>
#include <string>

#include "kuniform/error.hpp"
#include "kuniform/modular_linalg.hpp"

namespace kuniform {

namespace {

BigInt big_binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt out = 1;
  for (int i = 1; i <= k; ++i) {
    out *= n - k + i;
    out /= i;
  }
  return out;
}

void require_prime(int p) {
  if (p < 2 || !is_prime(p)) throw Error(ErrorKind::Range, "p must be prime, got " + std::to_string(p));
}

void require_nk(int n, int k) {
  if (k < 1 || n - 2 * k + 1 < 1) {
    throw Error(ErrorKind::Range, "need 1 <= k and n - 2k + 1 >= 1, got n=" + std::to_string(n) +
                                      " k=" + std::to_string(k));
  }
}

template <typename F>
double bisect(F&& f, double lo, double hi, double tol) {
  if (!(tol > 0)) throw Error(ErrorKind::Range, "tolerance must be positive");
  double flo = f(lo);
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

Rational np_lower_bound(int n, int k, int p) {
  require_prime(p);
  require_nk(n, k);
  Rational prod = 1;
  for (int i = 0; i < k; ++i) {
    const BigInt denom = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(n - k - i));
    prod *= Rational(denom - 1, denom);
  }
  return Rational(1) - Rational(big_binomial(n, k)) * (Rational(1) - prod);
}

bool counting_condition(int n, int k, int p) {
  require_prime(p);
  require_nk(n, k);
  const BigInt lhs = big_binomial(n, k) * (boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(k)) - 1);
  const BigInt rhs = BigInt(p - 1) * boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(n - k));
  return lhs <= rhs;
}

BigInt prime_level_threshold(int n) {
  if (n < 2 || n % 2 != 0) throw Error(ErrorKind::Range, "n must be even and >= 2, got " + std::to_string(n));
  return big_binomial(n, n / 2) + 1;
}

double entropy(int d, double x) {
  if (d < 2) throw Error(ErrorKind::Range, "entropy base must be >= 2");
  if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorKind::Range, "entropy argument must lie in [0, 1]");
  const double ld = std::log(static_cast<double>(d));
  double h = x * std::log(static_cast<double>(d - 1));
  if (x > 0) h -= x * std::log(x);
  if (x < 1) h -= (1 - x) * std::log(1 - x);
  return h / ld;
}

double lambda_existence(int p, double tol) {
  require_prime(p);
  const double lp = std::log2(static_cast<double>(p));
  return bisect([&](double x) { return entropy(2, x) - (1 - 2 * x) * lp; }, 0.0, 0.5, tol);
}

double lambda_selfdual(int p, double tol) {
  require_prime(p);
  return bisect([&](double x) { return entropy(p, x) - 0.5; }, 0.0, 1.0 - 1.0 / p, tol);
}

ConstructiveBound lambda_constructive(int p) {
  require_prime(p);
  ConstructiveBound best{-1.0, 1};
  for (int t = 1; t <= 8; ++t) {
    const double v = (0.5 - 1.0 / (std::pow(static_cast<double>(p), t) - 1.0)) / (2.0 * t);
    if (v > best.value) best = {v, t};
  }
  return best;
}

double round_places(double x, int places) {
  const double scale = std::pow(10.0, places);
  return std::floor(x * scale + 0.5) / scale;
}

BoundReport make_bound_report(int p, std::optional<int> n, std::optional<int> k, double tol) {
  require_prime(p);
  BoundReport r;
  r.p = p;
  r.n = n;
  r.k = k;
  r.tolerance = tol;
  if (n && k) {
    r.np_lower_bound = np_lower_bound(*n, *k, p);
    r.counting_condition_holds = counting_condition(*n, *k, p);
  }
  if (n && *n >= 2 && *n % 2 == 0) r.prime_threshold = prime_level_threshold(*n);
  r.lambda_existence = lambda_existence(p, tol);
  r.lambda_selfdual = lambda_selfdual(p, tol);
  r.lambda_constructive = lambda_constructive(p);
  return r;
}

}  // namespace kuniform
