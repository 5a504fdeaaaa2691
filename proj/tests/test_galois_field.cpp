#include <doctest.h>

#include "kuniform/error.hpp"
#include "kuniform/galois_field.hpp"
#include "kuniform/rng.hpp"

using namespace kuniform;

namespace {

const std::vector<std::pair<int, int>> kFields = {{2, 1}, {3, 1}, {2, 2}, {2, 3}, {3, 2}, {2, 4}, {5, 2}, {7, 2}, {3, 3}};

}  // namespace

TEST_CASE("field axioms") {
  for (auto [p, r] : kFields) {
    const auto f = GaloisField::get(p, r);
    CAPTURE(p);
    CAPTURE(r);
    const std::uint32_t q = f->size();
    for (std::uint32_t a = 0; a < q; ++a) {
      const FieldElem x{a};
      CHECK(f->add(x, f->neg(x)) == f->zero());
      CHECK(f->mul(x, f->one()) == x);
      if (a != 0) CHECK(f->mul(x, f->inv(x)) == f->one());
      CHECK(f->pow(x, q) == x);
      for (std::uint32_t b = 0; b < q; b += 1 + q / 16) {
        const FieldElem y{b};
        CHECK(f->mul(x, y) == f->mul(y, x));
        CHECK(f->sub(f->add(x, y), y) == x);
        for (std::uint32_t c = 0; c < q; c += 1 + q / 8) {
          const FieldElem z{c};
          CHECK(f->mul(x, f->add(y, z)) == f->add(f->mul(x, y), f->mul(x, z)));
        }
      }
    }
  }
}

TEST_CASE("primitive element and enumeration order") {
  for (auto [p, r] : kFields) {
    const auto f = GaloisField::get(p, r);
    const auto order = f->enumeration_order();
    REQUIRE(order.size() == f->size());
    CHECK(order[0] == f->zero());
    CHECK(order[1] == f->one());
    std::vector<bool> seen(f->size(), false);
    for (auto x : order) seen[x.value] = true;
    CHECK(std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }));
  }
  CHECK_THROWS_AS(GaloisField::get(4, 1), Error);
}

TEST_CASE("trace is F_p-linear onto F_p") {
  for (auto [p, r] : kFields) {
    const auto f = GaloisField::get(p, r);
    std::vector<int> counts(static_cast<std::size_t>(p), 0);
    for (std::uint32_t a = 0; a < f->size(); ++a) {
      const int t = f->trace(FieldElem{a});
      REQUIRE(t >= 0);
      REQUIRE(t < p);
      ++counts[static_cast<std::size_t>(t)];
      const FieldElem b{(a * 7 + 3) % f->size()};
      CHECK(f->trace(f->add(FieldElem{a}, b)) == (t + f->trace(b)) % p);
      CHECK(f->trace(f->scale(FieldElem{a}, 2 % p)) == (t * (2 % p)) % p);
    }
    // Surjective and balanced.
    for (int c : counts) CHECK(c == static_cast<int>(f->size()) / p);
  }
  const auto gf4 = GaloisField::get(2, 2);
  CHECK(gf4->trace(gf4->one()) == 0);
}

TEST_CASE("trace-orthogonal bases") {
  for (auto [p, r] : kFields) {
    CAPTURE(p);
    CAPTURE(r);
    const auto f = GaloisField::get(p, r);
    const auto tob = find_trace_orthogonal_basis(p, r, 3);
    REQUIRE(tob.basis.size() == static_cast<std::size_t>(r));
    CHECK(is_trace_orthogonal_basis(*f, tob));
    for (std::size_t i = 0; i < tob.basis.size(); ++i) {
      CHECK(tob.weights[i] == f->trace(f->mul(tob.basis[i], tob.basis[i])));
      CHECK(tob.weights[i] != 0);
      for (std::size_t j = i + 1; j < tob.basis.size(); ++j) CHECK(f->trace(f->mul(tob.basis[i], tob.basis[j])) == 0);
    }
    CHECK(find_trace_orthogonal_basis(p, r, 3).basis == tob.basis);
  }
  // GF(4): the only self-dual basis is {w, w^2}.
  const auto gf4 = GaloisField::get(2, 2);
  const auto tob = find_trace_orthogonal_basis(2, 2);
  const FieldElem w = gf4->primitive();
  std::vector<FieldElem> expect{w, gf4->mul(w, w)};
  std::vector<FieldElem> got = tob.basis;
  std::sort(expect.begin(), expect.end());
  std::sort(got.begin(), got.end());
  CHECK(got == expect);
  // The polynomial basis {1, x} of GF(4) has Tr(1) = 0.
  CHECK_FALSE(is_trace_orthogonal_basis(*gf4, TraceOrthBasis{2, 2, {gf4->one(), FieldElem{2}}, {0, 1}}));
}

TEST_CASE("field linear algebra") {
  const auto f = GaloisField::get(3, 2);
  SplitMix64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const int rows = 1 + static_cast<int>(rng.below(4)), cols = 1 + static_cast<int>(rng.below(6));
    FieldMatrix m(rows, cols);
    for (auto& e : m.entries) e = FieldElem{static_cast<std::uint32_t>(rng.below(f->size()))};
    const int rk = rank(*f, m);
    const auto ns = null_space(*f, m);
    CHECK(ns.rows == cols - rk);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < ns.rows; ++j) {
        FieldElem s = f->zero();
        for (int t = 0; t < cols; ++t) s = f->add(s, f->mul(m.at(i, t), ns.at(j, t)));
        CHECK(s == f->zero());
      }
  }
}
