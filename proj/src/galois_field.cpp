#include "kuniform/galois_field.hpp"

#include <map>
#include <mutex>
#include <string>
#include <utility>

#include "kuniform/checked.hpp"
#include "kuniform/error.hpp"
#include "kuniform/modular_linalg.hpp"
#include "kuniform/rng.hpp"

namespace kuniform {

namespace {

constexpr std::uint64_t kMaxFieldSize = 1u << 24;

std::vector<int> unpack(std::uint64_t value, int p, int len) {
  std::vector<int> out(static_cast<std::size_t>(len), 0);
  for (int i = 0; i < len; ++i) {
    out[static_cast<std::size_t>(i)] = static_cast<int>(value % static_cast<std::uint64_t>(p));
    value /= static_cast<std::uint64_t>(p);
  }
  return out;
}

std::uint32_t pack(std::span<const int> digits, int p) {
  std::uint64_t out = 0;
  for (std::size_t i = digits.size(); i-- > 0;) out = out * static_cast<std::uint64_t>(p) + static_cast<std::uint64_t>(digits[i]);
  return static_cast<std::uint32_t>(out);
}

// Remainder of a modulo a monic b, coefficients mod p.
std::vector<int> poly_mod(std::vector<int> a, std::span<const int> b, int p) {
  const int db = static_cast<int>(b.size()) - 1;
  for (int i = static_cast<int>(a.size()) - 1; i >= db; --i) {
    const int c = a[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) {
      auto& slot = a[static_cast<std::size_t>(i - db + j)];
      slot = static_cast<int>(mod_floor(slot - static_cast<std::int64_t>(c) * b[static_cast<std::size_t>(j)], p));
    }
  }
  a.resize(static_cast<std::size_t>(std::max(db, 0)));
  return a;
}

std::vector<int> poly_mulmod(std::span<const int> a, std::span<const int> b, std::span<const int> mod, int p) {
  std::vector<int> prod(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = static_cast<int>((prod[i + j] + static_cast<std::int64_t>(a[i]) * b[j]) % p);
    }
  }
  return poly_mod(std::move(prod), mod, p);
}

bool is_irreducible(std::span<const int> poly, int p) {
  const int r = static_cast<int>(poly.size()) - 1;
  for (int s = 1; s <= r / 2; ++s) {
    const std::uint64_t count = checked_pow(static_cast<std::uint64_t>(p), static_cast<unsigned>(s));
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      auto divisor = unpack(idx, p, s);
      divisor.push_back(1);
      const auto rem = poly_mod(std::vector<int>(poly.begin(), poly.end()), divisor, p);
      bool zero = true;
      for (int c : rem) zero = zero && c == 0;
      if (zero) return false;
    }
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) {
      out.push_back(f);
      while (n % f == 0) n /= f;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

std::shared_ptr<const GaloisField> GaloisField::get(int p, int r) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const GaloisField>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{p, r}];
  if (!slot) slot = std::make_shared<const GaloisField>(p, r);
  return slot;
}

GaloisField::GaloisField(int p, int r) : p_(p), r_(r) {
  if (!is_prime(p)) throw Error(ErrorKind::InvalidLevel, "characteristic " + std::to_string(p) + " is not prime");
  if (r < 1) throw Error(ErrorKind::Range, "extension degree must be >= 1");
  const std::uint64_t q = saturating_pow(static_cast<std::uint64_t>(p), static_cast<unsigned>(r));
  if (q > kMaxFieldSize) throw Error(ErrorKind::TooLarge, "field of size p^r above 2^24");
  q_ = static_cast<std::uint32_t>(q);

  const std::uint64_t lower = q;
  for (std::uint64_t idx = 0; idx < lower; ++idx) {
    auto poly = unpack(idx, p, r);
    poly.push_back(1);
    if (is_irreducible(poly, p)) {
      modulus_ = std::move(poly);
      break;
    }
  }

  const std::uint64_t order = q_ - 1;
  const auto factors = prime_factors(order);
  for (std::uint32_t g = 1; g < q_; ++g) {
    const auto gc = unpack(g, p, r);
    bool primitive = true;
    for (auto f : factors) {
      // g^(order / f) by square and multiply on polynomial representatives.
      std::vector<int> acc = unpack(1, p, r);
      std::vector<int> base = gc;
      for (std::uint64_t e = order / f; e > 0; e >>= 1) {
        if (e & 1) acc = poly_mulmod(acc, base, modulus_, p);
        base = poly_mulmod(base, base, modulus_, p);
      }
      if (pack(acc, p) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      primitive_ = FieldElem{g};
      break;
    }
  }

  exp_.resize(order == 0 ? 1 : order);
  log_.assign(q_, -1);
  std::vector<int> cur = unpack(1, p, r);
  const auto gc = unpack(primitive_.value, p, r);
  for (std::uint64_t i = 0; i < order; ++i) {
    const auto packed = pack(cur, p);
    exp_[i] = packed;
    log_[packed] = static_cast<std::int32_t>(i);
    cur = poly_mulmod(cur, gc, modulus_, p);
  }
}

FieldElem GaloisField::from_int(std::int64_t v) const { return FieldElem{static_cast<std::uint32_t>(mod_floor(v, p_))}; }

FieldElem GaloisField::from_coeffs(std::span<const int> coeffs) const {
  if (static_cast<int>(coeffs.size()) != r_) throw Error(ErrorKind::Shape, "field element needs r coefficients");
  for (int c : coeffs) {
    if (c < 0 || c >= p_) throw Error(ErrorKind::Range, "field coefficient outside [0, p)");
  }
  return FieldElem{pack(coeffs, p_)};
}

std::vector<int> GaloisField::coeffs(FieldElem x) const { return unpack(x.value, p_, r_); }

FieldElem GaloisField::add(FieldElem a, FieldElem b) const {
  if (r_ == 1) return FieldElem{(a.value + b.value) % static_cast<std::uint32_t>(p_)};
  std::uint32_t out = 0, place = 1;
  for (int i = 0; i < r_; ++i) {
    const std::uint32_t da = a.value % p_, db = b.value % p_;
    out += ((da + db) % p_) * place;
    a.value /= p_;
    b.value /= p_;
    place *= p_;
  }
  return FieldElem{out};
}

FieldElem GaloisField::neg(FieldElem a) const {
  std::uint32_t out = 0, place = 1;
  for (int i = 0; i < r_; ++i) {
    const std::uint32_t da = a.value % p_;
    out += ((p_ - da) % p_) * place;
    a.value /= p_;
    place *= p_;
  }
  return FieldElem{out};
}

FieldElem GaloisField::sub(FieldElem a, FieldElem b) const { return add(a, neg(b)); }

FieldElem GaloisField::mul(FieldElem a, FieldElem b) const {
  if (a.value == 0 || b.value == 0) return zero();
  const std::uint64_t order = q_ - 1;
  const std::uint64_t e = (static_cast<std::uint64_t>(log_[a.value]) + static_cast<std::uint64_t>(log_[b.value])) % order;
  return FieldElem{exp_[e]};
}

FieldElem GaloisField::inv(FieldElem a) const {
  if (a.value == 0) throw Error(ErrorKind::Range, "inverse of zero");
  const std::uint64_t order = q_ - 1;
  return FieldElem{exp_[(order - static_cast<std::uint64_t>(log_[a.value])) % order]};
}

FieldElem GaloisField::pow(FieldElem a, std::uint64_t e) const {
  if (e == 0) return one();
  if (a.value == 0) return zero();
  const std::uint64_t order = q_ - 1;
  const auto l = static_cast<unsigned __int128>(log_[a.value]) * e % order;
  return FieldElem{exp_[static_cast<std::size_t>(l)]};
}

FieldElem GaloisField::scale(FieldElem a, int c) const { return mul(a, from_int(c)); }

int GaloisField::trace(FieldElem x) const {
  FieldElem acc = zero();
  FieldElem term = x;
  for (int i = 0; i < r_; ++i) {
    acc = add(acc, term);
    term = pow(term, static_cast<std::uint64_t>(p_));
  }
  if (acc.value >= static_cast<std::uint32_t>(p_)) {
    throw Error(ErrorKind::PreconditionViolated, "trace left the prime field");
  }
  return static_cast<int>(acc.value);
}

std::vector<FieldElem> GaloisField::enumeration_order() const {
  std::vector<FieldElem> out;
  out.reserve(q_);
  out.push_back(zero());
  for (std::uint32_t i = 0; i + 1 < q_; ++i) out.push_back(FieldElem{exp_[i]});
  return out;
}

int field_trace(const GaloisField& field, FieldElem x) { return field.trace(x); }

bool is_trace_orthogonal_basis(const GaloisField& field, const TraceOrthBasis& tob) {
  const int r = field.degree();
  if (static_cast<int>(tob.basis.size()) != r || static_cast<int>(tob.weights.size()) != r) return false;
  ZnMatrix coords(field.characteristic(), r, r);
  for (int i = 0; i < r; ++i) {
    const auto c = field.coeffs(tob.basis[static_cast<std::size_t>(i)]);
    for (int j = 0; j < r; ++j) coords.set(i, j, c[static_cast<std::size_t>(j)]);
    for (int j = 0; j < r; ++j) {
      const int t = field.trace(field.mul(tob.basis[static_cast<std::size_t>(i)], tob.basis[static_cast<std::size_t>(j)]));
      if (i == j && (t == 0 || t != tob.weights[static_cast<std::size_t>(i)])) return false;
      if (i != j && t != 0) return false;
    }
  }
  return rank_mod_p(coords) == r;
}

TraceOrthBasis find_trace_orthogonal_basis(int p, int r, std::uint64_t seed, std::uint64_t max_restarts,
                                           std::uint64_t field_budget) {
  if (saturating_pow(static_cast<std::uint64_t>(p), static_cast<unsigned>(std::max(r, 0))) > field_budget) {
    throw Error(ErrorKind::TooLarge, "p^r exceeds the field enumeration budget");
  }
  const auto field = GaloisField::get(p, r);
  const auto& f = *field;
  auto form = [&](FieldElem x, FieldElem y) { return f.trace(f.mul(x, y)); };

  TraceOrthBasis out{p, r, {}, {}};
  if (p != 2) {
    std::vector<FieldElem> rest;
    std::uint32_t place = 1;
    for (int i = 0; i < r; ++i, place *= static_cast<std::uint32_t>(p)) rest.push_back(FieldElem{place});
    while (!rest.empty()) {
      std::size_t pick = rest.size();
      for (std::size_t i = 0; i < rest.size() && pick == rest.size(); ++i) {
        if (form(rest[i], rest[i]) != 0) pick = i;
      }
      if (pick == rest.size()) {
        // Every remaining vector is isotropic; B(u+w, u+w) = 2B(u, w) != 0 for some pair.
        for (std::size_t i = 0; i < rest.size() && pick == rest.size(); ++i) {
          for (std::size_t j = i + 1; j < rest.size(); ++j) {
            if (form(rest[i], rest[j]) != 0) {
              rest[i] = f.add(rest[i], rest[j]);
              pick = i;
              break;
            }
          }
        }
        if (pick == rest.size()) throw Error(ErrorKind::SearchFailed, "trace form degenerate");
      }
      const FieldElem v = rest[pick];
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pick));
      const std::int64_t inv_vv = inverse_mod(form(v, v), p);
      for (auto& w : rest) {
        const std::int64_t coef = mod_floor(form(w, v) * inv_vv, p);
        w = f.sub(w, f.scale(v, static_cast<int>(coef)));
      }
      out.basis.push_back(v);
      out.weights.push_back(form(v, v));
    }
  } else {
    SplitMix64 rng(seed);
    bool done = false;
    for (std::uint64_t attempt = 0; attempt < max_restarts && !done; ++attempt) {
      out.basis.clear();
      out.weights.clear();
      while (static_cast<int>(out.basis.size()) < r) {
        std::vector<FieldElem> candidates;
        for (std::uint32_t x = 1; x < f.size(); ++x) {
          const FieldElem e{x};
          if (form(e, e) == 0) continue;
          bool orthogonal = true;
          for (auto b : out.basis) orthogonal = orthogonal && form(e, b) == 0;
          if (orthogonal) candidates.push_back(e);
        }
        if (candidates.empty()) break;
        const FieldElem chosen = candidates[rng.below(candidates.size())];
        out.basis.push_back(chosen);
        out.weights.push_back(form(chosen, chosen));
      }
      done = static_cast<int>(out.basis.size()) == r;
    }
    if (!done) throw Error(ErrorKind::SearchFailed, "no trace-orthogonal basis within restart budget; retry with a new seed");
  }
  if (!is_trace_orthogonal_basis(f, out)) throw Error(ErrorKind::SearchFailed, "basis failed re-verification");
  return out;
}

std::vector<int> row_reduce(const GaloisField& field, FieldMatrix& m) {
  std::vector<int> pivots;
  int lead = 0;
  for (int col = 0; col < m.cols && lead < m.rows; ++col) {
    int pivot = -1;
    for (int i = lead; i < m.rows; ++i) {
      if (m.at(i, col).value != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != lead) {
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(pivot, j), m.at(lead, j));
    }
    const FieldElem inv = field.inv(m.at(lead, col));
    for (int j = 0; j < m.cols; ++j) m.at(lead, j) = field.mul(m.at(lead, j), inv);
    for (int i = 0; i < m.rows; ++i) {
      if (i == lead) continue;
      const FieldElem factor = m.at(i, col);
      if (factor.value == 0) continue;
      for (int j = 0; j < m.cols; ++j) m.at(i, j) = field.sub(m.at(i, j), field.mul(factor, m.at(lead, j)));
    }
    pivots.push_back(col);
    ++lead;
  }
  return pivots;
}

int rank(const GaloisField& field, const FieldMatrix& m) {
  FieldMatrix work = m;
  return static_cast<int>(row_reduce(field, work).size());
}

FieldMatrix null_space(const GaloisField& field, const FieldMatrix& m) {
  FieldMatrix work = m;
  const auto pivots = row_reduce(field, work);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols), false);
  for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  FieldMatrix basis(m.cols - static_cast<int>(pivots.size()), m.cols);
  int row = 0;
  for (int free_col = 0; free_col < m.cols; ++free_col) {
    if (is_pivot[static_cast<std::size_t>(free_col)]) continue;
    basis.at(row, free_col) = field.one();
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      basis.at(row, pivots[r]) = field.neg(work.at(static_cast<int>(r), free_col));
    }
    ++row;
  }
  return basis;
}

}  // namespace kuniform
