#include "fatflat/combinatorics.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "fatflat/errors.hpp"

namespace fatflat {

Integer binomial(long a, long b) {
  if (b < 0 || a < b) return 0;
  b = std::min(b, a - b);
  Integer result = 1;
  for (long i = 1; i <= b; ++i) {
    result *= (a - b + i);
    result /= i;
  }
  return result;
}

std::int64_t to_int64(const Integer& value) {
  if (value > std::numeric_limits<std::int64_t>::max() || value < std::numeric_limits<std::int64_t>::min()) {
    throw DomainError("integer value does not fit in 64 bits");
  }
  return static_cast<std::int64_t>(value);
}

namespace {

void check_flat_query(int n, int delta, int m) {
  if (n < 1 || delta < 0 || delta > n - 1) {
    throw DomainError("flat dimension " + std::to_string(delta) + " not in [0, " + std::to_string(n - 1) + "]");
  }
  if (m < 1) throw DomainError("multiplicity must be at least 1");
}

}  // namespace

Integer conditions_count(const ConditionCountQuery& q) {
  check_flat_query(q.n, q.delta, q.m);
  if (q.t < q.m) {
    throw DomainError("conditions_count needs t >= m (t=" + std::to_string(q.t) + ", m=" + std::to_string(q.m) + ")");
  }
  Integer total = 0;
  for (int i = 0; i < q.m; ++i) {
    total += binomial(q.t - i + q.delta, q.delta) * binomial(i + q.n - q.delta - 1, q.n - q.delta - 1);
  }
  return total;
}

IntegerPolynomial fat_flat_hilbert_poly(int n, int delta, int m) {
  check_flat_query(n, delta, m);
  IntegerPolynomial total;
  for (int i = 0; i < m; ++i) {
    const Integer weight = binomial(i + n - delta - 1, n - delta - 1);
    total += IntegerPolynomial::binomial_in_t(delta - i, delta) * Rational(weight);
  }
  return total;
}

// ---------------------------------------------------------------------------

HVector::HVector(std::vector<std::int64_t> entries) : entries_(std::move(entries)) {
  for (const auto e : entries_) {
    if (e < 0) throw DomainError("h-vector entries must be nonnegative");
  }
  while (!entries_.empty() && entries_.back() == 0) entries_.pop_back();
}

std::int64_t HVector::sum() const {
  std::int64_t s = 0;
  for (const auto e : entries_) s += e;
  return s;
}

HVector power_ideal_hvector(int codim, int m) {
  if (codim < 1 || m < 1) throw DomainError("power_ideal_hvector needs codim >= 1 and m >= 1");
  std::vector<std::int64_t> h;
  for (int k = 0; k < m; ++k) h.push_back(to_int64(binomial(k + codim - 1, codim - 1)));
  return HVector(std::move(h));
}

HVector hvector_convolve(const HVector& a, const HVector& b) {
  if (a.size() == 0 || b.size() == 0) return HVector();
  std::vector<std::int64_t> out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return HVector(std::move(out));
}

IntegratedHilbertFunction::IntegratedHilbertFunction(HVector h, int times) : h_(std::move(h)), times_(times) {
  if (times_ < 0) throw DomainError("cannot integrate a negative number of times");
  if (times_ >= 1) {
    for (std::size_t k = 0; k < h_.size(); ++k) {
      tail_ += IntegerPolynomial::binomial_in_t(static_cast<long>(times_) - 1 - static_cast<long>(k), times_ - 1) *
               Rational(h_[k]);
    }
    from_ = std::max<long>(0, static_cast<long>(h_.size()) - times_);
  } else {
    from_ = static_cast<long>(h_.size());
  }
}

Integer IntegratedHilbertFunction::value(long t) const {
  if (t < 0) return 0;
  const auto vals = values(static_cast<std::size_t>(t) + 1);
  return vals.back();
}

std::vector<Integer> IntegratedHilbertFunction::values(std::size_t count) const {
  std::vector<Integer> seq(count, 0);
  for (std::size_t k = 0; k < count; ++k) seq[k] = h_[k];
  for (int pass = 0; pass < times_; ++pass) {
    for (std::size_t k = 1; k < count; ++k) seq[k] += seq[k - 1];
  }
  return seq;
}

IntegratedHilbertFunction hvector_integrate(const HVector& h, int times) { return {h, times}; }

IntegerPolynomial pairwise_intersection_hp(int n, int m1, int m2, int meet_dim) {
  if (meet_dim != 0 && meet_dim != 1) {
    throw DomainError("pairwise correction modeled only for flats meeting in a point or a line");
  }
  if (n - 4 != meet_dim) {
    throw DomainError("two codimension-2 flats of P^" + std::to_string(n) + " meet properly in dimension " +
                      std::to_string(n - 4) + ", not " + std::to_string(meet_dim));
  }
  if (m1 < 1 || m2 < 1) throw DomainError("multiplicities must be at least 1");
  const HVector h = hvector_convolve(power_ideal_hvector(2, m1), power_ideal_hvector(2, m2));
  return hvector_integrate(h, meet_dim + 1).tail();
}

// ---------------------------------------------------------------------------

int generic_meet_dim(int n, int a, int b) { return std::max(a + b - n, -1); }

IntersectionPattern generic_pattern(int n, std::span<const FlatComponent> components) {
  const std::size_t k = components.size();
  IntersectionPattern pattern;
  pattern.pair_meet.assign(k, std::vector<int>(k, -1));
  for (std::size_t i = 0; i < k; ++i) {
    pattern.pair_meet[i][i] = components[i].dim;
    for (std::size_t j = i + 1; j < k; ++j) {
      const int d = generic_meet_dim(n, components[i].dim, components[j].dim);
      pattern.pair_meet[i][j] = pattern.pair_meet[j][i] = d;
    }
  }
  for (std::size_t i = 0; i < k && pattern.triples_empty; ++i) {
    for (std::size_t j = i + 1; j < k && pattern.triples_empty; ++j) {
      for (std::size_t l = j + 1; l < k; ++l) {
        if (components[i].dim + components[j].dim + components[l].dim - 2 * n >= 0) {
          pattern.triples_empty = false;
          break;
        }
      }
    }
  }
  return pattern;
}

IntegerPolynomial mayer_vietoris_polynomial(int n, std::span<const FlatComponent> components,
                                            const IntersectionPattern& pattern) {
  const std::size_t k = components.size();
  if (pattern.pair_meet.size() != k) throw DimensionMismatch("intersection pattern does not match components");
  if (!pattern.triples_empty) {
    throw UnsupportedConfiguration("three of the flats have a common point; only pairwise meetings are modeled");
  }
  IntegerPolynomial total;
  for (const auto& c : components) total += fat_flat_hilbert_poly(n, c.dim, c.multiplicity);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const int meet = pattern.pair_meet[i][j];
      if (meet < 0) continue;
      if (components[i].dim != n - 2 || components[j].dim != n - 2) {
        throw UnsupportedConfiguration("flats of dimensions " + std::to_string(components[i].dim) + " and " +
                                       std::to_string(components[j].dim) + " meet; only codimension-2 pairs are modeled");
      }
      if (meet != n - 4 || (meet != 0 && meet != 1)) {
        throw UnsupportedConfiguration("codimension-2 flats meeting in dimension " + std::to_string(meet) +
                                       " of P^" + std::to_string(n) + " are not modeled");
      }
      total -= pairwise_intersection_hp(n, components[i].multiplicity, components[j].multiplicity, meet);
    }
  }
  return total;
}

IntegerPolynomial mayer_vietoris_polynomial(int n, std::span<const FlatComponent> components) {
  return mayer_vietoris_polynomial(n, components, generic_pattern(n, components));
}

Integer mayer_vietoris_value(int n, std::span<const FlatComponent> components, int t) {
  for (const auto& c : components) {
    if (t < c.multiplicity) {
      throw DomainError("mayer_vietoris_value needs t >= every multiplicity");
    }
  }
  return mayer_vietoris_polynomial(n, components).evaluate_integer(t);
}

}  // namespace fatflat
