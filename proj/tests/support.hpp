#pragma once

// Random generators for property tests.

#include <cstdint>
#include <random>
#include <vector>

#include "twzhu/field.hpp"
#include "twzhu/linalg.hpp"
#include "twzhu/scalar.hpp"

namespace twzhu::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }
  bool coin() { return integer(0, 1) == 1; }

  /// p/q with |p| <= maxNum, 1 <= q <= maxDen.
  Scalar rational(long maxNum = 20, long maxDen = 12) {
    return Scalar(static_cast<long>(integer(-maxNum, maxNum)), static_cast<long>(integer(1, maxDen)));
  }
  Scalar nonzeroRational(long maxNum = 20, long maxDen = 12) {
    for (;;) {
      Scalar s = rational(maxNum, maxDen);
      if (!s.isZero()) return s;
    }
  }
  /// Mode in [-bound, bound] (bound in units of 1/order).
  Mode mode(int order, std::int64_t scaledBound) { return Mode::fromScaled(integer(-scaledBound, scaledBound), order); }
  /// Mode in (1/order)N with value at most scaledBound/order.
  Mode natural(int order, std::int64_t scaledBound) { return Mode::fromScaled(integer(0, scaledBound), order); }

  template <class T>
  const T& pick(const std::vector<T>& xs) {
    return xs[static_cast<std::size_t>(integer(0, static_cast<std::int64_t>(xs.size()) - 1))];
  }

  Vector vector(std::size_t dim, int density = 2) {
    Vector v(dim);
    for (auto& x : v)
      if (integer(0, density) == 0) x = rational(5, 3);
    return v;
  }

  /// Random combination of up to `terms` keys of weight <= maxWeight.
  Element element(const VoaBackend& backend, int maxWeight, int terms) {
    const auto keys = backend.basisUpTo(maxWeight);
    Element out;
    const auto count = integer(1, terms);
    for (std::int64_t i = 0; i < count; ++i) out.add(pick(keys), nonzeroRational(6, 4));
    return out;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace twzhu::testing
