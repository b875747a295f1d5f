#pragma once

#include <map>
#include <utility>

#include "twzhu/scalar.hpp"

namespace twzhu {

/// Finitely supported Scalar-linear combination of ordered keys. Zero
/// coefficients are never stored, and iteration follows the key order.
template <class Key>
class Combination {
 public:
  using Map = std::map<Key, Scalar>;
  using const_iterator = typename Map::const_iterator;

  Combination() = default;
  explicit Combination(Key k, Scalar c = Scalar(1)) { add(std::move(k), c); }

  void add(const Key& k, const Scalar& c) {
    if (c.isZero()) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second.isZero()) terms_.erase(it);
    }
  }

  /// this += c * other
  void addScaled(const Combination& other, const Scalar& c) {
    if (c.isZero()) return;
    for (const auto& [k, v] : other.terms_) add(k, v * c);
  }

  Scalar coefficient(const Key& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  bool isZero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const_iterator begin() const { return terms_.begin(); }
  const_iterator end() const { return terms_.end(); }
  const Map& terms() const { return terms_; }

  Combination& operator+=(const Combination& o) { addScaled(o, Scalar(1)); return *this; }
  Combination& operator-=(const Combination& o) { addScaled(o, Scalar(-1)); return *this; }
  Combination& operator*=(const Scalar& c) {
    if (c.isZero()) {
      terms_.clear();
    } else {
      for (auto& [k, v] : terms_) v *= c;
    }
    return *this;
  }

  friend Combination operator+(Combination a, const Combination& b) { return a += b; }
  friend Combination operator-(Combination a, const Combination& b) { return a -= b; }
  friend Combination operator*(const Scalar& c, Combination a) { return a *= c; }
  friend Combination operator*(Combination a, const Scalar& c) { return a *= c; }
  Combination operator-() const { return *this * Scalar(-1); }

  friend bool operator==(const Combination& a, const Combination& b) = default;
  friend auto operator<=>(const Combination& a, const Combination& b) = default;

 private:
  Map terms_;
};

}  // namespace twzhu
