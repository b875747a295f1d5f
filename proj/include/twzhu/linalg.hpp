#pragma once

// Exact linear algebra on finite ordered coordinate spaces.

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "twzhu/combination.hpp"
#include "twzhu/scalar.hpp"

namespace twzhu {

using Vector = std::vector<Scalar>;

/// Reduced row-echelon form over Scalar in a fixed number of columns.
/// Pivot columns strictly increase from row to row and every pivot column
/// is zero outside its own row.
class RowEchelon {
 public:
  explicit RowEchelon(std::size_t dim = 0) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<Vector>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Inserts v into the row space. Returns true if the rank grew.
  bool insert(Vector v);
  /// v minus its projection onto the pivot coordinates.
  Vector reduce(Vector v) const;
  bool contains(const Vector& v) const;
  /// Non-pivot column indices, ascending.
  std::vector<std::size_t> freeColumns() const;

 private:
  std::size_t dim_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
};

/// Basis of the null space of the linear map whose column images are given
/// (images[j] is the image of the j-th coordinate vector, written in a
/// coordinate space of dimension codim).
std::vector<Vector> nullSpace(const std::vector<Vector>& images, std::size_t codim);

/// Ordered finite basis of a coordinate space. Keys are distinct; their order
/// is the order supplied by the caller (graded, then lexicographic, for every
/// slice built in this project).
template <class Key>
class SliceBasis {
 public:
  SliceBasis() = default;
  explicit SliceBasis(std::vector<Key> keys) : keys_(std::move(keys)) {
    for (std::size_t i = 0; i < keys_.size(); ++i) {
      if (!index_.emplace(keys_[i], i).second)
        throw std::invalid_argument("SliceBasis: duplicate key");
    }
  }

  std::size_t dim() const { return keys_.size(); }
  const std::vector<Key>& keys() const { return keys_; }
  const Key& key(std::size_t i) const { return keys_.at(i); }
  std::optional<std::size_t> indexOf(const Key& k) const {
    auto it = index_.find(k);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  bool inSlice(const Combination<Key>& v) const {
    return std::all_of(v.begin(), v.end(),
                       [&](const auto& t) { return index_.count(t.first) > 0; });
  }

  /// Coordinates of v. Throws std::out_of_range for keys outside the slice.
  Vector coordinates(const Combination<Key>& v) const {
    Vector out(keys_.size());
    for (const auto& [k, c] : v) {
      auto it = index_.find(k);
      if (it == index_.end()) throw std::out_of_range("coordinate outside slice");
      out[it->second] = c;
    }
    return out;
  }

  Combination<Key> combination(const Vector& coords) const {
    Combination<Key> out;
    for (std::size_t i = 0; i < coords.size(); ++i) out.add(keys_[i], coords[i]);
    return out;
  }

 private:
  std::vector<Key> keys_;
  std::map<Key, std::size_t> index_;
};

/// Row-reduced subspace of a slice.
template <class Key>
class Subspace {
 public:
  explicit Subspace(std::shared_ptr<const SliceBasis<Key>> slice)
      : slice_(std::move(slice)), echelon_(slice_->dim()) {}

  const SliceBasis<Key>& slice() const { return *slice_; }
  std::shared_ptr<const SliceBasis<Key>> slicePtr() const { return slice_; }
  const RowEchelon& echelon() const { return echelon_; }
  std::size_t rank() const { return echelon_.rank(); }

  bool insert(const Combination<Key>& v) { return echelon_.insert(slice_->coordinates(v)); }
  bool insertCoordinates(Vector v) {
    if (v.size() != slice_->dim()) throw std::out_of_range("vector dimension does not match slice");
    return echelon_.insert(std::move(v));
  }

  bool contains(const Combination<Key>& v) const {
    return echelon_.contains(slice_->coordinates(v));
  }
  Combination<Key> reduceModulo(const Combination<Key>& v) const {
    return slice_->combination(echelon_.reduce(slice_->coordinates(v)));
  }
  /// Slice keys that are not pivots, in slice order.
  std::vector<Key> quotientBasis() const {
    std::vector<Key> out;
    for (std::size_t c : echelon_.freeColumns()) out.push_back(slice_->key(c));
    return out;
  }
  std::vector<Combination<Key>> basisRows() const {
    std::vector<Combination<Key>> out;
    for (const auto& r : echelon_.rows()) out.push_back(slice_->combination(r));
    return out;
  }

 private:
  std::shared_ptr<const SliceBasis<Key>> slice_;
  RowEchelon echelon_;
};

template <class Key>
Subspace<Key> spanFromGenerators(std::shared_ptr<const SliceBasis<Key>> slice,
                                 const std::vector<Combination<Key>>& vectors) {
  Subspace<Key> s(std::move(slice));
  for (const auto& v : vectors) s.insert(v);
  return s;
}

}  // namespace twzhu
