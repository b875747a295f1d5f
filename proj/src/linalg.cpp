#include "twzhu/linalg.hpp"

namespace twzhu {

Vector RowEchelon::reduce(Vector v) const {
  if (v.size() != dim_) throw std::out_of_range("vector dimension does not match slice");
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const std::size_t p = pivots_[r];
    if (v[p].isZero()) continue;
    const Scalar c = v[p];
    const Vector& row = rows_[r];
    for (std::size_t j = p; j < dim_; ++j) {
      if (!row[j].isZero()) v[j] -= c * row[j];
    }
  }
  return v;
}

bool RowEchelon::contains(const Vector& v) const {
  Vector r = reduce(v);
  return std::all_of(r.begin(), r.end(), [](const Scalar& s) { return s.isZero(); });
}

bool RowEchelon::insert(Vector v) {
  v = reduce(std::move(v));
  std::size_t p = 0;
  while (p < dim_ && v[p].isZero()) ++p;
  if (p == dim_) return false;
  const Scalar inv = Scalar(1) / v[p];
  for (std::size_t j = p; j < dim_; ++j) {
    if (!v[j].isZero()) v[j] *= inv;
  }
  // Clear the new pivot column from the existing rows.
  for (auto& row : rows_) {
    if (row[p].isZero()) continue;
    const Scalar c = row[p];
    for (std::size_t j = p; j < dim_; ++j) {
      if (!v[j].isZero()) row[j] -= c * v[j];
    }
  }
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p);
  auto idx = pos - pivots_.begin();
  pivots_.insert(pos, p);
  rows_.insert(rows_.begin() + idx, std::move(v));
  return true;
}

std::vector<std::size_t> RowEchelon::freeColumns() const {
  std::vector<std::size_t> out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < dim_; ++c) {
    if (r < pivots_.size() && pivots_[r] == c) {
      ++r;
    } else {
      out.push_back(c);
    }
  }
  return out;
}

std::vector<Vector> nullSpace(const std::vector<Vector>& images, std::size_t codim) {
  const std::size_t n = images.size();
  // Rows of the matrix whose j-th column is images[j].
  RowEchelon ech(n);
  for (std::size_t i = 0; i < codim; ++i) {
    Vector row(n);
    bool any = false;
    for (std::size_t j = 0; j < n; ++j) {
      if (images[j].size() != codim) throw std::out_of_range("nullSpace: image dimension mismatch");
      row[j] = images[j][i];
      any = any || !row[j].isZero();
    }
    if (any) ech.insert(std::move(row));
  }
  std::vector<Vector> out;
  for (std::size_t f : ech.freeColumns()) {
    Vector x(n);
    x[f] = Scalar(1);
    for (std::size_t r = 0; r < ech.rank(); ++r) x[ech.pivots()[r]] = -ech.rows()[r][f];
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace twzhu
