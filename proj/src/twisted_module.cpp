#include "twzhu/twisted_module.hpp"

#include <map>
#include <stdexcept>

namespace twzhu {

ModuleVector oApply(const FieldEngine& engine, const Element& v, const Mode& n, const ModuleVector& w) {
  ModuleVector out;
  for (const auto& [k, c] : v) {
    Mode idx = n + static_cast<std::int64_t>(k.weight() - 1);
    out.addScaled(engine.apply(Element(k), idx, w), c);
  }
  return out;
}

std::vector<ModuleVector> oOperator(const FieldEngine& engine, const Element& v, const Mode& n) {
  const ModuleBackend& M = engine.module();
  std::vector<ModuleVector> cols;
  for (const ModState& s : M.statesUpTo(M.truncation())) {
    ModuleVector img = oApply(engine, v, n, ModuleVector(s));
    for (const auto& [t, c] : img)
      if (M.degree(t) > M.truncation())
        throw TruncationError("o_" + n.toString() + " maps " + M.stateText(s) + " beyond the truncation");
    cols.push_back(std::move(img));
  }
  return cols;
}

Subspace<ModState> omegaNApprox(const FieldEngine& engine, const Mode& n, int testWeight, const Mode& iMax) {
  const ModuleBackend& M = engine.module();
  const VoaBackend& B = M.parent();
  auto slice = std::make_shared<const SliceBasis<ModState>>(M.statesUpTo(M.truncation()));
  const int T = M.order();

  // Rows of the stacked constraint map are indexed by (condition, state).
  std::map<std::pair<std::size_t, ModState>, std::size_t> rowIndex;
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> sparseImages(slice->dim());
  std::size_t condition = 0;
  for (const BasisKey& v : B.basisUpTo(testWeight)) {
    for (std::int64_t s = 1; s <= iMax.scaled() * T / iMax.order(); ++s, ++condition) {
      Mode i = Mode::fromScaled(s, T);
      for (std::size_t j = 0; j < slice->dim(); ++j) {
        for (const auto& [t, c] : oApply(engine, Element(v), n + i, ModuleVector(slice->key(j)))) {
          auto [it, inserted] = rowIndex.try_emplace({condition, t}, rowIndex.size());
          sparseImages[j].emplace_back(it->second, c);
        }
      }
    }
  }
  std::vector<Vector> images(slice->dim(), Vector(rowIndex.size()));
  for (std::size_t j = 0; j < slice->dim(); ++j)
    for (const auto& [r, c] : sparseImages[j]) images[j][r] += c;

  Subspace<ModState> out(slice);
  for (auto& k : nullSpace(images, rowIndex.size())) out.insertCoordinates(std::move(k));
  return out;
}

bool checkCommutator(const FieldEngine& engine, const BasisKey& u, const BasisKey& v, const Mode& m,
                     const Mode& n, const Mode& maxDegree) {
  const ModuleBackend& M = engine.module();
  const VoaBackend& B = M.parent();
  if (!M.modeAllowed(B.sector(u), m) || !M.modeAllowed(B.sector(v), n))
    throw std::invalid_argument("checkCommutator: mode outside the allowed coset");
  const VertexAlgebra& voa = engine.algebra();
  const Element eu(u), ev(v);
  for (const ModState& s : M.statesUpTo(maxDegree)) {
    ModuleVector w(s);
    ModuleVector lhs = engine.apply(eu, m, engine.apply(ev, n, w)) - engine.apply(ev, n, engine.apply(eu, m, w));
    ModuleVector rhs;
    for (std::int64_t i = 0; i < u.weight() + v.weight(); ++i) {
      Scalar c = binomial(m, static_cast<int>(i));
      if (c.isZero()) continue;
      rhs.addScaled(engine.apply(voa.modeProduct(u, i, v), m + n - i, w), c);
    }
    if (lhs != rhs) return false;
  }
  return true;
}

bool checkTwistedJacobi(const FieldEngine& engine, const BasisKey& u, const BasisKey& v, std::int64_t l,
                        const Mode& m, const Mode& n, const Mode& maxDegree) {
  const ModuleBackend& M = engine.module();
  const VoaBackend& B = M.parent();
  if (!M.modeAllowed(B.sector(u), m) || !M.modeAllowed(B.sector(v), n))
    throw std::invalid_argument("checkTwistedJacobi: mode outside the allowed coset");
  for (const ModState& s : M.statesUpTo(maxDegree))
    if (!jacobiSides(engine, Element(u), Element(v), l, m, n, s).holds()) return false;
  return true;
}

bool checkGradingTransport(const FieldEngine& engine, const BasisKey& v, const Mode& p, const ModState& w) {
  const ModuleBackend& M = engine.module();
  const Mode expected = M.degree(w) + static_cast<std::int64_t>(v.weight()) - p - 1;
  for (const auto& [t, c] : engine.apply(v, p, w))
    if (M.degree(t) != expected) return false;
  return true;
}

}  // namespace twzhu
