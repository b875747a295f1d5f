#include "twzhu/field.hpp"

#include <stdexcept>

namespace twzhu {

std::size_t FieldEngine::CacheHash::operator()(const CacheKey& k) const noexcept {
  std::size_t h = std::hash<std::int64_t>{}(k.mode);
  auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  for (int x : k.key) mix(static_cast<std::size_t>(x));
  mix(0xabcdefULL);
  for (int x : k.state) mix(static_cast<std::size_t>(x));
  return h;
}

std::size_t FieldEngine::cacheSize() const {
  std::lock_guard lock(mutex_);
  return cache_.size();
}

ModuleVector FieldEngine::apply(const BasisKey& u, const Mode& p, const ModState& w) const {
  if (p.order() != module_.order()) throw std::invalid_argument("mode order does not match the algebra");
  CacheKey ck{u.parts, p.scaled(), w.parts};
  {
    std::lock_guard lock(mutex_);
    auto it = cache_.find(ck);
    if (it != cache_.end()) return it->second;
  }
  ModuleVector r = compute(u, p, w);
  std::lock_guard lock(mutex_);
  cache_.emplace(std::move(ck), r);
  return r;
}

ModuleVector FieldEngine::apply(const Element& u, const Mode& p, const ModState& w) const {
  ModuleVector out;
  for (const auto& [k, c] : u) out.addScaled(apply(k, p, w), c);
  return out;
}

ModuleVector FieldEngine::apply(const Element& u, const Mode& p, const ModuleVector& w) const {
  ModuleVector out;
  for (const auto& [s, cs] : w)
    for (const auto& [k, ck] : u) out.addScaled(apply(k, p, s), cs * ck);
  return out;
}

ModuleVector FieldEngine::compute(const BasisKey& u, const Mode& q, const ModState& w) const {
  const VoaBackend& B = voa_.backend();
  if (u.isVacuum()) return q == -1 ? ModuleVector(w) : ModuleVector{};
  if (!module_.modeAllowed(B.sector(u), q)) return {};
  const Mode dw = module_.degree(w);
  // u_q maps degree d to d + wt u - q - 1; nothing lives below degree 0.
  if (dw + static_cast<std::int64_t>(u.weight()) - q - 1 < 0) return {};
  if (u == B.generator()) return module_.applyGenerator(q, w);

  // u = a_l b with a the generator. With m0 in the coset of a and
  // n0 = q - m0, the twisted Jacobi identity at (l, m0, n0) gives
  //   (a_l b)_q = sum_i (-1)^i C(l,i) (a_{m0+l-i} b_{n0+i} - (-1)^l b_{n0+l-i} a_{m0+i})
  //               - sum_{i>=1} C(m0,i) (a_{l+i} b)_{q-i},
  // where every a_{l+i} b has smaller weight than u.
  const auto [l, b] = B.peel(u);
  const BasisKey a = B.generator();
  const std::int64_t wa = a.weight(), wb = b.weight();
  const Mode m0 = module_.modeOffset(B.sector(a));
  const Mode n0 = q - m0;
  const Mode lm = Mode::integer(l, q.order());

  ModuleVector result;
  for (std::int64_t i = 0; n0 + i <= dw + wb - 1; ++i) {
    if (l >= 0 && i > l) break;
    Scalar c = binomial(lm, static_cast<int>(i)) * Scalar(signPower(i));
    ModuleVector x = apply(b, n0 + i, w);
    if (x.isZero()) continue;
    result.addScaled(apply(Element(a), m0 + l - i, x), c);
  }
  for (std::int64_t i = 0; m0 + i <= dw + wa - 1; ++i) {
    if (l >= 0 && i > l) break;
    Scalar c = binomial(lm, static_cast<int>(i)) * Scalar(-signPower(l) * signPower(i));
    ModuleVector x = apply(a, m0 + i, w);
    if (x.isZero()) continue;
    result.addScaled(apply(Element(b), n0 + l - i, x), c);
  }
  if (!(m0 == 0)) {
    for (std::int64_t i = 1; l + i < wa + wb; ++i) {
      Scalar c = -binomial(m0, static_cast<int>(i));
      if (c.isZero()) continue;
      Element ab = voa_.modeProduct(a, l + i, b);
      if (ab.isZero()) continue;
      result.addScaled(apply(ab, q - i, w), c);
    }
  }
  return result;
}

VertexAlgebra::VertexAlgebra(std::unique_ptr<VoaBackend> backend) : backend_(std::move(backend)) {
  self_ = backend_->makeSelfModule();
  engine_ = std::make_unique<FieldEngine>(*this, *self_);
}

std::shared_ptr<const VertexAlgebra> VertexAlgebra::heisenberg() {
  return std::make_shared<VertexAlgebra>(std::make_unique<HeisenbergBackend>());
}

std::shared_ptr<const VertexAlgebra> VertexAlgebra::virasoro(const Scalar& c) {
  return std::make_shared<VertexAlgebra>(std::make_unique<VirasoroBackend>(c));
}

Element VertexAlgebra::modeProduct(const BasisKey& u, std::int64_t i, const BasisKey& v) const {
  return toElement(engine_->apply(u, mode(i), ModState{v.parts}));
}

Element VertexAlgebra::modeProduct(const Element& u, std::int64_t i, const Element& v) const {
  return toElement(engine_->apply(u, mode(i), toSelfVector(v)));
}

Element VertexAlgebra::virasoroMode(std::int64_t n, const Element& v) const {
  return modeProduct(omega(), n + 1, v);
}

std::vector<ModuleVector> ModeOperatorFamily::matrix(const Mode& p) const {
  const ModuleBackend& M = engine_.module();
  std::vector<ModuleVector> cols;
  for (const ModState& s : M.statesUpTo(M.truncation())) {
    ModuleVector img = engine_.apply(u_, p, s);
    for (const auto& [t, c] : img) {
      if (M.degree(t) > M.truncation())
        throw TruncationError("u_" + p.toString() + " maps " + M.stateText(s) + " beyond degree " +
                              M.truncation().toString());
    }
    cols.push_back(std::move(img));
  }
  return cols;
}

std::optional<Mode> maxDegree(const ModuleBackend& module, const ModuleVector& w) {
  std::optional<Mode> best;
  for (const auto& [s, c] : w) {
    Mode d = module.degree(s);
    if (!best || d > *best) best = d;
  }
  return best;
}

}  // namespace twzhu
