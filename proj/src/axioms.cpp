#include "twzhu/axioms.hpp"

#include <algorithm>

namespace twzhu {

IdentitySides jacobiSides(const FieldEngine& engine, const Element& u, const Element& v, std::int64_t l,
                          const Mode& m, const Mode& n, const ModState& w) {
  const ModuleBackend& M = engine.module();
  const VertexAlgebra& voa = engine.algebra();
  const Mode dw = M.degree(w);
  const std::int64_t wu = maxWeight(u), wv = maxWeight(v);
  const Mode lm = Mode::integer(l, m.order());
  IdentitySides out;
  if (u.isZero() || v.isZero()) return out;

  const ModuleVector wv1(w);
  for (std::int64_t i = 0;; ++i) {
    const bool first = n + i <= dw + wv - 1;
    const bool second = m + i <= dw + wu - 1;
    if (!first && !second) break;
    if (l >= 0 && i > l) break;
    const Scalar c = binomial(lm, static_cast<int>(i)) * Scalar(signPower(i));
    if (first) out.lhs.addScaled(engine.apply(u, m + l - i, engine.apply(v, n + i, wv1)), c);
    if (second)
      out.lhs.addScaled(engine.apply(v, n + l - i, engine.apply(u, m + i, wv1)), -c * Scalar(signPower(l)));
  }
  for (std::int64_t i = 0; l + i < wu + wv; ++i) {
    const Scalar c = binomial(m, static_cast<int>(i));
    if (c.isZero()) {
      if (m.isInteger() && m >= 0) break;
      continue;
    }
    Element uv = voa.modeProduct(u, l + i, v);
    if (uv.isZero()) continue;
    out.rhs.addScaled(engine.apply(uv, m + n - i, wv1), c);
  }
  return out;
}

bool checkJacobiOnV(const VertexAlgebra& voa, const Element& u, const Element& v, const Element& w,
                    std::int64_t l, std::int64_t m, std::int64_t n) {
  for (const auto& [k, c] : w) {
    if (!jacobiSides(voa.selfEngine(), u, v, l, voa.mode(m), voa.mode(n), ModState{k.parts}).holds())
      return false;
  }
  return true;
}

bool checkDerivativeAxiom(const VertexAlgebra& voa, const Element& u, std::int64_t n, const Element& v) {
  Element lhs = voa.modeProduct(voa.virasoroMode(-1, u), n, v);
  Element rhs = voa.modeProduct(u, n - 1, v) * Scalar(-n);
  return lhs == rhs;
}

bool checkAutomorphism(const VertexAlgebra& voa, const Element& u, const Element& v, std::int64_t i) {
  const VoaBackend& B = voa.backend();
  const int T = B.order();
  for (const auto& [ku, cu] : u)
    for (const auto& [kv, cv] : v) {
      const int expected = (B.sector(ku) + B.sector(kv)) % T;
      for (const auto& [k, c] : voa.modeProduct(ku, i, kv))
        if (B.sector(k) != expected) return false;
    }
  return true;
}

bool checkVacuumAxiom(const VertexAlgebra& voa, const Element& v, std::int64_t n) {
  Element got = voa.modeProduct(voa.vacuum(), n, v);
  return n == -1 ? got == v : got.isZero();
}

bool checkCreationAxiom(const VertexAlgebra& voa, const Element& u, std::int64_t n) {
  Element got = voa.modeProduct(u, n, voa.vacuum());
  if (n == -1) return got == u;
  if (n >= 0) return got.isZero();
  return true;
}

bool checkGrading(const VertexAlgebra& voa, const BasisKey& u, std::int64_t i, const BasisKey& v) {
  const std::int64_t expected = u.weight() + v.weight() - i - 1;
  for (const auto& [k, c] : voa.modeProduct(u, i, v))
    if (k.weight() != expected) return false;
  return true;
}

bool checkVirasoroRelation(const VertexAlgebra& voa, std::int64_t m, std::int64_t n, const Element& v) {
  Element lhs = voa.virasoroMode(m, voa.virasoroMode(n, v)) - voa.virasoroMode(n, voa.virasoroMode(m, v));
  Element rhs = voa.virasoroMode(m + n, v) * Scalar(m - n);
  if (m + n == 0) rhs.addScaled(v, Scalar(m * m * m - m, 12) * voa.backend().centralCharge());
  return lhs == rhs;
}

bool checkL0Grading(const VertexAlgebra& voa, const BasisKey& v) {
  Element e(v);
  return voa.virasoroMode(0, e) == e * Scalar(v.weight());
}

bool checkSkewSymmetry(const VertexAlgebra& voa, const BasisKey& u, std::int64_t n, const BasisKey& v) {
  Element lhs = voa.modeProduct(u, n, v);
  Element rhs;
  const std::int64_t top = u.weight() + v.weight();
  for (std::int64_t j = 0; n + j < top; ++j) {
    Element term = voa.modeProduct(v, n + j, u);
    Scalar fact(1);
    for (std::int64_t s = 0; s < j; ++s) {
      term = voa.virasoroMode(-1, term);
      fact *= Scalar(s + 1);
    }
    rhs.addScaled(term, Scalar(signPower(n + j + 1)) / fact);
  }
  return lhs == rhs;
}

}  // namespace twzhu
