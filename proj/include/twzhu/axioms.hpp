#pragma once

// Exact checks of the vertex operator algebra axioms on V itself.

#include <cstdint>

#include "twzhu/field.hpp"

namespace twzhu {

/// Both sides of the Jacobi identity at (l, m, n) applied to w:
///   sum_i (-1)^i C(l,i) (u_{m+l-i} v_{n+i} - (-1)^l v_{n+l-i} u_{m+i}) w
///   = sum_i C(m,i) (u_{l+i} v)_{m+n-i} w.
/// u and v must be sector-homogeneous with m, n in their cosets.
struct IdentitySides {
  ModuleVector lhs;
  ModuleVector rhs;
  bool holds() const { return lhs == rhs; }
};
IdentitySides jacobiSides(const FieldEngine& engine, const Element& u, const Element& v, std::int64_t l,
                          const Mode& m, const Mode& n, const ModState& w);

bool checkJacobiOnV(const VertexAlgebra& voa, const Element& u, const Element& v, const Element& w,
                    std::int64_t l, std::int64_t m, std::int64_t n);

/// (L(-1)u)_n v = -n u_{n-1} v.
bool checkDerivativeAxiom(const VertexAlgebra& voa, const Element& u, std::int64_t n, const Element& v);

/// For sector-homogeneous u, v: every nonzero component of u_i v lies in
/// sector(u) + sector(v) mod T.
bool checkAutomorphism(const VertexAlgebra& voa, const Element& u, const Element& v, std::int64_t i);

/// 1_n v = delta_{n,-1} v.
bool checkVacuumAxiom(const VertexAlgebra& voa, const Element& v, std::int64_t n);
/// u_n 1 = 0 for n >= 0 and u_{-1} 1 = u.
bool checkCreationAxiom(const VertexAlgebra& voa, const Element& u, std::int64_t n);
/// wt(u_i v) = wt u + wt v - i - 1 for basis keys u, v.
bool checkGrading(const VertexAlgebra& voa, const BasisKey& u, std::int64_t i, const BasisKey& v);
/// [L(m), L(n)] v = (m - n) L(m + n) v + (m^3 - m)/12 delta_{m+n,0} c v.
bool checkVirasoroRelation(const VertexAlgebra& voa, std::int64_t m, std::int64_t n, const Element& v);
/// L(0) acts on V_k as k.
bool checkL0Grading(const VertexAlgebra& voa, const BasisKey& v);
/// Skew symmetry u_n v = sum_j (-1)^{n+j+1} L(-1)^j/j! v_{n+j} u, an
/// independent route to u_n v (it peels v instead of u).
bool checkSkewSymmetry(const VertexAlgebra& voa, const BasisKey& u, std::int64_t n, const BasisKey& v);

}  // namespace twzhu
