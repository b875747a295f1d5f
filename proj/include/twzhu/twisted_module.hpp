#pragma once

// Operators o_n(v) on modules, outer approximations of Omega_n(M), and the
// commutator / twisted Jacobi checks.

#include <cstdint>
#include <optional>
#include <string>

#include "twzhu/axioms.hpp"
#include "twzhu/field.hpp"
#include "twzhu/linalg.hpp"

namespace twzhu {

/// o_n(v) w = v_{wt v - 1 + n} w, extended linearly over the weight
/// components of v. Components whose index leaves their coset act as zero.
ModuleVector oApply(const FieldEngine& engine, const Element& v, const Mode& n, const ModuleVector& w);

/// Matrix of o_n(v) on the module truncation (columns = images of states).
std::vector<ModuleVector> oOperator(const FieldEngine& engine, const Element& v, const Mode& n);

/// States of degree <= the module truncation killed by o_{n+i}(v) for every
/// basis vector v of weight <= testWeight and every 0 < i <= iMax in
/// (1/T)Z. Only finitely many conditions are imposed, so this contains
/// Omega_n(M) intersected with the truncation.
Subspace<ModState> omegaNApprox(const FieldEngine& engine, const Mode& n, int testWeight, const Mode& iMax);

/// [u_m, v_n] w = sum_i C(m,i) (u_i v)_{m+n-i} w on every state w of degree
/// <= maxDegree. Throws std::invalid_argument when m or n leaves its coset.
bool checkCommutator(const FieldEngine& engine, const BasisKey& u, const BasisKey& v, const Mode& m,
                     const Mode& n, const Mode& maxDegree);

/// Twisted Jacobi identity at (l, m, n) on every state of degree <= maxDegree.
bool checkTwistedJacobi(const FieldEngine& engine, const BasisKey& u, const BasisKey& v, std::int64_t l,
                        const Mode& m, const Mode& n, const Mode& maxDegree);

/// Grading transport: v_p w has degree deg w + wt v - p - 1 (or vanishes).
bool checkGradingTransport(const FieldEngine& engine, const BasisKey& v, const Mode& p, const ModState& w);

}  // namespace twzhu
