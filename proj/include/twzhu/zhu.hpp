#pragma once

// Twisted Zhu products *^n_{m,p} and o^n_m, the spans O', O'', O''' cut down to
// finite weight slices, the truncated quotients A_{g,n}(V) and A_{g,n,m}(V),
// their bimodule actions, the induced module built from them, and the
// annihilation check against module actions.

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "twzhu/field.hpp"
#include "twzhu/linalg.hpp"
#include "twzhu/text.hpp"

namespace twzhu {

/// n, m, p in (1/T)N.
struct ZhuParams {
  Mode n, m, p;
  /// Normalizes to denominator T. Throws std::invalid_argument unless all
  /// three lie in (1/T)N.
  static ZhuParams make(const Mode& n, const Mode& m, const Mode& p, int order);
  std::string toString() const;
  friend auto operator<=>(const ZhuParams&, const ZhuParams&) = default;
  friend bool operator==(const ZhuParams&, const ZhuParams&) = default;
};

/// Res_z (1+z)^exponent z^{-pole-1} Y(u, z) v = sum_k C(exponent, k) u_{k-pole-1} v.
Element residue(const VertexAlgebra& voa, const BasisKey& u, const Element& v, const Scalar& exponent,
                std::int64_t pole);

/// Product calculus over one algebra, with basis-level memoization.
class ZhuCalculus {
 public:
  explicit ZhuCalculus(std::shared_ptr<const VertexAlgebra> voa) : voa_(std::move(voa)) {}

  const VertexAlgebra& algebra() const { return *voa_; }
  std::shared_ptr<const VertexAlgebra> algebraPtr() const { return voa_; }
  int order() const { return voa_->order(); }

  /// u *^n_{m,p} v, extended bilinearly over homogeneous components.
  Element star(const Element& u, const Element& v, const ZhuParams& params) const;
  Element star(const BasisKey& u, const BasisKey& v, const ZhuParams& params) const;
  /// u o^n_m v.
  Element circ(const Element& u, const Element& v, const Mode& n, const Mode& m) const;
  Element circ(const BasisKey& u, const BasisKey& v, const Mode& n, const Mode& m) const;
  /// (L(-1) + L(0) + m - n) u.
  Element lGenerator(const Element& u, const Mode& n, const Mode& m) const;

 private:
  std::shared_ptr<const VertexAlgebra> voa_;
  mutable std::mutex mutex_;
  mutable std::map<std::tuple<BasisKey, BasisKey, ZhuParams>, Element> starCache_;
  mutable std::map<std::tuple<BasisKey, BasisKey, Mode, Mode>, Element> circCache_;
};

inline Element starProduct(const ZhuCalculus& calc, const Element& u, const Element& v, const ZhuParams& params) {
  return calc.star(u, v, params);
}
inline Element circProduct(const ZhuCalculus& calc, const Element& u, const Element& v, const Mode& n,
                           const Mode& m) {
  return calc.circ(u, v, n, m);
}
inline Element lGenerator(const ZhuCalculus& calc, const Element& u, const Mode& n, const Mode& m) {
  return calc.lGenerator(u, n, m);
}

/// Cutoffs of the finite generator families.
///  N: weight slice V_{<=N} in which spans live.
///  G: weight bound. O' products u o v use wt u, wt v <= G individually;
///     O'' and O''' generators use the total weight of their inputs <= G.
///  P: bound on the auxiliary indices p1, p2, p3 in (1/T)N.
/// L-generators are taken for every u with wt u <= N - 1.
struct OCutoffs {
  int N = 4;
  int G = 4;
  Mode P;
};

enum class OKind { Circ, LGen, Assoc, Induced };
std::string toString(OKind kind);

/// One generator of the O-span with a human-readable recipe.
struct OGenerator {
  OKind kind;
  std::string recipe;
  Element value;
};

/// Enumerates generators of O_{g,n,m}(V) under the cutoffs. For n = m only
/// O' is produced unless includeHigher is set. The callback may return false
/// to stop the enumeration. Generators are produced in a deterministic order.
void enumerateOGenerators(const ZhuCalculus& calc, const Mode& n, const Mode& m, const OCutoffs& cut,
                          bool includeHigher, const std::function<bool(const OGenerator&)>& visit,
                          bool lGeneratorsUpToN = true);

/// Span of all enumerated generators lying in V_{<=N}. Generators leaving
/// the slice are discarded. The result is contained in O_{g,n,m}(V) and V_{<=N}.
Subspace<BasisKey> buildOSpan(const ZhuCalculus& calc, const Mode& n, const Mode& m, const OCutoffs& cut);

/// One entry of a product or action table.
struct TableEntry {
  BasisKey left;
  BasisKey right;
  /// Reduced class representative, or nullopt when the product leaves the
  /// weight slice (inconclusive).
  std::optional<Element> value;
};

/// V_{<=N} modulo the computed inner approximation of O_{g,n,m}(V).
class QuotientAlgebra {
 public:
  QuotientAlgebra(const ZhuCalculus& calc, const Mode& n, const Mode& m, const OCutoffs& cut);

  const Mode& n() const { return n_; }
  const Mode& m() const { return m_; }
  const OCutoffs& cutoffs() const { return cut_; }
  const Subspace<BasisKey>& oApprox() const { return span_; }
  std::size_t sliceDim() const { return span_.slice().dim(); }
  std::size_t spanRank() const { return span_.rank(); }
  /// Keys spanning the quotient, ascending.
  std::vector<BasisKey> basis() const;

  bool inSlice(const Element& v) const { return span_.slice().inSlice(v); }
  /// Canonical representative of v + O, or nullopt if v leaves the slice.
  std::optional<Element> classOf(const Element& v) const;

  /// Products of basis representatives under *_{g,n} (requires n = m).
  std::vector<TableEntry> multiplicationTable(const ZhuCalculus& calc) const;
  /// Left action a *^n_{m,n} x of A_{g,n} basis elements (leftBasis) on the
  /// bimodule basis.
  std::vector<TableEntry> leftActionTable(const ZhuCalculus& calc, const std::vector<BasisKey>& leftBasis) const;
  /// Right action x *^n_{m,m} b of A_{g,m} basis elements.
  std::vector<TableEntry> rightActionTable(const ZhuCalculus& calc, const std::vector<BasisKey>& rightBasis) const;

 private:
  Mode n_, m_;
  OCutoffs cut_;
  Subspace<BasisKey> span_;
};

/// Quotients indexed by (n, m), all at the same cutoffs.
class QuotientFamily {
 public:
  QuotientFamily(const ZhuCalculus& calc, OCutoffs cut) : calc_(calc), cut_(std::move(cut)) {}
  /// Builds (n, m) at the family cutoffs if missing.
  const QuotientAlgebra& build(const Mode& n, const Mode& m);
  /// Throws std::out_of_range if (n, m) has not been built.
  const QuotientAlgebra& at(const Mode& n, const Mode& m) const;
  bool has(const Mode& n, const Mode& m) const { return table_.count({n, m}) > 0; }
  const ZhuCalculus& calculus() const { return calc_; }

 private:
  const ZhuCalculus& calc_;
  OCutoffs cut_;
  std::map<std::pair<Mode, Mode>, std::unique_ptr<QuotientAlgebra>> table_;
};

/// u_p on the class of v in M(n) = A_{g,n,m}(V): the class of
/// u *^{n'}_{m,n} v in A_{g,n',m}(V) with n' = n + wt u - p - 1, or 0 when
/// n' < 0. Returns the target degree and class (nullopt when the product
/// leaves the target slice). Throws std::out_of_range when the target
/// quotient has not been built, std::invalid_argument for non-homogeneous u.
struct InducedImage {
  Mode degree;
  std::optional<Element> value;
};
InducedImage inducedModuleAction(const QuotientFamily& family, const Element& u, const Mode& p, const Element& v,
                                 const Mode& n, const Mode& m);

/// A generator x with o_{m-n}(x) w != 0 for a state w of degree <= m.
struct AnnihilationViolation {
  std::string recipe;
  std::string state;
  std::string image;
};
struct AnnihilationReport {
  Mode n, m;
  std::size_t generators = 0;
  std::map<OKind, std::size_t> byKind;
  std::size_t zeroGenerators = 0;
  std::vector<AnnihilationViolation> violations;
  bool passed() const { return violations.empty(); }
};

/// Checks o_{m-n}(x) w = 0 for every O', O'', O''' generator x (under G and P,
/// any weight) and every state w of degree <= m of the engine's module.
AnnihilationReport checkAnnihilation(const ZhuCalculus& calc, const FieldEngine& engine, const Mode& n,
                                     const Mode& m, int G, const Mode& P);

}  // namespace twzhu
