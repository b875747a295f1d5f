#pragma once

// The graded enveloping algebra U(V[g]): monomials in the generators
// J_m(u) = u(wt u + m - 1), their action on modules, the straightening
// procedure reducing a degree n - m monomial to a single J_{m-n}(u') modulo
// U_{n-m}^{-m-1/T}, and the equality test used by the verification suites.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "twzhu/field.hpp"
#include "twzhu/text.hpp"
#include "twzhu/zhu.hpp"

namespace twzhu {

/// J_mode(vec) with vec a basis key.
struct JFactor {
  Mode mode;
  BasisKey vec;
  friend bool operator==(const JFactor&, const JFactor&) = default;
  friend auto operator<=>(const JFactor&, const JFactor&) = default;
};

/// Product of J factors, left to right. The empty product is the identity.
struct UMonomial {
  std::vector<JFactor> factors;

  /// Sum of the factor modes (the degree is its negative).
  Mode modeSum(int order) const;
  friend bool operator==(const UMonomial&, const UMonomial&) = default;
  friend auto operator<=>(const UMonomial&, const UMonomial&) = default;
};

using UPoly = Combination<UMonomial>;

/// The working quotient U(V[g])_{n-m} / U(V[g])_{n-m}^{-m-1/T}.
struct FiltrationCtx {
  Mode n, m;
  /// A monomial is in the filtration ideal when its last mode exceeds m.
  bool inFiltration(const UMonomial& mono) const { return !mono.factors.empty() && mono.factors.back().mode > m; }
};

/// J_mode(u): the sector components of u whose coset contains mode.
UPoly jMap(const VoaBackend& backend, const Mode& mode, const Element& u);
/// Free product of two polynomials.
UPoly multiply(const UPoly& x, const UPoly& y);
/// Drops J_0(1) factors and zeroes monomials containing J_q(1) with q != 0.
UPoly normalizeVacuum(const UPoly& x);

/// Action on a module vector, factors applied right to left.
ModuleVector actOn(const FieldEngine& engine, const UPoly& x, const ModuleVector& w);

struct StraightenOptions {
  std::size_t stepBudget = 2'000'000;
};

/// Raised when straightening exceeds its step budget.
class StepBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reduces monomials of degree n - m to J_{m-n}(u') modulo the filtration.
/// The rewrite of the last two factors J_s(u) J_t(v) anchors the Jacobi
/// relation at mu = max{q in s + Z : q <= m}, l = s - mu - 1:
///   J_s(u)J_t(v) = -sum_{k>=1, t+k<=m} (-1)^k C(l,k) J_{s-k}(u)J_{t+k}(v)
///                 + sum_{i>=0} C(wt u + mu, i) J_{s+t}(u_{l+i} v)
/// (the terms with right factor J_{mu+1+i}(v) lie in the filtration).
class Straightener {
 public:
  Straightener(const VertexAlgebra& voa, FiltrationCtx ctx, StraightenOptions options = {});

  /// Throws std::invalid_argument if the mode sum is not m - n,
  /// StepBudgetExceeded if the budget runs out.
  Element straighten(const UMonomial& mono);
  Element straighten(const UPoly& x);

  const FiltrationCtx& context() const { return ctx_; }
  const VertexAlgebra& algebra() const { return voa_; }
  std::size_t steps() const { return steps_; }

 private:
  Element reduce(const UMonomial& mono);

  const VertexAlgebra& voa_;
  FiltrationCtx ctx_;
  StraightenOptions options_;
  std::size_t steps_ = 0;
  std::map<UMonomial, Element> memo_;
};

enum class Verdict { EqualProven, UnequalProven, Inconclusive };
std::string toString(Verdict v);

struct EqualityResult {
  Verdict verdict = Verdict::Inconclusive;
  /// Differing state and images, O-membership note, or the residual gap.
  std::string witness;
};

/// Decides x = y in the working quotient by two sound tests: differing
/// actions on a state of degree <= m of some module (unequal-proven), or
/// straighten(x) - straighten(y) in oSpan (equal-proven).
EqualityResult uEqualsModFiltration(const UPoly& x, const UPoly& y, Straightener& straightener,
                                    const std::vector<const FieldEngine*>& modules,
                                    const Subspace<BasisKey>& oSpan);

/// Def-style relation check on states of degree <= maxDegree:
///   sum_i (-1)^i C(l,i) (J_{s-i}(u)J_{t+i}(v) - (-1)^l J_{l+t-i}(v)J_{s+i-l}(u))
///   = sum_i C(s + wt u - l - 1, i) J_{s+t}(u_{l+i} v),
/// together with 1(i) = delta_{i,-1} for |i| <= 4. Throws
/// std::invalid_argument when s or t leaves its coset.
bool checkUnivRelation(const FieldEngine& engine, const BasisKey& u, const BasisKey& v, std::int64_t l,
                       const Mode& s, const Mode& t, const Mode& maxDegree);

/// phi_{n,m}(u) = J_{m-n}(u).
UPoly phi(const VoaBackend& backend, const FiltrationCtx& ctx, const Element& u);

/// Uniform random monomial of the given length whose mode sum is m - n,
/// with basis vectors of weight in [minWeight, maxWeight] and every mode
/// bounded by modeBound in absolute value (rounded down to (1/T)Z). Returns nullopt if no draw
/// succeeded within a fixed number of attempts.
std::optional<UMonomial> randomMonomial(std::mt19937_64& rng, const VoaBackend& backend, const FiltrationCtx& ctx,
                                        int length, int minWeight, int maxWeight, const Mode& modeBound);

// Text: monomial := jfactor (' * ' jfactor)*, jfactor := 'J[' rational '](' element ')'.
std::string formatMonomial(const VoaBackend& backend, const UMonomial& mono);
std::string formatUPoly(const VoaBackend& backend, const UPoly& x);
/// Parses a monomial whose factors may be arbitrary elements; expands
/// multilinearly and applies jMap to every factor.
UPoly parseMonomial(const VoaBackend& backend, std::string_view text);

/// Sub-verdict of the isomorphism verification.
struct SubVerdict {
  std::string name;
  std::size_t checked = 0;
  std::size_t proven = 0;
  std::size_t inconclusive = 0;
  std::size_t failed = 0;
  std::vector<std::string> notes;
  /// "fail" if anything failed, "inconclusive" if anything was undecided,
  /// "pass" otherwise.
  std::string verdict() const;
};

struct IsomorphismParams {
  OCutoffs cut;
  /// Weight bound on sampled u, v.
  int sampleWeight = 2;
  /// Random monomials drawn for surjectivity.
  int monomials = 20;
  std::uint64_t seed = 1;
  /// Bound on |mode| of random monomial factors.
  Mode modeBound = Mode::fromScaled(5, 2);
  /// Cap on the number of O-generators tested for well-definedness.
  std::size_t maxGenerators = 400;
};

struct IsomorphismReport {
  Mode n, m;
  SubVerdict wellDefined;
  SubVerdict multiplicative;
  SubVerdict surjective;
  SubVerdict injective;
};

/// (a) phi kills O-generators, (b) phi(u *^n_{m,m} v) = phi(u) J_0(v) and
/// phi(a *^n_{m,n} x) = J_0(a) phi(x), (c) random degree n - m monomials
/// straighten and the result acts like the monomial, (d) no nonzero
/// quotient basis class is proven to map to 0.
IsomorphismReport verifyIsomorphism(const ZhuCalculus& calc, const QuotientAlgebra& quotient,
                                    const std::vector<const FieldEngine*>& modules, const IsomorphismParams& params);

}  // namespace twzhu
