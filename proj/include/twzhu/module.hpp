#pragma once

// Module backends: graded state spaces with primitive generator actions.

#include <compare>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

#include "twzhu/combination.hpp"
#include "twzhu/scalar.hpp"
#include "twzhu/voa.hpp"

namespace twzhu {

/// A PBW state of a module. Parts are positive creation numbers in units of
/// 1/denominator() of the owning module, weakly decreasing.
struct ModState {
  std::vector<int> parts;

  int total() const { return std::accumulate(parts.begin(), parts.end(), 0); }
  bool isTop() const { return parts.empty(); }

  friend bool operator==(const ModState&, const ModState&) = default;
  friend std::strong_ordering operator<=>(const ModState& a, const ModState& b) {
    if (auto c = a.total() <=> b.total(); c != 0) return c;
    return a.parts <=> b.parts;
  }
};

using ModuleVector = Combination<ModState>;

/// Raised when an operator matrix would need states beyond the module's
/// truncation degree.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ModuleBackend {
 public:
  ModuleBackend(const VoaBackend& parent, Mode truncation)
      : parent_(parent), truncation_(truncation) {}
  virtual ~ModuleBackend() = default;
  ModuleBackend(const ModuleBackend&) = delete;
  ModuleBackend& operator=(const ModuleBackend&) = delete;

  const VoaBackend& parent() const { return parent_; }
  int order() const { return parent_.order(); }

  virtual std::string name() const = 0;
  /// True if modes of u in V^r live in r/T + Z (g-twisted); false if all
  /// modes are integral (an ordinary module).
  virtual bool twisted() const = 0;
  /// Units of ModState parts.
  virtual int denominator() const = 0;
  /// Text of the top state, e.g. "|0>" or "|tw>".
  virtual std::string ket() const = 0;

  /// Generator field mode a_p on a basis state.
  virtual ModuleVector applyGenerator(const Mode& p, const ModState& w) const = 0;
  /// Basis of the degree-d subspace in increasing order.
  virtual std::vector<ModState> states(const Mode& degree) const = 0;

  Mode degree(const ModState& w) const {
    return Mode::fromScaled(static_cast<std::int64_t>(w.total()) * order() / denominator(), order());
  }
  std::vector<ModState> statesUpTo(const Mode& maxDegree) const;

  /// r/T for twisted modules, 0 otherwise.
  Mode modeOffset(int sector) const {
    return twisted() ? Mode::fromScaled(sector, order()) : Mode::integer(0, order());
  }
  /// Whether a vector of sector r has a mode with index p on this module.
  bool modeAllowed(int sector, const Mode& p) const { return (p - modeOffset(sector)).isInteger(); }

  /// Truncation degree k_max used when operators are materialized as matrices.
  const Mode& truncation() const { return truncation_; }

  /// The word of letter modes producing w from the top state, e.g.
  /// "a[-3/2]a[-1/2]|tw>".
  std::string stateText(const ModState& w) const;
  /// Letter mode letter[k] applied to w (k is a letter index, not a field mode).
  ModuleVector applyLetter(const Mode& k, const ModState& w) const {
    return applyGenerator(k + static_cast<std::int64_t>(parent_.letterShift()), w);
  }
  /// Creation number encoded by a part, as a mode value.
  Mode partMode(int part) const { return Mode::fromScaled(static_cast<std::int64_t>(part) * order() / denominator(), order()); }

 private:
  const VoaBackend& parent_;
  Mode truncation_;
};

/// Heisenberg Fock space. Untwisted: oscillators a(n), n in Z, with a(0) = 0.
/// Twisted: oscillators a(n), n in 1/2 + Z. In both cases
/// [a(m), a(n)] = m delta_{m+n,0}.
class OscillatorModule final : public ModuleBackend {
 public:
  OscillatorModule(const VoaBackend& parent, bool twisted, Mode truncation);
  std::string name() const override { return twisted_ ? "twisted-fock" : "fock"; }
  bool twisted() const override { return twisted_; }
  int denominator() const override { return twisted_ ? 2 : 1; }
  std::string ket() const override { return twisted_ ? "|tw>" : "|0>"; }
  ModuleVector applyGenerator(const Mode& p, const ModState& w) const override;
  std::vector<ModState> states(const Mode& degree) const override;

 private:
  bool twisted_;
};

/// Highest-weight Virasoro module of central charge c generated by v_h with
/// L(n)v_h = 0 for n > 0 and L(0)v_h = h v_h. For h = 0 this is the vacuum
/// module (L(-1)|0> = 0, PBW parts >= 2); otherwise the Verma module (parts >= 1).
class VirasoroHighestWeightModule final : public ModuleBackend {
 public:
  VirasoroHighestWeightModule(const VoaBackend& parent, Scalar h, Mode truncation)
      : ModuleBackend(parent, truncation), c_(parent.centralCharge()), h_(std::move(h)) {}
  std::string name() const override { return isVacuum() ? "virasoro-vacuum" : "virasoro-verma(h=" + h_.toString() + ")"; }
  bool twisted() const override { return false; }
  int denominator() const override { return 1; }
  std::string ket() const override { return isVacuum() ? "|0>" : "|h=" + h_.toString() + ">"; }
  ModuleVector applyGenerator(const Mode& p, const ModState& w) const override;
  std::vector<ModState> states(const Mode& degree) const override;

  const Scalar& highestWeight() const { return h_; }
  bool isVacuum() const { return h_.isZero(); }
  /// L(n) on a PBW state, normal ordered.
  ModuleVector applyL(std::int64_t n, const ModState& w) const;

 private:
  int minPart() const { return isVacuum() ? 2 : 1; }

  Scalar c_;
  Scalar h_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<std::int64_t, ModState>, ModuleVector> cache_;
};

/// Modules on which the algebra's g-twisted checks run: the twisted Fock
/// space for Heisenberg; for Virasoro the vacuum module and the Verma
/// modules with h in {1/2, 1, 2, 3}.
std::vector<std::unique_ptr<ModuleBackend>> makeTwistedModules(const VoaBackend& backend, Mode truncation);

inline Element toElement(const ModuleVector& v) {
  Element out;
  for (const auto& [s, c] : v) out.add(BasisKey{s.parts}, c);
  return out;
}

inline ModuleVector toSelfVector(const Element& v) {
  ModuleVector out;
  for (const auto& [k, c] : v) out.add(ModState{k.parts}, c);
  return out;
}

}  // namespace twzhu
