#pragma once

// Vertex operator algebra backends: basis keys, elements and the two shipped
// instances (rank-one Heisenberg with the reflection automorphism, and the
// universal Virasoro vacuum algebra).

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "twzhu/combination.hpp"
#include "twzhu/scalar.hpp"

namespace twzhu {

/// Canonical label of a PBW basis vector of V. The parts are weakly
/// decreasing; for the Heisenberg backend {n_1,...,n_k} encodes
/// a(-n_1)...a(-n_k)|0>, for Virasoro it encodes L(-n_1)...L(-n_k)|0>.
struct BasisKey {
  std::vector<int> parts;

  int weight() const { return std::accumulate(parts.begin(), parts.end(), 0); }
  bool isVacuum() const { return parts.empty(); }

  friend bool operator==(const BasisKey&, const BasisKey&) = default;
  /// Graded, then lexicographic on the parts.
  friend std::strong_ordering operator<=>(const BasisKey& a, const BasisKey& b) {
    if (auto c = a.weight() <=> b.weight(); c != 0) return c;
    return a.parts <=> b.parts;
  }
};

using Element = Combination<BasisKey>;

class ModuleBackend;

/// Weight (L(0)-eigenvalue) and sector (g-eigenvalue label) of a
/// homogeneous component.
struct Grade {
  int weight = 0;
  int sector = 0;
  friend auto operator<=>(const Grade&, const Grade&) = default;
};

class VoaBackend {
 public:
  virtual ~VoaBackend() = default;

  virtual std::string name() const = 0;
  /// Order T of the automorphism g.
  virtual int order() const = 0;
  virtual Scalar centralCharge() const = 0;
  /// The r with g(key) = exp(-2 pi i r / T) key.
  virtual int sector(const BasisKey& key) const = 0;
  /// Basis of V_n in increasing key order.
  virtual std::vector<BasisKey> basis(int weight) const = 0;
  virtual Element omega() const = 0;

  /// Strong generator a whose modes act primitively on every module.
  virtual BasisKey generator() const = 0;
  int generatorWeight() const { return generator().weight(); }
  int generatorSector() const { return sector(generator()); }
  /// Splits a non-vacuum key as a_l b with a the generator.
  virtual std::pair<std::int64_t, BasisKey> peel(const BasisKey& key) const = 0;

  /// Letter used in text forms ('a' or 'L') and the shift between the letter
  /// index and the generator's field mode: letter[k] = a_{k + shift}.
  virtual char letter() const = 0;
  virtual int letterShift() const = 0;

  virtual std::unique_ptr<ModuleBackend> makeSelfModule() const = 0;

  Element vacuum() const { return Element(BasisKey{}); }
  int weight(const BasisKey& key) const { return key.weight(); }
  Grade grade(const BasisKey& key) const { return {key.weight(), sector(key)}; }
  /// All keys of weight <= maxWeight, graded order.
  std::vector<BasisKey> basisUpTo(int maxWeight) const;
};

/// Rank-one free boson M(1), omega = 1/2 a(-1)^2|0>, c = 1, with the
/// automorphism a -> -a of order 2.
class HeisenbergBackend final : public VoaBackend {
 public:
  std::string name() const override { return "heisenberg"; }
  int order() const override { return 2; }
  Scalar centralCharge() const override { return Scalar(1); }
  int sector(const BasisKey& key) const override { return static_cast<int>(key.parts.size() % 2); }
  std::vector<BasisKey> basis(int weight) const override;
  Element omega() const override;
  BasisKey generator() const override { return BasisKey{{1}}; }
  std::pair<std::int64_t, BasisKey> peel(const BasisKey& key) const override;
  char letter() const override { return 'a'; }
  int letterShift() const override { return 0; }
  std::unique_ptr<ModuleBackend> makeSelfModule() const override;
};

/// Universal Virasoro vacuum algebra at central charge c, with g = id.
class VirasoroBackend final : public VoaBackend {
 public:
  explicit VirasoroBackend(Scalar c) : c_(std::move(c)) {}
  std::string name() const override { return "virasoro"; }
  int order() const override { return 1; }
  Scalar centralCharge() const override { return c_; }
  int sector(const BasisKey&) const override { return 0; }
  std::vector<BasisKey> basis(int weight) const override;
  Element omega() const override { return Element(BasisKey{{2}}); }
  BasisKey generator() const override { return BasisKey{{2}}; }
  std::pair<std::int64_t, BasisKey> peel(const BasisKey& key) const override;
  char letter() const override { return 'L'; }
  int letterShift() const override { return 1; }
  std::unique_ptr<ModuleBackend> makeSelfModule() const override;

 private:
  Scalar c_;
};

/// Partitions of `total` into parts >= minPart with parts congruent to
/// `residue` mod `step` (step = 1 means no congruence condition), each
/// returned weakly decreasing.
std::vector<std::vector<int>> partitions(int total, int minPart, int step = 1, int residue = 0);

/// Splits an element into its (weight, sector)-homogeneous components.
std::map<Grade, Element> homogeneousComponents(const VoaBackend& backend, const Element& v);

/// Largest weight occurring in v, or -1 for v = 0.
int maxWeight(const Element& v);

}  // namespace twzhu
