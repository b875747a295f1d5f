#pragma once

// Vertex operators on modules, generated from the primitive generator action
// by the downward recursion forced by the (twisted) Jacobi identity. The same
// engine computes the products u_i v of V itself (V as a module over itself).

#include <cstdint>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "twzhu/linalg.hpp"
#include "twzhu/module.hpp"
#include "twzhu/voa.hpp"

namespace twzhu {

class VertexAlgebra;

class FieldEngine {
 public:
  FieldEngine(const VertexAlgebra& voa, const ModuleBackend& module) : voa_(voa), module_(module) {}
  FieldEngine(const FieldEngine&) = delete;
  FieldEngine& operator=(const FieldEngine&) = delete;

  const ModuleBackend& module() const { return module_; }
  const VertexAlgebra& algebra() const { return voa_; }

  /// u_p w for a basis key u and a basis state w.
  ModuleVector apply(const BasisKey& u, const Mode& p, const ModState& w) const;
  ModuleVector apply(const Element& u, const Mode& p, const ModState& w) const;
  ModuleVector apply(const Element& u, const Mode& p, const ModuleVector& w) const;

  std::size_t cacheSize() const;

 private:
  ModuleVector compute(const BasisKey& u, const Mode& p, const ModState& w) const;

  struct CacheKey {
    std::vector<int> key;
    std::int64_t mode;
    std::vector<int> state;
    bool operator==(const CacheKey&) const = default;
  };
  struct CacheHash {
    std::size_t operator()(const CacheKey& k) const noexcept;
  };

  const VertexAlgebra& voa_;
  const ModuleBackend& module_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<CacheKey, ModuleVector, CacheHash> cache_;
};

/// A vertex operator algebra backend together with its self-module engine.
/// Instances are created through the factory functions and never move.
class VertexAlgebra {
 public:
  explicit VertexAlgebra(std::unique_ptr<VoaBackend> backend);
  VertexAlgebra(const VertexAlgebra&) = delete;
  VertexAlgebra& operator=(const VertexAlgebra&) = delete;

  static std::shared_ptr<const VertexAlgebra> heisenberg();
  static std::shared_ptr<const VertexAlgebra> virasoro(const Scalar& c);

  const VoaBackend& backend() const { return *backend_; }
  int order() const { return backend_->order(); }
  const ModuleBackend& selfModule() const { return *self_; }
  const FieldEngine& selfEngine() const { return *engine_; }

  Element vacuum() const { return backend_->vacuum(); }
  Element omega() const { return backend_->omega(); }
  Mode mode(std::int64_t i) const { return Mode::integer(i, order()); }

  /// u_i v.
  Element modeProduct(const BasisKey& u, std::int64_t i, const BasisKey& v) const;
  Element modeProduct(const Element& u, std::int64_t i, const Element& v) const;
  /// L(n) v = omega_{n+1} v.
  Element virasoroMode(std::int64_t n, const Element& v) const;

 private:
  std::unique_ptr<VoaBackend> backend_;
  std::unique_ptr<ModuleBackend> self_;
  std::unique_ptr<FieldEngine> engine_;
};

/// All modes of a fixed u on a module: p -> u_p.
class ModeOperatorFamily {
 public:
  ModeOperatorFamily(const FieldEngine& engine, Element u) : engine_(engine), u_(std::move(u)) {}

  const Element& vector() const { return u_; }
  ModuleVector apply(const Mode& p, const ModuleVector& w) const { return engine_.apply(u_, p, w); }
  /// Matrix of u_p on the states of degree <= the module's truncation:
  /// column j is the image of the j-th state. Throws TruncationError when an
  /// image leaves the truncated space.
  std::vector<ModuleVector> matrix(const Mode& p) const;

 private:
  const FieldEngine& engine_;
  Element u_;
};

/// The field-action family of u on the engine's module.
inline ModeOperatorFamily buildFieldAction(const FieldEngine& engine, Element u) {
  return ModeOperatorFamily(engine, std::move(u));
}

/// Largest degree occurring in w, as a mode; nullopt for w = 0.
std::optional<Mode> maxDegree(const ModuleBackend& module, const ModuleVector& w);

}  // namespace twzhu
