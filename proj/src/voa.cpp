#include "twzhu/voa.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "twzhu/module.hpp"

namespace twzhu {

std::vector<std::vector<int>> partitions(int total, int minPart, int step, int residue) {
  std::vector<std::vector<int>> out;
  if (total < 0) return out;
  std::vector<int> current;
  auto ok = [&](int p) { return p >= minPart && ((p - residue) % step + step) % step == 0; };
  std::function<void(int, int)> rec = [&](int remaining, int maxPart) {
    if (remaining == 0) {
      out.push_back(current);
      return;
    }
    for (int p = std::min(remaining, maxPart); p >= minPart; --p) {
      if (!ok(p)) continue;
      current.push_back(p);
      rec(remaining - p, p);
      current.pop_back();
    }
  };
  rec(total, total);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<BasisKey> VoaBackend::basisUpTo(int maxWeight) const {
  std::vector<BasisKey> out;
  for (int w = 0; w <= maxWeight; ++w) {
    auto b = basis(w);
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

std::vector<BasisKey> HeisenbergBackend::basis(int weight) const {
  std::vector<BasisKey> out;
  for (auto& p : partitions(weight, 1)) out.push_back(BasisKey{std::move(p)});
  return out;
}

Element HeisenbergBackend::omega() const { return Element(BasisKey{{1, 1}}, Scalar(1, 2)); }

std::pair<std::int64_t, BasisKey> HeisenbergBackend::peel(const BasisKey& key) const {
  if (key.parts.empty()) throw std::invalid_argument("peel: vacuum has no generator factor");
  BasisKey rest{std::vector<int>(key.parts.begin() + 1, key.parts.end())};
  return {-key.parts.front(), rest};
}

std::unique_ptr<ModuleBackend> HeisenbergBackend::makeSelfModule() const {
  return std::make_unique<OscillatorModule>(*this, false, Mode::integer(1 << 20, order()));
}

std::vector<BasisKey> VirasoroBackend::basis(int weight) const {
  std::vector<BasisKey> out;
  for (auto& p : partitions(weight, 2)) out.push_back(BasisKey{std::move(p)});
  return out;
}

std::pair<std::int64_t, BasisKey> VirasoroBackend::peel(const BasisKey& key) const {
  if (key.parts.empty()) throw std::invalid_argument("peel: vacuum has no generator factor");
  BasisKey rest{std::vector<int>(key.parts.begin() + 1, key.parts.end())};
  // L(-n) = omega_{1-n}
  return {1 - key.parts.front(), rest};
}

std::unique_ptr<ModuleBackend> VirasoroBackend::makeSelfModule() const {
  return std::make_unique<VirasoroHighestWeightModule>(*this, Scalar(0), Mode::integer(1 << 20, order()));
}

std::map<Grade, Element> homogeneousComponents(const VoaBackend& backend, const Element& v) {
  std::map<Grade, Element> out;
  for (const auto& [k, c] : v) out[backend.grade(k)].add(k, c);
  return out;
}

int maxWeight(const Element& v) {
  int w = -1;
  for (const auto& [k, c] : v) w = std::max(w, k.weight());
  return w;
}

}  // namespace twzhu
