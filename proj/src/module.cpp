#include "twzhu/module.hpp"

#include <algorithm>
#include <stdexcept>

namespace twzhu {

std::vector<ModState> ModuleBackend::statesUpTo(const Mode& maxDegree) const {
  std::vector<ModState> out;
  for (std::int64_t s = 0; s <= maxDegree.scaled() * order() / maxDegree.order(); ++s) {
    auto block = states(Mode::fromScaled(s, order()));
    out.insert(out.end(), block.begin(), block.end());
  }
  return out;
}

std::string ModuleBackend::stateText(const ModState& w) const {
  std::string out;
  for (int part : w.parts) {
    out += parent_.letter();
    out += '[' + (-partMode(part)).toString() + ']';
  }
  return out + ket();
}

OscillatorModule::OscillatorModule(const VoaBackend& parent, bool twisted, Mode truncation)
    : ModuleBackend(parent, truncation), twisted_(twisted) {
  if (parent.name() != "heisenberg") throw std::invalid_argument("OscillatorModule needs the Heisenberg backend");
}

ModuleVector OscillatorModule::applyGenerator(const Mode& p, const ModState& w) const {
  if (!modeAllowed(parent().generatorSector(), p)) return {};
  // Creation number of a(p) in units of 1/denominator.
  const std::int64_t c = -p.scaled() * denominator() / order();
  if (c == 0) return {};
  if (c > 0) {
    ModState out = w;
    auto pos = std::find_if(out.parts.begin(), out.parts.end(), [&](int x) { return x < c; });
    out.parts.insert(pos, static_cast<int>(c));
    return ModuleVector(std::move(out));
  }
  const int target = static_cast<int>(-c);
  const auto count = std::count(w.parts.begin(), w.parts.end(), target);
  if (count == 0) return {};
  ModState out = w;
  out.parts.erase(std::find(out.parts.begin(), out.parts.end(), target));
  return ModuleVector(std::move(out), p.value() * Scalar(static_cast<long>(count)));
}

std::vector<ModState> OscillatorModule::states(const Mode& degree) const {
  const std::int64_t num = degree.scaled() * denominator();
  if (num < 0 || num % degree.order() != 0) return {};
  const int total = static_cast<int>(num / degree.order());
  std::vector<ModState> out;
  for (auto& p : twisted_ ? partitions(total, 1, 2, 1) : partitions(total, 1))
    out.push_back(ModState{std::move(p)});
  return out;
}

ModuleVector VirasoroHighestWeightModule::applyGenerator(const Mode& p, const ModState& w) const {
  if (!p.isInteger()) return {};
  return applyL(p.toInteger() - 1, w);
}

std::vector<ModState> VirasoroHighestWeightModule::states(const Mode& degree) const {
  if (!degree.isInteger() || degree < 0) return {};
  std::vector<ModState> out;
  for (auto& p : partitions(static_cast<int>(degree.toInteger()), minPart())) out.push_back(ModState{std::move(p)});
  return out;
}

ModuleVector VirasoroHighestWeightModule::applyL(std::int64_t n, const ModState& w) const {
  {
    std::lock_guard lock(mutex_);
    auto it = cache_.find({n, w});
    if (it != cache_.end()) return it->second;
  }
  ModuleVector result;
  if (w.parts.empty()) {
    if (n <= -minPart()) {
      result.add(ModState{{static_cast<int>(-n)}}, Scalar(1));
    } else if (n == 0) {
      result.add(w, h_);
    }
  } else {
    const int first = w.parts.front();
    ModState rest{std::vector<int>(w.parts.begin() + 1, w.parts.end())};
    if (-n >= first) {
      ModState out = w;
      out.parts.insert(out.parts.begin(), static_cast<int>(-n));
      result.add(out, Scalar(1));
    } else {
      // L(n) L(-f) = L(-f) L(n) + (n + f) L(n - f) + delta_{n,f} (n^3 - n)/12 c
      for (const auto& [s, c] : applyL(n, rest)) result.addScaled(applyL(-first, s), c);
      if (n + first != 0) result.addScaled(applyL(n - first, rest), Scalar(n + first));
      if (n == first) {
        Scalar central = Scalar(n * n * n - n, 12) * c_;
        result.add(rest, central);
      }
    }
  }
  std::lock_guard lock(mutex_);
  cache_.emplace(std::make_pair(n, w), result);
  return result;
}

std::vector<std::unique_ptr<ModuleBackend>> makeTwistedModules(const VoaBackend& backend, Mode truncation) {
  std::vector<std::unique_ptr<ModuleBackend>> out;
  if (backend.name() == "heisenberg") {
    out.push_back(std::make_unique<OscillatorModule>(backend, true, truncation));
  } else if (backend.name() == "virasoro") {
    for (const Scalar& h : {Scalar(0), Scalar(1, 2), Scalar(1), Scalar(2), Scalar(3)})
      out.push_back(std::make_unique<VirasoroHighestWeightModule>(backend, h, truncation));
  } else {
    throw std::invalid_argument("no twisted modules known for backend " + backend.name());
  }
  return out;
}

}  // namespace twzhu
