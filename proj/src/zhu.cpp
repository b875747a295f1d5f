#include "twzhu/zhu.hpp"

#include <algorithm>
#include <stdexcept>

#include "twzhu/twisted_module.hpp"

namespace twzhu {

namespace {

Mode normalized(const Mode& x, int order, const char* what) {
  Mode out = Mode::fromScalar(x.value(), order);
  if (out < 0) throw std::invalid_argument(std::string(what) + " = " + x.toString() + " is not in (1/T)N");
  return out;
}

std::vector<Mode> modeGrid(const Mode& bound, int order) {
  std::vector<Mode> out;
  for (std::int64_t s = 0; Mode::fromScaled(s, order) <= bound; ++s) out.push_back(Mode::fromScaled(s, order));
  return out;
}

std::vector<BasisKey> keysOfWeightAtMost(const std::vector<BasisKey>& keys, int bound) {
  std::vector<BasisKey> out;
  for (const auto& k : keys)
    if (k.weight() <= bound) out.push_back(k);
  return out;
}

}  // namespace

ZhuParams ZhuParams::make(const Mode& n, const Mode& m, const Mode& p, int order) {
  return ZhuParams{normalized(n, order, "n"), normalized(m, order, "m"), normalized(p, order, "p")};
}

std::string ZhuParams::toString() const {
  return "n=" + n.toString() + ",m=" + m.toString() + ",p=" + p.toString();
}

Element residue(const VertexAlgebra& voa, const BasisKey& u, const Element& v, const Scalar& exponent,
                std::int64_t pole) {
  Element out;
  for (const auto& [kv, cv] : v) {
    const std::int64_t top = static_cast<std::int64_t>(u.weight()) + kv.weight() + pole;
    for (std::int64_t k = 0; k <= top; ++k) {
      Scalar c = binomial(exponent, static_cast<int>(k));
      if (c.isZero()) continue;
      out.addScaled(voa.modeProduct(u, k - pole - 1, kv), c * cv);
    }
  }
  return out;
}

Element ZhuCalculus::star(const BasisKey& u, const BasisKey& v, const ZhuParams& params) const {
  auto key = std::make_tuple(u, v, params);
  {
    std::lock_guard lock(mutex_);
    if (auto it = starCache_.find(key); it != starCache_.end()) return it->second;
  }
  const int T = order();
  const int r = voa_->backend().sector(u);
  const auto& [n, m, p] = params;
  Element out;
  if (((p.bar() - n.bar() - r) % T + T) % T == 0) {
    const std::int64_t d = m.floor() + n.floor() - p.floor() - 1 + deltaIndicator(m.bar(), r, T) +
                           deltaIndicator(n.bar(), T - r, T);
    const Scalar exponent =
        Scalar(static_cast<long>(u.weight() - 1 + m.floor() + deltaIndicator(m.bar(), r, T))) + Scalar(r, T);
    const Element ev(v);
    for (std::int64_t i = 0; i <= p.floor(); ++i) {
      Scalar c = binomial(Scalar(static_cast<long>(d + i)), static_cast<int>(i)) * Scalar(signPower(i));
      if (c.isZero()) continue;
      out.addScaled(residue(*voa_, u, ev, exponent, d + i), c);
    }
  }
  std::lock_guard lock(mutex_);
  starCache_.emplace(std::move(key), out);
  return out;
}

Element ZhuCalculus::star(const Element& u, const Element& v, const ZhuParams& params) const {
  const ZhuParams norm = ZhuParams::make(params.n, params.m, params.p, order());
  Element out;
  for (const auto& [ku, cu] : u)
    for (const auto& [kv, cv] : v) out.addScaled(star(ku, kv, norm), cu * cv);
  return out;
}

Element ZhuCalculus::circ(const BasisKey& u, const BasisKey& v, const Mode& n, const Mode& m) const {
  const int T = order();
  const Mode nn = normalized(n, T, "n"), mm = normalized(m, T, "m");
  auto key = std::make_tuple(u, v, nn, mm);
  {
    std::lock_guard lock(mutex_);
    if (auto it = circCache_.find(key); it != circCache_.end()) return it->second;
  }
  const int r = voa_->backend().sector(u);
  const std::int64_t pole =
      mm.floor() + nn.floor() + deltaIndicator(mm.bar(), r, T) + deltaIndicator(nn.bar(), T - r, T);
  const Scalar exponent =
      Scalar(static_cast<long>(u.weight() - 1 + mm.floor() + deltaIndicator(mm.bar(), r, T))) + Scalar(r, T);
  Element out = residue(*voa_, u, Element(v), exponent, pole);
  std::lock_guard lock(mutex_);
  circCache_.emplace(std::move(key), out);
  return out;
}

Element ZhuCalculus::circ(const Element& u, const Element& v, const Mode& n, const Mode& m) const {
  Element out;
  for (const auto& [ku, cu] : u)
    for (const auto& [kv, cv] : v) out.addScaled(circ(ku, kv, n, m), cu * cv);
  return out;
}

Element ZhuCalculus::lGenerator(const Element& u, const Mode& n, const Mode& m) const {
  Element out = voa_->virasoroMode(-1, u) + voa_->virasoroMode(0, u);
  out.addScaled(u, (m - n).value());
  return out;
}

std::string toString(OKind kind) {
  switch (kind) {
    case OKind::Circ: return "circ";
    case OKind::LGen: return "L";
    case OKind::Assoc: return "assoc";
    case OKind::Induced: return "induced";
  }
  return "?";
}

void enumerateOGenerators(const ZhuCalculus& calc, const Mode& n0, const Mode& m0, const OCutoffs& cut,
                          bool includeHigher, const std::function<bool(const OGenerator&)>& visit,
                          bool lGeneratorsUpToN) {
  const VertexAlgebra& voa = calc.algebra();
  const VoaBackend& B = voa.backend();
  const int T = calc.order();
  const Mode n = normalized(n0, T, "n"), m = normalized(m0, T, "m");
  auto self = B.makeSelfModule();
  auto txt = [&](const BasisKey& k) { return self->stateText(ModState{k.parts}); };
  const int G = cut.G;
  const std::vector<BasisKey> all = B.basisUpTo(std::max({G, cut.N, 0}));
  const std::vector<BasisKey> keysG = keysOfWeightAtMost(all, G);
  const std::string nm = "n=" + n.toString() + ",m=" + m.toString();

  for (const auto& u : keysG)
    for (const auto& v : keysG)
      if (!visit({OKind::Circ, "circ[" + nm + "](" + txt(u) + ", " + txt(v) + ")", calc.circ(u, v, n, m)}))
        return;
  for (const auto& u : keysOfWeightAtMost(all, lGeneratorsUpToN ? std::max(G, cut.N - 1) : G))
    if (!visit({OKind::LGen, "L[" + nm + "](" + txt(u) + ")", calc.lGenerator(Element(u), n, m)})) return;

  if (n == m && !includeHigher) return;
  const std::vector<Mode> grid = modeGrid(cut.P, T);

  // u *^n_{m,p3} ((a *^{p3}_{p1,p2} b) *^{p3}_{m,p1} c - a *^{p3}_{m,p2} (b *^{p2}_{m,p1} c))
  for (const auto& a : keysG)
    for (const auto& b : keysOfWeightAtMost(keysG, G - a.weight()))
      for (const auto& c : keysOfWeightAtMost(keysG, G - a.weight() - b.weight())) {
        const int rest = G - a.weight() - b.weight() - c.weight();
        for (const Mode& p1 : grid)
          for (const Mode& p2 : grid)
            for (const Mode& p3 : grid) {
              Element lhs = calc.star(calc.star(Element(a), Element(b), {p3, p1, p2}), Element(c), {p3, m, p1});
              Element rhs = calc.star(Element(a), calc.star(Element(b), Element(c), {p2, m, p1}), {p3, m, p2});
              Element diff = lhs - rhs;
              const std::string inner = "p1=" + p1.toString() + ",p2=" + p2.toString() + ",p3=" + p3.toString() +
                                        "](" + txt(a) + ", " + txt(b) + ", " + txt(c) + "; ";
              for (const auto& u : keysOfWeightAtMost(keysG, rest)) {
                Element x = diff.isZero() ? Element{} : calc.star(Element(u), diff, {n, m, p3});
                if (!visit({OKind::Assoc, "assoc[" + nm + "," + inner + txt(u) + ")", std::move(x)})) return;
              }
            }
      }

  // (a *^n_{p1,p2} x) *^n_{m,p1} c with x = u o^{p2}_{p1} v or (L(-1) + L(0) + p1 - p2) u
  for (const auto& a : keysG)
    for (const auto& c : keysOfWeightAtMost(keysG, G - a.weight())) {
      const int rest = G - a.weight() - c.weight();
      for (const Mode& p1 : grid)
        for (const Mode& p2 : grid) {
          const std::string head = "induced[" + nm + ",p1=" + p1.toString() + ",p2=" + p2.toString() + "](" +
                                   txt(a) + ", " + txt(c) + "; ";
          auto emit = [&](const Element& x, const std::string& what) {
            Element y = x.isZero() ? Element{}
                                   : calc.star(calc.star(Element(a), x, {n, p1, p2}), Element(c), {n, m, p1});
            return visit({OKind::Induced, head + what + ")", std::move(y)});
          };
          for (const auto& u : keysOfWeightAtMost(keysG, rest)) {
            for (const auto& v : keysOfWeightAtMost(keysG, rest - u.weight()))
              if (!emit(calc.circ(u, v, p2, p1), "circ " + txt(u) + ", " + txt(v))) return;
            if (!emit(calc.lGenerator(Element(u), p2, p1), "L " + txt(u))) return;
          }
        }
    }
}

Subspace<BasisKey> buildOSpan(const ZhuCalculus& calc, const Mode& n, const Mode& m, const OCutoffs& cut) {
  // Highest keys first, so pivots land on high weights and low-weight keys
  // such as the vacuum survive as class representatives.
  std::vector<BasisKey> keys = calc.algebra().backend().basisUpTo(cut.N);
  std::reverse(keys.begin(), keys.end());
  auto slice = std::make_shared<const SliceBasis<BasisKey>>(std::move(keys));
  Subspace<BasisKey> span(slice);
  if (slice->dim() == 0) return span;
  enumerateOGenerators(calc, n, m, cut, false, [&](const OGenerator& g) {
    if (!g.value.isZero() && slice->inSlice(g.value)) span.insert(g.value);
    return span.rank() < slice->dim();
  });
  return span;
}

QuotientAlgebra::QuotientAlgebra(const ZhuCalculus& calc, const Mode& n, const Mode& m, const OCutoffs& cut)
    : n_(normalized(n, calc.order(), "n")),
      m_(normalized(m, calc.order(), "m")),
      cut_(cut),
      span_(buildOSpan(calc, n_, m_, cut)) {}

std::vector<BasisKey> QuotientAlgebra::basis() const {
  std::vector<BasisKey> out = span_.quotientBasis();
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Element> QuotientAlgebra::classOf(const Element& v) const {
  if (!inSlice(v)) return std::nullopt;
  return span_.reduceModulo(v);
}

std::vector<TableEntry> QuotientAlgebra::multiplicationTable(const ZhuCalculus& calc) const {
  if (n_ != m_) throw std::logic_error("multiplication table requires n = m");
  std::vector<TableEntry> out;
  const auto keys = basis();
  for (const auto& a : keys)
    for (const auto& b : keys) out.push_back({a, b, classOf(calc.star(Element(a), Element(b), {n_, n_, n_}))});
  return out;
}

std::vector<TableEntry> QuotientAlgebra::leftActionTable(const ZhuCalculus& calc,
                                                         const std::vector<BasisKey>& leftBasis) const {
  std::vector<TableEntry> out;
  for (const auto& a : leftBasis)
    for (const auto& x : basis()) out.push_back({a, x, classOf(calc.star(Element(a), Element(x), {n_, m_, n_}))});
  return out;
}

std::vector<TableEntry> QuotientAlgebra::rightActionTable(const ZhuCalculus& calc,
                                                          const std::vector<BasisKey>& rightBasis) const {
  std::vector<TableEntry> out;
  for (const auto& x : basis())
    for (const auto& b : rightBasis)
      out.push_back({x, b, classOf(calc.star(Element(x), Element(b), {n_, m_, m_}))});
  return out;
}

const QuotientAlgebra& QuotientFamily::build(const Mode& n, const Mode& m) {
  const int T = calc_.order();
  const std::pair key{normalized(n, T, "n"), normalized(m, T, "m")};
  auto it = table_.find(key);
  if (it == table_.end())
    it = table_.emplace(key, std::make_unique<QuotientAlgebra>(calc_, key.first, key.second, cut_)).first;
  return *it->second;
}

const QuotientAlgebra& QuotientFamily::at(const Mode& n, const Mode& m) const {
  auto it = table_.find({n, m});
  if (it == table_.end())
    throw std::out_of_range("quotient A(n=" + n.toString() + ", m=" + m.toString() + ") has not been built");
  return *it->second;
}

InducedImage inducedModuleAction(const QuotientFamily& family, const Element& u, const Mode& p, const Element& v,
                                 const Mode& n, const Mode& m) {
  const ZhuCalculus& calc = family.calculus();
  const int T = calc.order();
  if (u.isZero()) return {n, Element{}};
  const int wt = u.begin()->first.weight();
  for (const auto& [k, c] : u)
    if (k.weight() != wt) throw std::invalid_argument("inducedModuleAction needs a weight-homogeneous u");
  const Mode pp = Mode::fromScalar(p.value(), T);
  const Mode target = n + static_cast<std::int64_t>(wt - 1) - pp;
  if (target < 0) return {target, Element{}};
  const QuotientAlgebra& q = family.at(target, m);
  return {target, q.classOf(calc.star(u, v, {target, m, n}))};
}

AnnihilationReport checkAnnihilation(const ZhuCalculus& calc, const FieldEngine& engine, const Mode& n0,
                                     const Mode& m0, int G, const Mode& P) {
  const int T = calc.order();
  const Mode n = normalized(n0, T, "n"), m = normalized(m0, T, "m");
  const ModuleBackend& M = engine.module();
  const std::vector<ModState> states = M.statesUpTo(m);
  AnnihilationReport report{n, m, 0, {}, 0, {}};
  OCutoffs cut{G, G, P};
  enumerateOGenerators(
      calc, n, m, cut, true,
      [&](const OGenerator& g) {
        ++report.generators;
        ++report.byKind[g.kind];
        if (g.value.isZero()) {
          ++report.zeroGenerators;
          return true;
        }
        for (const ModState& w : states) {
          ModuleVector img = oApply(engine, g.value, m - n, ModuleVector(w));
          if (!img.isZero())
            report.violations.push_back({g.recipe, M.stateText(w), formatModuleVector(M, img)});
        }
        return true;
      },
      false);
  return report;
}

}  // namespace twzhu
