#include "twzhu/ueva.hpp"

#include <stdexcept>

#include "twzhu/twisted_module.hpp"

namespace twzhu {

namespace {

bool inCoset(const VoaBackend& backend, const BasisKey& key, const Mode& mode) {
  return (mode - Mode::fromScaled(backend.sector(key), backend.order())).isInteger();
}

/// (length, -last mode) strictly decreases from parent to child.
bool descends(const UMonomial& child, const UMonomial& parent) {
  if (child.factors.size() != parent.factors.size()) return child.factors.size() < parent.factors.size();
  return child.factors.back().mode > parent.factors.back().mode;
}

}  // namespace

Mode UMonomial::modeSum(int order) const {
  Mode out = Mode::integer(0, order);
  for (const auto& f : factors) out += f.mode;
  return out;
}

UPoly jMap(const VoaBackend& backend, const Mode& mode, const Element& u) {
  const Mode q = Mode::fromScalar(mode.value(), backend.order());
  UPoly out;
  for (const auto& [k, c] : u)
    if (inCoset(backend, k, q)) out.add(UMonomial{{JFactor{q, k}}}, c);
  return normalizeVacuum(out);
}

UPoly multiply(const UPoly& x, const UPoly& y) {
  UPoly out;
  for (const auto& [a, ca] : x)
    for (const auto& [b, cb] : y) {
      UMonomial ab = a;
      ab.factors.insert(ab.factors.end(), b.factors.begin(), b.factors.end());
      out.add(ab, ca * cb);
    }
  return out;
}

UPoly normalizeVacuum(const UPoly& x) {
  UPoly out;
  for (const auto& [mono, c] : x) {
    UMonomial kept;
    bool zero = false;
    for (const auto& f : mono.factors) {
      if (!f.vec.isVacuum()) {
        kept.factors.push_back(f);
      } else if (f.mode != 0) {
        zero = true;
        break;
      }
    }
    if (!zero) out.add(kept, c);
  }
  return out;
}

ModuleVector actOn(const FieldEngine& engine, const UPoly& x, const ModuleVector& w) {
  ModuleVector out;
  for (const auto& [mono, c] : x) {
    ModuleVector v = w;
    for (auto it = mono.factors.rbegin(); it != mono.factors.rend() && !v.isZero(); ++it)
      v = engine.apply(Element(it->vec), it->mode + static_cast<std::int64_t>(it->vec.weight() - 1), v);
    out.addScaled(v, c);
  }
  return out;
}

Straightener::Straightener(const VertexAlgebra& voa, FiltrationCtx ctx, StraightenOptions options)
    : voa_(voa), ctx_(std::move(ctx)), options_(options) {
  const int T = voa.order();
  ctx_.n = Mode::fromScalar(ctx_.n.value(), T);
  ctx_.m = Mode::fromScalar(ctx_.m.value(), T);
  if (ctx_.n < 0 || ctx_.m < 0) throw std::invalid_argument("filtration context needs n, m in (1/T)N");
}

Element Straightener::straighten(const UMonomial& mono) {
  const int T = voa_.order();
  const Mode target = ctx_.m - ctx_.n;
  if (mono.modeSum(T) != target)
    throw std::invalid_argument("monomial has mode sum " + mono.modeSum(T).toString() + ", expected m - n = " +
                                target.toString());
  for (const auto& f : mono.factors)
    if (!inCoset(voa_.backend(), f.vec, f.mode)) return {};
  Element out;
  for (const auto& [m, c] : normalizeVacuum(UPoly(mono))) out.addScaled(reduce(m), c);
  return out;
}

Element Straightener::straighten(const UPoly& x) {
  Element out;
  for (const auto& [mono, c] : x) out.addScaled(straighten(mono), c);
  return out;
}

Element Straightener::reduce(const UMonomial& mono) {
  if (auto it = memo_.find(mono); it != memo_.end()) return it->second;
  if (++steps_ > options_.stepBudget)
    throw StepBudgetExceeded("straightening exceeded " + std::to_string(options_.stepBudget) + " steps");

  const auto& f = mono.factors;
  Element out;
  if (f.empty()) {
    out = voa_.vacuum();
  } else if (ctx_.inFiltration(mono)) {
    // zero in the working quotient
  } else if (f.size() == 1) {
    out = Element(f.front().vec);
  } else {
    const JFactor& left = f[f.size() - 2];
    const JFactor& right = f.back();
    const Mode& s = left.mode;
    const Mode& t = right.mode;
    const Mode mu = s + (ctx_.m - s).floor();
    const std::int64_t l = (s - mu).toInteger() - 1;
    const Mode lm = Mode::integer(l, voa_.order());
    UMonomial prefix{std::vector<JFactor>(f.begin(), f.end() - 2)};

    auto recurse = [&](const UMonomial& child) {
      if (!descends(child, mono)) throw std::logic_error("straightening measure did not decrease");
      return reduce(child);
    };

    for (std::int64_t k = 1; t + k <= ctx_.m; ++k) {
      if (l >= 0 && k > l) break;
      Scalar c = -binomial(lm, static_cast<int>(k)) * Scalar(signPower(k));
      if (c.isZero()) continue;
      UMonomial child = prefix;
      child.factors.push_back({s - k, left.vec});
      child.factors.push_back({t + k, right.vec});
      out.addScaled(recurse(child), c);
    }

    const Mode top = mu + static_cast<std::int64_t>(left.vec.weight());
    const std::int64_t wsum = left.vec.weight() + right.vec.weight();
    for (std::int64_t i = 0; l + i < wsum; ++i) {
      Scalar c = binomial(top, static_cast<int>(i));
      if (c.isZero()) continue;
      for (const auto& [key, cw] : voa_.modeProduct(left.vec, l + i, right.vec)) {
        UMonomial child = prefix;
        if (!key.isVacuum()) {
          child.factors.push_back({s + t, key});
        } else if (s + t != 0) {
          continue;
        }
        out.addScaled(recurse(child), c * cw);
      }
    }
  }
  memo_.emplace(mono, out);
  return out;
}

std::string toString(Verdict v) {
  switch (v) {
    case Verdict::EqualProven: return "equal-proven";
    case Verdict::UnequalProven: return "unequal-proven";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

void checkDegree(const FiltrationCtx& ctx, const UPoly& x) {
  const int T = ctx.m.order();
  for (const auto& [mono, c] : x)
    if (mono.modeSum(T) != ctx.m - ctx.n) throw std::invalid_argument("operand is not homogeneous of degree n - m");
}

/// A state of degree <= m on which x and y act differently.
std::optional<std::string> actionWitness(const UPoly& x, const UPoly& y, const FiltrationCtx& ctx,
                                         const std::vector<const FieldEngine*>& modules) {
  for (const FieldEngine* engine : modules) {
    const ModuleBackend& M = engine->module();
    for (const ModState& w : M.statesUpTo(ctx.m)) {
      ModuleVector ax = actOn(*engine, x, ModuleVector(w));
      ModuleVector ay = actOn(*engine, y, ModuleVector(w));
      if (ax != ay)
        return "on " + M.stateText(w) + ": " + formatModuleVector(M, ax) + " vs " + formatModuleVector(M, ay);
    }
  }
  return std::nullopt;
}

/// Equal-proven or inconclusive from the O-span membership certificate.
EqualityResult certificate(const UPoly& x, const UPoly& y, Straightener& straightener,
                           const Subspace<BasisKey>& oSpan) {
  const VoaBackend& B = straightener.algebra().backend();
  Element diff = straightener.straighten(x) - straightener.straighten(y);
  if (diff.isZero()) return {Verdict::EqualProven, "identical normal forms"};
  if (!oSpan.slice().inSlice(diff))
    return {Verdict::Inconclusive, "residual " + formatElement(B, diff) + " leaves the weight slice"};
  Element reduced = oSpan.reduceModulo(diff);
  if (reduced.isZero()) return {Verdict::EqualProven, "residual " + formatElement(B, diff) + " lies in the O-span"};
  return {Verdict::Inconclusive, "residual class " + formatElement(B, reduced) + " not certified"};
}

}  // namespace

EqualityResult uEqualsModFiltration(const UPoly& x, const UPoly& y, Straightener& straightener,
                                    const std::vector<const FieldEngine*>& modules,
                                    const Subspace<BasisKey>& oSpan) {
  checkDegree(straightener.context(), x);
  checkDegree(straightener.context(), y);
  if (auto w = actionWitness(x, y, straightener.context(), modules)) return {Verdict::UnequalProven, *w};
  return certificate(x, y, straightener, oSpan);
}

bool checkUnivRelation(const FieldEngine& engine, const BasisKey& u, const BasisKey& v, std::int64_t l,
                       const Mode& s0, const Mode& t0, const Mode& maxDegree) {
  const VertexAlgebra& voa = engine.algebra();
  const VoaBackend& B = voa.backend();
  const int T = B.order();
  const Mode s = Mode::fromScalar(s0.value(), T), t = Mode::fromScalar(t0.value(), T);
  if (!inCoset(B, u, s) || !inCoset(B, v, t)) throw std::invalid_argument("checkUnivRelation: mode outside its coset");
  const ModuleBackend& M = engine.module();
  const Mode lm = Mode::integer(l, T);
  const Mode top = s + static_cast<std::int64_t>(u.weight()) - l - 1;
  auto J = [&](const Mode& q, const BasisKey& k) { return UPoly(UMonomial{{JFactor{q, k}}}); };

  for (const ModState& w : M.statesUpTo(maxDegree)) {
    const Mode d = M.degree(w);
    UPoly lhs, rhs;
    for (std::int64_t i = 0;; ++i) {
      const bool first = t + i <= d, second = s + i - l <= d;
      if (!first && !second) break;
      if (l >= 0 && i > l) break;
      const Scalar c = binomial(lm, static_cast<int>(i)) * Scalar(signPower(i));
      if (first) lhs.addScaled(multiply(J(s - i, u), J(t + i, v)), c);
      if (second) lhs.addScaled(multiply(J(t + l - i, v), J(s + i - l, u)), -c * Scalar(signPower(l)));
    }
    for (std::int64_t i = 0; l + i < u.weight() + v.weight(); ++i) {
      const Scalar c = binomial(top, static_cast<int>(i));
      if (!c.isZero()) rhs.addScaled(jMap(B, s + t, voa.modeProduct(u, l + i, v)), c);
    }
    const ModuleVector ws(w);
    if (actOn(engine, normalizeVacuum(lhs), ws) != actOn(engine, rhs, ws)) return false;
    for (std::int64_t i = -4; i <= 4; ++i) {
      ModuleVector img = engine.apply(voa.vacuum(), Mode::integer(i, T), ws);
      if (img != (i == -1 ? ws : ModuleVector{})) return false;
    }
  }
  return true;
}

UPoly phi(const VoaBackend& backend, const FiltrationCtx& ctx, const Element& u) {
  return jMap(backend, ctx.m - ctx.n, u);
}

std::optional<UMonomial> randomMonomial(std::mt19937_64& rng, const VoaBackend& backend, const FiltrationCtx& ctx,
                                        int length, int minWeight, int maxWeight, const Mode& modeBound) {
  const int T = backend.order();
  std::vector<BasisKey> keys;
  for (const auto& k : backend.basisUpTo(maxWeight))
    if (k.weight() >= minWeight) keys.push_back(k);
  if (keys.empty() || length < 1) return std::nullopt;
  const Mode bound = Mode::fromScaled((modeBound.value() * Scalar(T)).floor().get_si(), T);
  const Mode target = Mode::fromScalar((ctx.m - ctx.n).value(), T);
  auto allowed = [&](const BasisKey& k) {
    std::vector<Mode> out;
    for (std::int64_t x = -bound.scaled(); x <= bound.scaled(); ++x) {
      Mode q = Mode::fromScaled(x, T);
      if (inCoset(backend, k, q)) out.push_back(q);
    }
    return out;
  };
  std::uniform_int_distribution<std::size_t> pickKey(0, keys.size() - 1);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    UMonomial mono;
    Mode sum = Mode::integer(0, T);
    for (int j = 0; j + 1 < length; ++j) {
      const BasisKey& k = keys[pickKey(rng)];
      auto modes = allowed(k);
      if (modes.empty()) break;
      std::uniform_int_distribution<std::size_t> pickMode(0, modes.size() - 1);
      mono.factors.push_back({modes[pickMode(rng)], k});
      sum += mono.factors.back().mode;
    }
    if (static_cast<int>(mono.factors.size()) + 1 != length) continue;
    const BasisKey& k = keys[pickKey(rng)];
    const Mode last = target - sum;
    if (last > bound || last < -bound || !inCoset(backend, k, last)) continue;
    mono.factors.push_back({last, k});
    return mono;
  }
  return std::nullopt;
}

std::string formatMonomial(const VoaBackend& backend, const UMonomial& mono) {
  if (mono.factors.empty()) return "J[0](|0>)";
  std::string out;
  for (const auto& f : mono.factors) {
    if (!out.empty()) out += " * ";
    out += "J[" + f.mode.toString() + "](" + formatElement(backend, Element(f.vec)) + ")";
  }
  return out;
}

std::string formatUPoly(const VoaBackend& backend, const UPoly& x) {
  if (x.isZero()) return "0";
  std::string out;
  for (const auto& [mono, c] : x) {
    if (!out.empty()) out += c.sign() < 0 ? " - " : " + ";
    else if (c.sign() < 0) out += "-";
    const Scalar mag = c.sign() < 0 ? -c : c;
    if (mag != Scalar(1)) out += mag.toString() + "*";
    out += "[" + formatMonomial(backend, mono) + "]";
  }
  return out;
}

UPoly parseMonomial(const VoaBackend& backend, std::string_view text) {
  const int T = backend.order();
  auto self = backend.makeSelfModule();
  TextCursor cur(text);
  UPoly out(UMonomial{});
  do {
    cur.expect("J[");
    const std::size_t at = cur.position();
    const std::string lit = cur.rational();
    Mode q;
    try {
      q = Mode::parse(lit, T);
    } catch (const std::invalid_argument&) {
      throw ParseError("mode '" + lit + "' is not in (1/" + std::to_string(T) + ")Z", at);
    }
    cur.expect("]");
    cur.expect("(");
    const Element u = toElement(parseModuleVectorAt(*self, cur));
    cur.expect(")");
    out = multiply(out, jMap(backend, q, u));
  } while (cur.accept("*"));
  if (!cur.atEnd()) cur.fail("unexpected trailing input");
  return normalizeVacuum(out);
}

std::string SubVerdict::verdict() const {
  if (failed > 0) return "fail";
  if (inconclusive > 0) return "inconclusive";
  return "pass";
}

namespace {

void record(SubVerdict& sv, const EqualityResult& r, const std::string& what, bool equalIsGood) {
  ++sv.checked;
  const bool good = equalIsGood ? r.verdict == Verdict::EqualProven : r.verdict == Verdict::UnequalProven;
  const bool bad = equalIsGood ? r.verdict == Verdict::UnequalProven : r.verdict == Verdict::EqualProven;
  if (good) {
    ++sv.proven;
  } else if (bad) {
    ++sv.failed;
    sv.notes.push_back("fail: " + what + ": " + r.witness);
  } else {
    ++sv.inconclusive;
    sv.notes.push_back("inconclusive: " + what + ": " + r.witness);
  }
}

}  // namespace

IsomorphismReport verifyIsomorphism(const ZhuCalculus& calc, const QuotientAlgebra& quotient,
                                    const std::vector<const FieldEngine*>& modules, const IsomorphismParams& params) {
  const VertexAlgebra& voa = calc.algebra();
  const VoaBackend& B = voa.backend();
  const Mode n = quotient.n(), m = quotient.m();
  const FiltrationCtx ctx{n, m};
  Straightener st(voa, ctx);
  const Subspace<BasisKey>& span = quotient.oApprox();
  const Mode zero = Mode::integer(0, calc.order());
  IsomorphismReport rep;
  rep.n = n;
  rep.m = m;
  rep.wellDefined.name = "well-defined";
  rep.multiplicative.name = "multiplicative";
  rep.surjective.name = "surjective";
  rep.injective.name = "injective";
  const UPoly nothing;

  // (a) O-generators inside the slice must map to 0; generators outside the
  // slice are only tested for a contradicting module action.
  std::size_t outside = 0, tested = 0;
  enumerateOGenerators(calc, n, m, quotient.cutoffs(), false, [&](const OGenerator& g) {
    if (g.value.isZero()) return true;
    if (tested >= params.maxGenerators) return false;
    ++tested;
    if (!span.slice().inSlice(g.value)) {
      ++outside;
      for (const FieldEngine* e : modules)
        for (const ModState& w : e->module().statesUpTo(m))
          if (!actOn(*e, phi(B, ctx, g.value), ModuleVector(w)).isZero()) {
            ++rep.wellDefined.checked;
            ++rep.wellDefined.failed;
            rep.wellDefined.notes.push_back("fail: " + g.recipe + " acts nontrivially on " + e->module().stateText(w));
            return true;
          }
      return true;
    }
    record(rep.wellDefined, uEqualsModFiltration(phi(B, ctx, g.value), nothing, st, modules, span), g.recipe, true);
    return true;
  });
  if (outside > 0)
    rep.wellDefined.notes.push_back(std::to_string(outside) + " generators leave the weight slice (action-tested only)");

  // (b) right action u * v = u *^n_{m,m} v and left action a *^n_{m,n} x
  const std::vector<BasisKey> sample = B.basisUpTo(params.sampleWeight);
  for (const auto& u : sample)
    for (const auto& v : sample) {
      const Element uv = calc.star(Element(u), Element(v), {n, m, m});
      record(rep.multiplicative,
             uEqualsModFiltration(phi(B, ctx, uv), multiply(jMap(B, m - n, Element(u)), jMap(B, zero, Element(v))),
                                  st, modules, span),
             "right " + formatElement(B, Element(u)) + " * " + formatElement(B, Element(v)), true);
      const Element av = calc.star(Element(u), Element(v), {n, m, n});
      record(rep.multiplicative,
             uEqualsModFiltration(phi(B, ctx, av), multiply(jMap(B, zero, Element(u)), jMap(B, m - n, Element(v))),
                                  st, modules, span),
             "left " + formatElement(B, Element(u)) + " * " + formatElement(B, Element(v)), true);
    }

  // (c) random monomials of degree n - m straighten, and the normal form acts
  // like the monomial on every state of degree <= m.
  std::mt19937_64 rng(params.seed);
  for (int i = 0; i < params.monomials; ++i) {
    auto mono = randomMonomial(rng, B, ctx, 2 + i % 2, 1, std::max(1, params.sampleWeight + 1), params.modeBound);
    if (!mono) continue;
    ++rep.surjective.checked;
    const std::string text = formatMonomial(B, *mono);
    try {
      const Element u = st.straighten(*mono);
      const UPoly lhs = phi(B, ctx, u), rhs = normalizeVacuum(UPoly(*mono));
      bool agree = true;
      for (const FieldEngine* e : modules)
        for (const ModState& w : e->module().statesUpTo(m))
          agree = agree && actOn(*e, lhs, ModuleVector(w)) == actOn(*e, rhs, ModuleVector(w));
      if (agree) {
        ++rep.surjective.proven;
      } else {
        ++rep.surjective.failed;
        rep.surjective.notes.push_back("fail: normal form of " + text + " acts differently");
      }
    } catch (const StepBudgetExceeded& e) {
      ++rep.surjective.failed;
      rep.surjective.notes.push_back("fail: " + text + ": " + e.what());
    }
  }

  // (d) quotient basis classes. A nonzero action is evidence that phi(u) is
  // nonzero; a certificate that phi(u) = 0 means the truncated quotient
  // overcounts (the class lies in the true O). Both at once is a
  // contradiction and fails.
  std::size_t vanishing = 0;
  for (const auto& b : quotient.basis()) {
    const UPoly image = phi(B, ctx, Element(b));
    const std::string what = formatElement(B, Element(b));
    auto acts = actionWitness(image, nothing, ctx, modules);
    EqualityResult cert = certificate(image, nothing, st, span);
    ++rep.injective.checked;
    if (acts && cert.verdict == Verdict::EqualProven) {
      ++rep.injective.failed;
      rep.injective.notes.push_back("fail: " + what + " acts " + *acts + " but " + cert.witness);
    } else if (acts) {
      ++rep.injective.proven;
    } else if (cert.verdict == Verdict::EqualProven) {
      ++vanishing;
      rep.injective.notes.push_back("vanishing: " + what + " maps to 0 (" + cert.witness +
                                    "); the truncated quotient overcounts");
    } else {
      ++rep.injective.inconclusive;
      rep.injective.notes.push_back("inconclusive: " + what + ": no separating state of degree <= m");
    }
  }
  if (vanishing > 0) ++rep.injective.inconclusive;
  return rep;
}

}  // namespace twzhu
