#include "twzhu/suites.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <sstream>

#include "twzhu/axioms.hpp"
#include "twzhu/twisted_module.hpp"

namespace twzhu {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

Mode parseMode(const std::string& text, int order, const std::string& what) {
  try {
    return Mode::parse(text, order);
  } catch (const std::exception& e) {
    throw ConfigError(what + ": '" + text + "' is not an exact rational in (1/" + std::to_string(order) + ")Z");
  }
}

Mode parseGridValue(const std::string& text, int order, const std::string& what) {
  Mode q = parseMode(text, order, what);
  if (q < 0) throw ConfigError(what + ": '" + text + "' is negative");
  return q;
}

std::vector<std::string> splitList(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

json modeList(const std::vector<Mode>& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(x.toString());
  return out;
}

struct Outcome {
  std::string verdict;
  std::string witness;
};

/// Aggregates many instances of one check into a single record.
struct Tally {
  std::size_t instances = 0, failures = 0, undecided = 0;
  std::string firstFailure, firstUndecided;

  void pass() { ++instances; }
  void fail(const std::string& w) {
    ++instances;
    if (failures++ == 0) firstFailure = w;
  }
  void inconclusive(const std::string& w) {
    ++instances;
    if (undecided++ == 0) firstUndecided = w;
  }
  template <class W>
  void expect(bool good, W witness) {
    if (good) {
      pass();
    } else {
      fail(witness());
    }
  }
  Outcome outcome(const std::string& note = "") const {
    const std::string tail = note.empty() ? "" : "; " + note;
    if (failures > 0)
      return {"fail", std::to_string(failures) + " of " + std::to_string(instances) + " failed; first: " +
                          firstFailure + tail};
    if (undecided > 0)
      return {"inconclusive", std::to_string(undecided) + " of " + std::to_string(instances) +
                                  " undecided; first: " + firstUndecided + tail};
    return {"pass", std::to_string(instances) + " instances" + tail};
  }
};

class SuiteRun {
 public:
  explicit SuiteRun(std::string name) : name_(std::move(name)) {}

  template <class F>
  void check(const std::string& name, json params, F&& body) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o = {"fail", std::string("exception: ") + e.what()};
    }
    const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    checks_.push_back(
        {{"name", name}, {"params", std::move(params)}, {"verdict", o.verdict}, {"witness", o.witness},
         {"elapsed_ms", static_cast<std::int64_t>(ms)}});
  }

  json finish() const {
    json out{{"name", name_}, {"checks", checks_}};
    json summary = json::object();
    for (const auto& [k, v] : tallyVerdicts(out)) summary[k] = v;
    out["summary"] = summary;
    return out;
  }

 private:
  std::string name_;
  json checks_ = json::array();
};

/// Algebra, calculus and module engines shared by the checks of one suite.
struct Env {
  explicit Env(const Config& config)
      : cfg(config), voa(config.makeAlgebra()), B(voa->backend()), calc(voa), family(calc, config.cut) {
    modules = makeTwistedModules(B, cfg.kmax);
    for (const auto& m : modules) {
      engines.push_back(std::make_unique<FieldEngine>(*voa, *m));
      enginePtrs.push_back(engines.back().get());
    }
  }

  std::string text(const Element& v) const { return formatElement(B, v); }
  std::string text(const BasisKey& k) const { return formatElement(B, Element(k)); }
  Mode mode(std::int64_t scaled) const { return Mode::fromScaled(scaled, cfg.order); }
  /// Modes q with |q| <= bound allowed for a vector of the given sector on M.
  std::vector<Mode> allowedModes(const ModuleBackend& M, int sector, const Mode& bound) const {
    std::vector<Mode> out;
    const Mode b = Mode::fromScaled((bound.value() * Scalar(cfg.order)).floor().get_si(), cfg.order);
    for (std::int64_t s = -b.scaled(); s <= b.scaled(); ++s)
      if (M.modeAllowed(sector, mode(s))) out.push_back(mode(s));
    return out;
  }

  const Config& cfg;
  std::shared_ptr<const VertexAlgebra> voa;
  const VoaBackend& B;
  ZhuCalculus calc;
  QuotientFamily family;
  std::vector<std::unique_ptr<ModuleBackend>> modules;
  std::vector<std::unique_ptr<FieldEngine>> engines;
  std::vector<const FieldEngine*> enginePtrs;
};

// ---------------------------------------------------------------- axioms

json axiomsSuite(const Config& cfg) {
  Env env(cfg);
  const VertexAlgebra& V = *env.voa;
  const auto keys = env.B.basisUpTo(cfg.w);
  SuiteRun run("axioms");
  const json params{{"backend", cfg.backend}, {"max_weight", cfg.w}, {"indices", "[-3,3]"}};

  run.check("vacuum", params, [&] {
    Tally t;
    for (const auto& v : keys)
      for (int n = -3; n <= 3; ++n)
        t.expect(checkVacuumAxiom(V, Element(v), n), [&] { return "1_" + std::to_string(n) + " " + env.text(v); });
    return t.outcome();
  });
  run.check("creation", params, [&] {
    Tally t;
    for (const auto& u : keys)
      for (int n = -3; n <= 3; ++n)
        t.expect(checkCreationAxiom(V, Element(u), n), [&] { return env.text(u) + " mode " + std::to_string(n); });
    return t.outcome();
  });
  run.check("grading", params, [&] {
    Tally t;
    for (const auto& u : keys)
      for (const auto& v : keys)
        for (int i = -3; i <= 3; ++i)
          t.expect(checkGrading(V, u, i, v),
                   [&] { return env.text(u) + " _" + std::to_string(i) + " " + env.text(v); });
    return t.outcome();
  });
  run.check("virasoro-relation", params, [&] {
    Tally t;
    for (const auto& v : keys)
      for (int m = -3; m <= 3; ++m)
        for (int n = -3; n <= 3; ++n)
          t.expect(checkVirasoroRelation(V, m, n, Element(v)), [&] {
            return "[L(" + std::to_string(m) + "),L(" + std::to_string(n) + ")] on " + env.text(v);
          });
    return t.outcome("c=" + env.B.centralCharge().toString());
  });
  run.check("l0-grading", params, [&] {
    Tally t;
    for (const auto& v : keys) t.expect(checkL0Grading(V, v), [&] { return env.text(v); });
    return t.outcome();
  });
  run.check("derivative", params, [&] {
    Tally t;
    for (const auto& u : keys)
      for (const auto& v : keys)
        for (int n = -3; n <= 3; ++n)
          t.expect(checkDerivativeAxiom(V, Element(u), n, Element(v)),
                   [&] { return env.text(u) + " _" + std::to_string(n) + " " + env.text(v); });
    return t.outcome();
  });
  run.check("automorphism", params, [&] {
    Tally t;
    for (const auto& u : keys)
      for (const auto& v : keys)
        for (int i = -3; i <= 3; ++i)
          t.expect(checkAutomorphism(V, Element(u), Element(v), i),
                   [&] { return env.text(u) + " _" + std::to_string(i) + " " + env.text(v); });
    return t.outcome();
  });
  run.check("skew-symmetry", params, [&] {
    Tally t;
    for (const auto& u : keys)
      for (const auto& v : keys)
        for (int n = -3; n <= 3; ++n)
          t.expect(checkSkewSymmetry(V, u, n, v),
                   [&] { return env.text(u) + " _" + std::to_string(n) + " " + env.text(v); });
    return t.outcome();
  });
  run.check("jacobi", params, [&] {
    Tally t;
    for (const auto& u : keys)
      for (const auto& v : keys)
        for (const auto& w : keys)
          for (int l = -3; l <= 3; ++l)
            for (int m = -3; m <= 3; ++m)
              for (int n = -3; n <= 3; ++n)
                t.expect(checkJacobiOnV(V, Element(u), Element(v), Element(w), l, m, n), [&] {
                  return "u=" + env.text(u) + " v=" + env.text(v) + " w=" + env.text(w) + " l,m,n=" +
                         std::to_string(l) + "," + std::to_string(m) + "," + std::to_string(n);
                });
    return t.outcome();
  });
  run.check("engine-self-consistency",
            {{"backend", cfg.backend}, {"max_weight", cfg.w + 1}, {"indices", "[-4,5]"}}, [&] {
              // A fresh self-module engine with its own cache, compared with the
              // algebra's products.
              auto self = env.B.makeSelfModule();
              FieldEngine fresh(V, *self);
              Tally t;
              const auto wide = env.B.basisUpTo(cfg.w + 1);
              for (const auto& u : wide) {
                ModeOperatorFamily field = buildFieldAction(fresh, Element(u));
                for (const auto& v : wide)
                  for (int i = -4; i <= 5; ++i)
                    t.expect(toElement(field.apply(V.mode(i), ModuleVector(ModState{v.parts}))) ==
                                 V.modeProduct(u, i, v),
                             [&] { return env.text(u) + " _" + std::to_string(i) + " " + env.text(v); });
              }
              return t.outcome();
            });
  return run.finish();
}

// --------------------------------------------------------------- modules

json modulesSuite(const Config& cfg) {
  Env env(cfg);
  SuiteRun run("modules");
  const auto keys = env.B.basisUpTo(cfg.w);
  const Mode modeBound = Mode::fromScaled(7, 2);
  const Mode stateBound = std::min(Mode::fromScalar(Scalar(3), cfg.order), cfg.kmax);

  for (const FieldEngine* E : env.enginePtrs) {
    const ModuleBackend& M = E->module();
    const json params{{"module", M.name()}, {"max_weight", cfg.w}, {"mode_bound", modeBound.toString()},
                      {"max_degree", stateBound.toString()}};

    run.check("commutator", params, [&] {
      Tally t;
      for (const auto& u : keys)
        for (const auto& v : keys)
          for (const Mode& p : env.allowedModes(M, env.B.sector(u), modeBound))
            for (const Mode& q : env.allowedModes(M, env.B.sector(v), modeBound))
              t.expect(checkCommutator(*E, u, v, p, q, stateBound), [&] {
                return "[" + env.text(u) + "_" + p.toString() + ", " + env.text(v) + "_" + q.toString() + "]";
              });
      return t.outcome();
    });
    run.check("twisted-jacobi", params, [&] {
      Tally t;
      for (const auto& u : keys)
        for (const auto& v : keys)
          for (const Mode& p : env.allowedModes(M, env.B.sector(u), modeBound))
            for (const Mode& q : env.allowedModes(M, env.B.sector(v), modeBound))
              for (int l = -3; l <= 3; ++l)
                t.expect(checkTwistedJacobi(*E, u, v, l, p, q, stateBound), [&] {
                  return "u=" + env.text(u) + " v=" + env.text(v) + " l=" + std::to_string(l) + " m=" +
                         p.toString() + " n=" + q.toString();
                });
      return t.outcome("l in [-3,3]");
    });
    run.check("grading-transport", params, [&] {
      Tally t;
      for (const auto& v : keys)
        for (const Mode& p : env.allowedModes(M, env.B.sector(v), modeBound))
          for (const ModState& w : M.statesUpTo(stateBound))
            t.expect(checkGradingTransport(*E, v, p, w),
                     [&] { return env.text(v) + "_" + p.toString() + " on " + M.stateText(w); });
      return t.outcome();
    });
    run.check("l0-spectrum", params, [&] {
      Tally t;
      std::optional<Scalar> shift;
      for (const ModState& w : M.statesUpTo(stateBound)) {
        ModuleVector img = E->apply(env.voa->omega(), Mode::integer(1, cfg.order), ModuleVector(w));
        const Scalar lambda = img.coefficient(w);
        const Scalar h = lambda - M.degree(w).value();
        if (!shift) shift = h;
        t.expect(img == ModuleVector(w) * lambda && h == *shift,
                 [&] { return M.stateText(w) + " -> " + formatModuleVector(M, img); });
      }
      return t.outcome("L(0) = degree + " + (shift ? shift->toString() : std::string("?")));
    });
    if (env.B.name() == "heisenberg" && M.twisted()) {
      run.check("oscillator-bracket", params, [&] {
        Tally t;
        const BasisKey a{{1}};
        const Mode half = env.mode(1);
        for (const ModState& w : M.statesUpTo(stateBound)) {
          const ModuleVector ws(w);
          ModuleVector br = E->apply(Element(a), half, E->apply(Element(a), -half, ws)) -
                            E->apply(Element(a), -half, E->apply(Element(a), half, ws));
          t.expect(br == ws * Scalar(1, 2), [&] { return M.stateText(w) + " -> " + formatModuleVector(M, br); });
        }
        return t.outcome("[a_{1/2}, a_{-1/2}] = 1/2 id");
      });
    }
    run.check("omega-window", {{"module", M.name()}, {"grid", modeList(cfg.grid)}, {"test_weight", cfg.w},
                               {"imax", cfg.imax.toString()}, {"kmax", cfg.kmax.toString()}},
              [&] {
                Tally t;
                std::string dims;
                for (const Mode& n : cfg.grid) {
                  if (n > cfg.kmax) continue;
                  Subspace<ModState> omega = omegaNApprox(*E, n, cfg.w, cfg.imax);
                  dims += (dims.empty() ? "" : ", ") + n.toString() + ":" + std::to_string(omega.rank());
                  for (const ModState& w : M.statesUpTo(n))
                    t.expect(omega.contains(ModuleVector(w)),
                             [&] { return "degree " + M.degree(w).toString() + " state " + M.stateText(w); });
                }
                return t.outcome("dims " + dims);
              });
  }
  return run.finish();
}

// ------------------------------------------------------------------- zhu

json zhuSuite(const Config& cfg) {
  Env env(cfg);
  const ZhuCalculus& Z = env.calc;
  const VertexAlgebra& V = *env.voa;
  SuiteRun run("zhu");
  const auto keys = env.B.basisUpTo(cfg.w);
  const Mode zero = Mode::integer(0, cfg.order);
  const int T = cfg.order;

  run.check("sector-gate", {{"max_weight", cfg.w}, {"grid", modeList(cfg.grid)}}, [&] {
    Tally t;
    for (const auto& u : keys)
      for (const auto& v : keys)
        for (const Mode& n : cfg.grid)
          for (const Mode& m : cfg.grid)
            for (const Mode& p : cfg.grid) {
              if (((p.bar() - n.bar() - env.B.sector(u)) % T + T) % T == 0) continue;
              t.expect(Z.star(Element(u), Element(v), {n, m, p}).isZero(),
                       [&] { return env.text(u) + " * " + env.text(v) + " at " + ZhuParams{n, m, p}.toString(); });
            }
    return t.outcome();
  });

  run.check("zhu-specialization", {{"max_weight", 4}, {"n", "0"}, {"m", "0"}, {"p", "0"}}, [&] {
    // Untwisted-sector products at n = m = p = 0 against Zhu's expansions.
    Tally t;
    const auto wide = env.B.basisUpTo(4);
    for (const auto& u : wide)
      for (const auto& v : wide) {
        Element star = Z.star(Element(u), Element(v), {zero, zero, zero});
        Element circ = Z.circ(Element(u), Element(v), zero, zero);
        if (env.B.sector(u) != 0) {
          t.expect(star.isZero(), [&] { return "twisted " + env.text(u) + " * " + env.text(v); });
          continue;
        }
        Element directStar, directCirc;
        for (int i = 0; i <= u.weight(); ++i) {
          const Scalar c = binomial(Scalar(u.weight()), i);
          directStar.addScaled(V.modeProduct(u, i - 1, v), c);
          directCirc.addScaled(V.modeProduct(u, i - 2, v), c);
        }
        t.expect(star == directStar, [&] { return env.text(u) + " * " + env.text(v); });
        t.expect(circ == directCirc, [&] { return env.text(u) + " o " + env.text(v); });
      }
    return t.outcome();
  });

  json dims = json::object();
  for (const Mode& n : cfg.grid)
    for (const Mode& m : cfg.grid) {
      const json params{{"n", n.toString()}, {"m", m.toString()}, {"N", cfg.cut.N}, {"G", cfg.cut.G},
                        {"P", cfg.cut.P.toString()}};
      run.check("quotient", params, [&] {
        const QuotientAlgebra& q = env.family.build(n, m);
        std::string basis;
        for (const auto& k : q.basis()) basis += (basis.empty() ? "" : ", ") + env.text(k);
        return Outcome{"pass", "slice " + std::to_string(q.sliceDim()) + ", span rank " +
                                   std::to_string(q.spanRank()) + ", quotient " + std::to_string(q.basis().size()) +
                                   ": {" + basis + "}"};
      });
    }

  for (const Mode& n : cfg.grid) {
    run.check("unit-laws", {{"n", n.toString()}, {"N", cfg.cut.N}, {"max_weight", cfg.cut.N / 2}}, [&] {
      const QuotientAlgebra& q = env.family.build(n, n);
      const Element one = V.vacuum();
      Tally t;
      for (const auto& k : env.B.basisUpTo(cfg.cut.N / 2)) {
        const Element b(k);
        auto cls = q.classOf(b);
        for (const Element& prod : {Z.star(one, b, {n, n, n}), Z.star(b, one, {n, n, n})}) {
          auto pc = q.classOf(prod);
          if (pc && *pc == *cls) {
            t.pass();
          } else {
            t.inconclusive(env.text(k) + ": difference not certified in the computed span");
          }
        }
      }
      return t.outcome();
    });
  }

  for (const Mode& n : cfg.grid)
    for (const Mode& m : cfg.grid) {
      run.check("bimodule-unit", {{"n", n.toString()}, {"m", m.toString()}, {"N", cfg.cut.N}, {"max_weight", cfg.cut.N / 2}}, [&] {
        const QuotientAlgebra& q = env.family.build(n, m);
        Tally t;
        for (const auto& k : env.B.basisUpTo(cfg.cut.N / 2)) {
          auto pc = q.classOf(Z.star(Element(k), V.vacuum(), {n, m, m}));
          if (pc && *pc == *q.classOf(Element(k))) {
            t.pass();
          } else {
            t.inconclusive(env.text(k) + " *^n_{m,m} 1: difference not certified in the computed span");
          }
        }
        return t.outcome();
      });
    }

  for (const Mode& n : cfg.grid)
    for (const Mode& m : cfg.grid) {
      run.check("bimodule-compatibility", {{"n", n.toString()}, {"m", m.toString()}, {"max_weight", 2}}, [&] {
        const QuotientAlgebra& q = env.family.build(n, m);
        Tally t;
        const auto small = env.B.basisUpTo(2);
        auto compare = [&](const Element& x, const Element& y, const std::string& what) {
          auto cx = q.classOf(x), cy = q.classOf(y);
          if (!cx || !cy) {
            t.inconclusive(what + " leaves the slice");
          } else if (*cx == *cy) {
            t.pass();
          } else {
            t.inconclusive(what + " differs by " + env.text(*cx - *cy) + " outside the computed span");
          }
        };
        for (const auto& a : small)
          for (const auto& b : small)
            for (const auto& x : small) {
              const Element ea(a), eb(b), ex(x);
              compare(Z.star(Z.star(ea, eb, {n, n, n}), ex, {n, m, n}), Z.star(ea, Z.star(eb, ex, {n, m, n}), {n, m, n}),
                      "(a*b).x vs a.(b.x) for " + env.text(a) + "," + env.text(b) + "," + env.text(x));
              compare(Z.star(Z.star(ea, ex, {n, m, n}), eb, {n, m, m}), Z.star(ea, Z.star(ex, eb, {n, m, m}), {n, m, n}),
                      "(a.x).b vs a.(x.b) for " + env.text(a) + "," + env.text(x) + "," + env.text(b));
            }
        return t.outcome();
      });
    }

  for (const FieldEngine* E : env.enginePtrs) {
    for (const Mode& n : cfg.grid)
      for (const Mode& m : cfg.grid) {
        const json params{{"module", E->module().name()}, {"n", n.toString()}, {"m", m.toString()},
                          {"G", cfg.cut.G}, {"P", cfg.cut.P.toString()}};
        run.check("annihilation", params, [&] {
          AnnihilationReport r = checkAnnihilation(Z, *E, n, m, cfg.cut.G, cfg.cut.P);
          std::string counts = std::to_string(r.generators) + " generators (";
          bool first = true;
          for (const auto& [kind, cnt] : r.byKind) {
            counts += (first ? "" : ", ") + toString(kind) + " " + std::to_string(cnt);
            first = false;
          }
          counts += "), " + std::to_string(r.zeroGenerators) + " identically zero";
          if (r.passed()) return Outcome{"pass", counts};
          const auto& v = r.violations.front();
          return Outcome{"fail", std::to_string(r.violations.size()) + " violations; first: " + v.recipe + " on " +
                                     v.state + " -> " + v.image + "; " + counts};
        });
      }
  }

  run.check("induced-module", {{"grid", modeList(cfg.grid)}, {"m", "0"}, {"max_weight", 2}}, [&] {
    // u_p on M(n) = A_{g,n,0}: grading, the identity 1_{-1}, and the bracket
    // [u_p, v_q] = sum_i C(p,i) (u_i v)_{p+q-i} on the unit class.
    Tally t;
    for (const Mode& n : cfg.grid) env.family.build(n, zero);
    const auto small = env.B.basisUpTo(2);
    auto inGrid = [&](const Mode& d) { return std::find(cfg.grid.begin(), cfg.grid.end(), d) != cfg.grid.end(); };
    for (const Mode& n : cfg.grid) {
      const QuotientAlgebra& src = env.family.at(n, zero);
      for (const auto& b : src.basis()) {
        InducedImage id = inducedModuleAction(env.family, V.vacuum(), Mode::integer(-1, T), Element(b), n, zero);
        t.expect(id.degree == n && id.value && *id.value == *src.classOf(Element(b)),
                 [&] { return "1_{-1} on " + env.text(b) + " in M(" + n.toString() + ")"; });
      }
      const Element unit = V.vacuum();
      for (const auto& u : small)
        for (const auto& v : small)
          for (std::int64_t ps = -2 * T; ps <= 2 * T; ++ps)
            for (std::int64_t qs = -2 * T; qs <= 2 * T; ++qs) {
              const Mode p = env.mode(ps), q = env.mode(qs);
              const int su = env.B.sector(u), sv = env.B.sector(v);
              if (!(p - env.mode(su)).isInteger() || !(q - env.mode(sv)).isInteger()) continue;
              const Mode mid1 = n + static_cast<std::int64_t>(v.weight() - 1) - q;
              const Mode mid2 = n + static_cast<std::int64_t>(u.weight() - 1) - p;
              const Mode target = mid1 + static_cast<std::int64_t>(u.weight() - 1) - p;
              if (!inGrid(target) || (mid1 >= 0 && !inGrid(mid1)) || (mid2 >= 0 && !inGrid(mid2))) continue;
              auto act = [&](const Element& x, const Mode& idx, const Element& cls, const Mode& deg)
                  -> std::optional<InducedImage> {
                if (deg < 0) return InducedImage{deg, Element{}};
                InducedImage r = inducedModuleAction(env.family, x, idx, cls, deg, zero);
                if (!r.value) return std::nullopt;
                return r;
              };
              auto vq = act(Element(v), q, unit, n);
              auto up = act(Element(u), p, unit, n);
              if (!vq || !up) {
                t.inconclusive("intermediate class leaves the slice");
                continue;
              }
              auto uvq = act(Element(u), p, *vq->value, vq->degree);
              auto vup = act(Element(v), q, *up->value, up->degree);
              if (!uvq || !vup) {
                t.inconclusive("class leaves the slice");
                continue;
              }
              Element lhs = *uvq->value - *vup->value;
              Element rhs;
              bool escaped = false;
              for (std::int64_t i = 0; i < u.weight() + v.weight(); ++i) {
                const Scalar c = binomial(p, static_cast<int>(i));
                if (c.isZero()) continue;
                for (const auto& [k, ck] : homogeneousComponents(env.B, V.modeProduct(u, i, v))) {
                  auto r = act(ck, p + q - i, unit, n);
                  if (!r) {
                    escaped = true;
                    break;
                  }
                  rhs.addScaled(*r->value, c);
                }
              }
              if (escaped) {
                t.inconclusive("bracket term leaves the slice");
                continue;
              }
              const QuotientAlgebra& tq = env.family.at(target, zero);
              auto lc = tq.classOf(lhs), rc = tq.classOf(rhs);
              if (!lc || !rc) {
                t.inconclusive("bracket leaves the slice");
              } else {
                t.expect(*lc == *rc, [&] {
                  return "[" + env.text(u) + "_" + p.toString() + ", " + env.text(v) + "_" + q.toString() +
                         "] on M(" + n.toString() + ")";
                });
              }
            }
    }
    return t.outcome();
  });
  return run.finish();
}

// ------------------------------------------------------------ straighten

json straightenSuite(const Config& cfg) {
  Env env(cfg);
  const VertexAlgebra& V = *env.voa;
  SuiteRun run("straighten");
  const Mode bound = Mode::fromScaled(5, 2);
  const int T = cfg.order;

  run.check("random-monomials",
            {{"count", cfg.monomials}, {"seed", cfg.seed}, {"mode_bound", bound.toString()}, {"max_weight", cfg.w},
             {"grid", modeList(cfg.grid)}},
            [&] {
              std::mt19937_64 rng(cfg.seed);
              std::uniform_int_distribution<std::size_t> pick(0, cfg.grid.size() - 1);
              Tally t;
              std::size_t steps = 0;
              for (int i = 0; i < cfg.monomials; ++i) {
                const FiltrationCtx ctx{cfg.grid[pick(rng)], cfg.grid[pick(rng)]};
                auto mono = randomMonomial(rng, env.B, ctx, 2 + i % 2, 1, cfg.w, bound);
                if (!mono) {
                  t.fail("no monomial of degree n - m found for n=" + ctx.n.toString() + " m=" + ctx.m.toString());
                  continue;
                }
                Straightener st(V, ctx);
                const std::string text = formatMonomial(env.B, *mono);
                try {
                  const Element u = st.straighten(*mono);
                  steps += st.steps();
                  const UPoly lhs = jMap(env.B, ctx.m - ctx.n, u), rhs = normalizeVacuum(UPoly(*mono));
                  bool agree = true;
                  for (const FieldEngine* E : env.enginePtrs)
                    for (const ModState& w : E->module().statesUpTo(ctx.m))
                      agree = agree && actOn(*E, lhs, ModuleVector(w)) == actOn(*E, rhs, ModuleVector(w));
                  t.expect(agree, [&] { return text + " -> " + env.text(u) + " (n=" + ctx.n.toString() + ")"; });
                } catch (const StepBudgetExceeded& e) {
                  t.fail(text + ": " + e.what());
                }
              }
              return t.outcome(std::to_string(steps) + " rewrite steps");
            });

  run.check("single-factor", {{"grid", modeList(cfg.grid)}, {"max_weight", cfg.w}}, [&] {
    Tally t;
    for (const Mode& n : cfg.grid)
      for (const Mode& m : cfg.grid) {
        Straightener st(V, {n, m});
        for (const auto& u : env.B.basisUpTo(cfg.w)) {
          const UPoly x = jMap(env.B, m - n, Element(u));
          if (x.isZero()) continue;
          t.expect(st.straighten(x) == Element(u), [&] { return env.text(u); });
        }
      }
    return t.outcome();
  });

  run.check("filtration", {{"grid", modeList(cfg.grid)}, {"max_weight", cfg.w}}, [&] {
    // Monomials J_s(u) J_t(v) with t > m straighten to 0 and act as 0 on
    // degrees <= m.
    Tally t;
    const auto keys = env.B.basisUpTo(cfg.w);
    for (const Mode& n : cfg.grid)
      for (const Mode& m : cfg.grid) {
        Straightener st(V, {n, m});
        for (const auto& u : keys)
          for (const auto& v : keys) {
            if (u.isVacuum() || v.isVacuum()) continue;
            for (std::int64_t k = 1; k <= 2 * T; ++k) {
              const Mode tm = m + env.mode(k);
              const Mode s = (m - n) - tm;
              UMonomial mono{{{s, u}, {tm, v}}};
              const UPoly x(mono);
              Element r = st.straighten(mono);
              bool zero = r.isZero();
              for (const FieldEngine* E : env.enginePtrs)
                for (const ModState& w : E->module().statesUpTo(m))
                  zero = zero && actOn(*E, x, ModuleVector(w)).isZero();
              t.expect(zero, [&] { return formatMonomial(env.B, mono); });
            }
          }
      }
    return t.outcome();
  });

  run.check("degree-rejection", json::object(), [&] {
    Straightener st(V, {Mode::integer(0, T), Mode::integer(0, T)});
    const BasisKey g = env.B.generator();
    const Mode q = env.mode(env.B.sector(g) + T);
    try {
      st.straighten(UMonomial{{{q, g}}});
    } catch (const std::invalid_argument&) {
      return Outcome{"pass", "mode sum " + q.toString() + " rejected for n = m = 0"};
    }
    return Outcome{"fail", "mode sum mismatch accepted"};
  });

  for (const FieldEngine* E : env.enginePtrs) {
    const ModuleBackend& M = E->module();
    const Mode maxDeg = std::min(Mode::fromScalar(Scalar(2), T), cfg.kmax);
    run.check("relation",
              {{"module", M.name()}, {"max_weight", cfg.w}, {"l", "[-2,2]"}, {"mode_bound", "5/2"},
               {"max_degree", maxDeg.toString()}},
              [&] {
                Tally t;
                const auto keys = env.B.basisUpTo(cfg.w);
                for (const auto& u : keys)
                  for (const auto& v : keys)
                    for (int l = -2; l <= 2; ++l)
                      for (std::int64_t ss = -5 * T / 2; ss <= 5 * T / 2; ++ss)
                        for (std::int64_t ts = -5 * T / 2; ts <= 5 * T / 2; ++ts) {
                          const Mode s = env.mode(ss), tt = env.mode(ts);
                          if (!(s - env.mode(env.B.sector(u))).isInteger() ||
                              !(tt - env.mode(env.B.sector(v))).isInteger())
                            continue;
                          t.expect(checkUnivRelation(*E, u, v, l, s, tt, maxDeg), [&] {
                            return "u=" + env.text(u) + " v=" + env.text(v) + " l=" + std::to_string(l) +
                                   " s=" + s.toString() + " t=" + tt.toString();
                          });
                        }
                return t.outcome();
              });
  }

  if (env.B.name() == "heisenberg") {
    run.check("oscillator-commutator", {{"n", "0"}, {"m", "0"}}, [&] {
      const Mode z = Mode::integer(0, T);
      Straightener st(V, {z, z});
      QuotientAlgebra q(env.calc, z, z, cfg.cut);
      EqualityResult r = uEqualsModFiltration(parseMonomial(env.B, "J[1/2](a[-1]|0>) * J[-1/2](a[-1]|0>)"),
                                              parseMonomial(env.B, "J[-1/2](a[-1]|0>) * J[1/2](a[-1]|0>)"), st,
                                              env.enginePtrs, q.oApprox());
      return Outcome{r.verdict == Verdict::UnequalProven ? "pass" : "fail", toString(r.verdict) + " " + r.witness};
    });
  }
  return run.finish();
}

// ------------------------------------------------------------ congruence

json congruenceSuite(const Config& cfg) {
  Env env(cfg);
  SuiteRun run("congruence");
  const auto keys = env.B.basisUpTo(cfg.w);
  for (const Mode& n : cfg.grid)
    for (const Mode& m : cfg.grid) {
      const json params{{"n", n.toString()}, {"m", m.toString()}, {"p", modeList(cfg.grid)}, {"max_weight", cfg.w},
                        {"N", cfg.cut.N}, {"G", cfg.cut.G}, {"P", cfg.cut.P.toString()}};
      run.check("congruence", params, [&] {
        const QuotientAlgebra& q = env.family.build(n, m);
        Straightener st(*env.voa, {n, m});
        std::size_t proven = 0, unequal = 0, undecided = 0;
        std::string notes;
        for (const Mode& p : cfg.grid)
          for (const auto& u : keys)
            for (const auto& v : keys) {
              const Element uv = env.calc.star(Element(u), Element(v), {n, m, p});
              EqualityResult r = uEqualsModFiltration(
                  jMap(env.B, m - n, uv),
                  multiply(jMap(env.B, p - n, Element(u)), jMap(env.B, m - p, Element(v))), st, env.enginePtrs,
                  q.oApprox());
              const std::string what = "p=" + p.toString() + " u=" + env.text(u) + " v=" + env.text(v);
              if (r.verdict == Verdict::EqualProven) {
                ++proven;
              } else if (r.verdict == Verdict::UnequalProven) {
                ++unequal;
                notes += "; unequal " + what + ": " + r.witness;
              } else {
                ++undecided;
                notes += "; gap " + what + ": " + r.witness;
              }
            }
        const std::string counts = std::to_string(proven) + " equal-proven, " + std::to_string(unequal) +
                                   " unequal-proven, " + std::to_string(undecided) + " inconclusive";
        if (unequal > 0) return Outcome{"fail", counts + notes};
        if (undecided > 0) return Outcome{"inconclusive", counts + notes};
        return Outcome{"pass", counts};
      });
    }
  return run.finish();
}

// ----------------------------------------------------------- isomorphism

json isomorphismSuite(const Config& cfg) {
  Env env(cfg);
  SuiteRun run("isomorphism");
  IsomorphismParams ip;
  ip.cut = cfg.cut;
  ip.sampleWeight = std::min(cfg.w, 2);
  ip.monomials = std::max(1, cfg.monomials / 10);
  ip.seed = cfg.seed;
  for (const auto& [n, m] : cfg.pairs) {
    const json params{{"n", n.toString()}, {"m", m.toString()}, {"N", cfg.cut.N}, {"G", cfg.cut.G},
                      {"P", cfg.cut.P.toString()}, {"sample_weight", ip.sampleWeight}, {"monomials", ip.monomials}};
    std::optional<IsomorphismReport> rep;
    std::string error;
    for (int which = 0; which < 4; ++which) {
      static const char* names[] = {"well-defined", "multiplicative", "surjective", "injective"};
      run.check(names[which], params, [&] {
        if (which == 0) {
          try {
            rep = verifyIsomorphism(env.calc, env.family.build(n, m), env.enginePtrs, ip);
          } catch (const std::exception& e) {
            error = e.what();
          }
        }
        if (!rep) return Outcome{"fail", "exception: " + error};
        const SubVerdict& sv = which == 0   ? rep->wellDefined
                               : which == 1 ? rep->multiplicative
                               : which == 2 ? rep->surjective
                                            : rep->injective;
        std::string w = std::to_string(sv.checked) + " checked, " + std::to_string(sv.proven) + " proven, " +
                        std::to_string(sv.inconclusive) + " inconclusive, " + std::to_string(sv.failed) + " failed";
        for (const auto& note : sv.notes) w += "; " + note;
        return Outcome{sv.verdict(), w};
      });
    }
  }
  return run.finish();
}

void stripInPlace(json& j) {
  if (j.is_object()) {
    j.erase("elapsed_ms");
    for (auto& [k, v] : j.items()) stripInPlace(v);
  } else if (j.is_array()) {
    for (auto& v : j) stripInPlace(v);
  }
}

}  // namespace

Config Config::fromInput(const ConfigInput& in) {
  Config cfg;
  cfg.backend = in.backend;
  if (in.backend == "heisenberg") {
    cfg.order = 2;
    cfg.c = Scalar(1);
  } else if (in.backend == "virasoro") {
    cfg.order = 1;
    try {
      cfg.c = Scalar::parse(in.c);
    } catch (const std::exception&) {
      throw ConfigError("c: '" + in.c + "' is not an exact rational");
    }
  } else {
    throw ConfigError("backend: unknown backend '" + in.backend + "' (expected heisenberg or virasoro)");
  }
  const int T = cfg.order;
  cfg.n = parseGridValue(in.n, T, "n");
  cfg.mGiven = !in.m.empty();
  cfg.m = cfg.mGiven ? parseGridValue(in.m, T, "m") : cfg.n;

  if (in.grid.empty()) {
    for (int s = 0; s < (T == 2 ? 4 : 3); ++s) cfg.grid.push_back(Mode::fromScaled(s, T));
  } else {
    for (const auto& item : splitList(in.grid, ',')) cfg.grid.push_back(parseGridValue(item, T, "grid"));
    if (cfg.grid.empty()) throw ConfigError("grid: empty");
  }
  std::vector<std::string> pairs = splitList(in.pairs, ',');
  if (pairs.empty())
    pairs = T == 2 ? std::vector<std::string>{"0:0", "1/2:1/2", "0:1/2", "1/2:0", "1:1/2"}
                   : std::vector<std::string>{"0:0", "1:0", "0:1", "1:1"};
  for (const auto& item : pairs) {
    auto parts = splitList(item, ':');
    if (parts.size() != 2) throw ConfigError("pairs: '" + item + "' is not of the form n:m");
    cfg.pairs.emplace_back(parseGridValue(parts[0], T, "pairs"), parseGridValue(parts[1], T, "pairs"));
  }

  if (in.cutoffN < 1) throw ConfigError("cutoff-N must be positive");
  if (in.cutoffG < 1) throw ConfigError("cutoff-G must be positive");
  if (in.w < 1) throw ConfigError("w must be positive");
  if (in.monomials < 1) throw ConfigError("monomials must be positive");
  cfg.cut.N = in.cutoffN;
  cfg.cut.G = in.cutoffG;
  cfg.cut.P = parseGridValue(in.cutoffP.empty() ? (T == 2 ? "3/2" : "2") : in.cutoffP, T, "cutoff-P");
  cfg.w = in.w;
  cfg.imax = parseMode(in.imax, T, "imax");
  cfg.kmax = parseMode(in.kmax, T, "kmax");
  if (cfg.imax <= 0) throw ConfigError("imax must be positive");
  if (cfg.kmax <= 0) throw ConfigError("kmax must be positive");
  cfg.seed = in.seed;
  cfg.monomials = in.monomials;
  for (const auto& s : in.suites) {
    if (s == "all") {
      cfg.suites = suiteNames();
      break;
    }
    if (std::find(suiteNames().begin(), suiteNames().end(), s) == suiteNames().end())
      throw ConfigError("unknown suite '" + s + "'");
    cfg.suites.push_back(s);
  }
  return cfg;
}

json Config::toJson() const {
  json pairList = json::array();
  for (const auto& [n0, m0] : pairs) pairList.push_back(n0.toString() + ":" + m0.toString());
  return {{"backend", backend},
          {"c", c.toString()},
          {"T", order},
          {"n", n.toString()},
          {"m", m.toString()},
          {"grid", modeList(grid)},
          {"pairs", pairList},
          {"cutoff_N", cut.N},
          {"cutoff_G", cut.G},
          {"cutoff_P", cut.P.toString()},
          {"w", w},
          {"imax", imax.toString()},
          {"kmax", kmax.toString()},
          {"seed", seed},
          {"monomials", monomials}};
}

std::shared_ptr<const VertexAlgebra> Config::makeAlgebra() const {
  return backend == "heisenberg" ? VertexAlgebra::heisenberg() : VertexAlgebra::virasoro(c);
}

const std::vector<std::string>& suiteNames() {
  static const std::vector<std::string> names{"axioms",     "modules",    "zhu",
                                              "straighten", "congruence", "isomorphism"};
  return names;
}

json runSuite(const Config& config, const std::string& suite) {
  if (suite == "axioms") return axiomsSuite(config);
  if (suite == "modules") return modulesSuite(config);
  if (suite == "zhu") return zhuSuite(config);
  if (suite == "straighten") return straightenSuite(config);
  if (suite == "congruence") return congruenceSuite(config);
  if (suite == "isomorphism") return isomorphismSuite(config);
  throw ConfigError("unknown suite '" + suite + "'");
}

json runReport(const Config& config) {
  json suites = json::array();
  for (const auto& s : config.suites.empty() ? suiteNames() : config.suites) suites.push_back(runSuite(config, s));
  json out{{"schema", kReportSchema}, {"config", config.toJson()}, {"suites", suites}};
  json summary = json::object();
  for (const auto& [k, v] : tallyVerdicts(out)) summary[k] = v;
  out["summary"] = summary;
  return out;
}

std::map<std::string, std::size_t> tallyVerdicts(const json& report) {
  std::map<std::string, std::size_t> out{{"pass", 0}, {"fail", 0}, {"inconclusive", 0}};
  std::function<void(const json&)> walk = [&](const json& j) {
    if (j.is_object()) {
      if (j.contains("verdict") && j["verdict"].is_string()) ++out[j["verdict"].get<std::string>()];
      for (const auto& [k, v] : j.items())
        if (k != "summary") walk(v);
    } else if (j.is_array()) {
      for (const auto& v : j) walk(v);
    }
  };
  walk(report);
  return out;
}

bool hasFailures(const json& report) { return tallyVerdicts(report).at("fail") > 0; }

json stripTiming(const json& report) {
  json out = report;
  stripInPlace(out);
  return out;
}

json quotientJson(const ZhuCalculus& calc, QuotientFamily& family, const Mode& n, const Mode& m) {
  const VoaBackend& B = calc.algebra().backend();
  const QuotientAlgebra& q = family.build(n, m);
  auto text = [&](const Element& v) { return formatElement(B, v); };
  json basis = json::array();
  for (const auto& k : q.basis()) basis.push_back(text(Element(k)));
  auto table = [&](const std::vector<TableEntry>& entries) {
    json out = json::array();
    for (const auto& e : entries)
      out.push_back({{"left", text(Element(e.left))},
                     {"right", text(Element(e.right))},
                     {"value", e.value ? json(text(*e.value)) : json(nullptr)},
                     {"verdict", e.value ? "pass" : "inconclusive"}});
    return out;
  };
  json out{{"n", q.n().toString()},
           {"m", q.m().toString()},
           {"N", q.cutoffs().N},
           {"G", q.cutoffs().G},
           {"P", q.cutoffs().P.toString()},
           {"slice_dim", q.sliceDim()},
           {"span_rank", q.spanRank()},
           {"basis", basis}};
  if (q.n() == q.m()) {
    out["multiplication"] = table(q.multiplicationTable(calc));
  } else {
    out["left_action"] = table(q.leftActionTable(calc, family.build(q.n(), q.n()).basis()));
    out["right_action"] = table(q.rightActionTable(calc, family.build(q.m(), q.m()).basis()));
  }
  return out;
}

}  // namespace twzhu
