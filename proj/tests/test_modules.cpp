#include <gtest/gtest.h>

#include "support.hpp"
#include "twzhu/axioms.hpp"
#include "twzhu/text.hpp"
#include "twzhu/twisted_module.hpp"

using namespace twzhu;
using twzhu::testing::Gen;

namespace {

const BasisKey kAlpha{{1}};

Mode half(std::int64_t k) { return Mode::fromScaled(k, 2); }

struct Heis {
  Heis(bool twisted = true, Mode trunc = Mode::integer(3, 2))
      : voa(VertexAlgebra::heisenberg()),
        module(std::make_unique<OscillatorModule>(voa->backend(), twisted, trunc)),
        engine(*voa, *module) {}
  std::shared_ptr<const VertexAlgebra> voa;
  std::unique_ptr<ModuleBackend> module;
  FieldEngine engine;
};

ModuleVector top() { return ModuleVector(ModState{}); }

}  // namespace

TEST(TwistedFock, States) {
  Heis h;
  const auto& M = *h.module;
  EXPECT_EQ(M.ket(), "|tw>");
  EXPECT_EQ(M.states(half(0)).size(), 1u);
  EXPECT_EQ(M.states(half(1)).size(), 1u);
  EXPECT_EQ(M.states(half(2)).size(), 1u);   // a[-1/2]^2
  EXPECT_EQ(M.states(half(3)).size(), 2u);   // a[-3/2], a[-1/2]^3
  for (const ModState& s : M.statesUpTo(Mode::integer(3, 2))) {
    EXPECT_EQ(parseModuleVector(M, M.stateText(s)), ModuleVector(s));
  }
}

TEST(TwistedFock, OscillatorAction) {
  Heis h;
  const Element a(kAlpha);
  EXPECT_TRUE(h.engine.apply(a, half(1), top()).isZero());
  EXPECT_EQ(formatModuleVector(*h.module, h.engine.apply(a, half(-1), top())), "a[-1/2]|tw>");
  // Modes outside 1/2 + Z do not act.
  EXPECT_TRUE(h.engine.apply(a, Mode::integer(-1, 2), top()).isZero());
}

TEST(TwistedFock, VacuumActsAsIdentity) {
  Heis h;
  for (const ModState& s : h.module->statesUpTo(Mode::integer(3, 2))) {
    EXPECT_EQ(h.engine.apply(h.voa->vacuum(), Mode::integer(-1, 2), ModuleVector(s)), ModuleVector(s));
    for (int p : {-3, -2, 0, 1, 2}) EXPECT_TRUE(h.engine.apply(h.voa->vacuum(), Mode::integer(p, 2), ModuleVector(s)).isZero());
  }
}

TEST(TwistedFock, ConformalWeightShiftGolden) {
  // L(0) = omega_1 acts on the degree-k slice as k + 1/16.
  Heis h;
  for (const ModState& s : h.module->statesUpTo(Mode::integer(3, 2))) {
    const ModuleVector img = h.engine.apply(h.voa->omega(), Mode::integer(1, 2), ModuleVector(s));
    EXPECT_EQ(img, ModuleVector(s) * (h.module->degree(s).value() + Scalar(1, 16)));
  }
}

TEST(UntwistedFock, ConformalWeightAndCommutator) {
  Heis h(false);
  EXPECT_EQ(h.module->ket(), "|0>");
  for (const ModState& s : h.module->statesUpTo(Mode::integer(3, 2)))
    EXPECT_EQ(h.engine.apply(h.voa->omega(), Mode::integer(1, 2), ModuleVector(s)),
              ModuleVector(s) * h.module->degree(s).value());
  const auto keys = h.voa->backend().basisUpTo(2);
  for (const auto& u : keys)
    for (const auto& v : keys)
      for (int m = -3; m <= 3; ++m)
        for (int n = -3; n <= 3; ++n) {
          EXPECT_TRUE(checkCommutator(h.engine, u, v, Mode::integer(m, 2), Mode::integer(n, 2), Mode::integer(2, 2)));
          EXPECT_TRUE(checkTwistedJacobi(h.engine, u, v, 1, Mode::integer(m, 2), Mode::integer(n, 2), Mode::integer(2, 2)));
        }
}

TEST(UntwistedFock, JacobiSampledGrid) {
  Heis h(false);
  Gen gen(41);
  const auto keys = h.voa->backend().basisUpTo(3);
  for (int t = 0; t < 120; ++t) {
    const BasisKey& u = gen.pick(keys);
    const BasisKey& v = gen.pick(keys);
    EXPECT_TRUE(checkTwistedJacobi(h.engine, u, v, gen.integer(-3, 3), Mode::integer(gen.integer(-3, 3), 2),
                                   Mode::integer(gen.integer(-3, 3), 2), Mode::integer(3, 2)));
  }
}

TEST(Commutator, OscillatorBracket) {
  Heis h;
  const Element a(kAlpha);
  for (const ModState& s : h.module->statesUpTo(Mode::integer(3, 2))) {
    const ModuleVector w(s);
    const ModuleVector br = h.engine.apply(a, half(1), h.engine.apply(a, half(-1), w)) -
                            h.engine.apply(a, half(-1), h.engine.apply(a, half(1), w));
    EXPECT_EQ(br, w * Scalar(1, 2));
  }
  EXPECT_TRUE(checkCommutator(h.engine, kAlpha, kAlpha, half(1), half(-1), Mode::integer(3, 2)));
  EXPECT_TRUE(checkCommutator(h.engine, BasisKey{}, kAlpha, Mode::integer(0, 2), half(1), Mode::integer(3, 2)));
}

TEST(Commutator, RejectsWrongCoset) {
  Heis h;
  EXPECT_THROW(checkCommutator(h.engine, kAlpha, kAlpha, Mode::integer(1, 2), half(1), Mode::integer(1, 2)),
               std::invalid_argument);
  EXPECT_THROW(checkTwistedJacobi(h.engine, kAlpha, kAlpha, 0, Mode::integer(1, 2), half(1), Mode::integer(1, 2)),
               std::invalid_argument);
}

TEST(Commutator, VirasoroLOneLMinusOne) {
  auto voa = VertexAlgebra::virasoro(Scalar(1, 2));
  for (const Scalar& h : {Scalar(0), Scalar(1, 2), Scalar(3)}) {
    VirasoroHighestWeightModule M(voa->backend(), h, Mode::integer(3));
    FieldEngine engine(*voa, M);
    const Element w(BasisKey{{2}});
    for (const ModState& s : M.statesUpTo(Mode::integer(2))) {
      const ModuleVector x(s);
      const ModuleVector lhs = engine.apply(w, Mode::integer(2), engine.apply(w, Mode::integer(0), x)) -
                               engine.apply(w, Mode::integer(0), engine.apply(w, Mode::integer(2), x));
      EXPECT_EQ(lhs, engine.apply(w, Mode::integer(1), x) * Scalar(2));
    }
  }
}

TEST(VirasoroModules, HighestWeightAndStates) {
  auto voa = VertexAlgebra::virasoro(Scalar(26));
  VirasoroHighestWeightModule vac(voa->backend(), Scalar(0), Mode::integer(4));
  VirasoroHighestWeightModule verma(voa->backend(), Scalar(1, 2), Mode::integer(4));
  EXPECT_EQ(vac.statesUpTo(Mode::integer(4)).size(), 1u + 0 + 1 + 1 + 2);
  EXPECT_EQ(verma.statesUpTo(Mode::integer(4)).size(), 1u + 1 + 2 + 3 + 5);
  EXPECT_EQ(verma.ket(), "|h=1/2>");
  FieldEngine e(*voa, verma);
  const ModState s{{1}};
  EXPECT_EQ(verma.stateText(s), "L[-1]|h=1/2>");
  EXPECT_EQ(parseModuleVector(verma, "2*L[-1]|h=1/2>"), ModuleVector(s, Scalar(2)));
  // L(1)L(-1)v_h = 2h v_h.
  EXPECT_EQ(verma.applyL(1, s), ModuleVector(ModState{}, Scalar(1)));
  EXPECT_TRUE(vac.applyL(-1, ModState{}).isZero());
  const auto mods = makeTwistedModules(voa->backend(), Mode::integer(2));
  ASSERT_EQ(mods.size(), 5u);
  EXPECT_EQ(mods[0]->name(), "virasoro-vacuum");
}

TEST(VirasoroModules, JacobiOnVermaModules) {
  auto voa = VertexAlgebra::virasoro(Scalar(1, 2));
  for (const auto& M : makeTwistedModules(voa->backend(), Mode::integer(3))) {
    FieldEngine e(*voa, *M);
    const auto keys = voa->backend().basisUpTo(3);
    for (const auto& u : keys)
      for (const auto& v : keys)
        for (int l = -2; l <= 2; ++l)
          for (int m = -2; m <= 2; ++m)
            EXPECT_TRUE(checkTwistedJacobi(e, u, v, l, Mode::integer(m), Mode::integer(-m + 1), Mode::integer(2)))
                << M->name();
  }
}

TEST(OOperator, Examples) {
  Heis h;
  const auto& M = *h.module;
  const auto states = M.statesUpTo(M.truncation());
  // o_0(omega) = L(0).
  auto o = oOperator(h.engine, h.voa->omega(), Mode::integer(0, 2));
  for (std::size_t j = 0; j < states.size(); ++j)
    EXPECT_EQ(o[j], ModuleVector(states[j]) * (M.degree(states[j]).value() + Scalar(1, 16)));
  // o_{1/2}(alpha) = alpha_{1/2}.
  EXPECT_EQ(oApply(h.engine, Element(kAlpha), half(1), ModuleVector(ModState{{1}})), top() * Scalar(1, 2));
  // o_0(alpha) = 0 (index 0 outside 1/2 + Z).
  for (const auto& col : oOperator(h.engine, Element(kAlpha), Mode::integer(0, 2))) EXPECT_TRUE(col.isZero());
}

TEST(OOperator, TruncationIsExplicit) {
  Heis h(true, Mode::integer(1, 2));
  EXPECT_THROW(oOperator(h.engine, Element(kAlpha), half(-1)), TruncationError);
  EXPECT_THROW(buildFieldAction(h.engine, Element(kAlpha)).matrix(half(-3)), TruncationError);
  EXPECT_NO_THROW(buildFieldAction(h.engine, Element(kAlpha)).matrix(half(1)));
}

TEST(OmegaApprox, ContainsLowDegrees) {
  Heis h;
  for (std::int64_t s = 0; s <= 3; ++s) {
    const Mode n = half(s);
    const Subspace<ModState> om = omegaNApprox(h.engine, n, 3, Mode::integer(2, 2));
    for (const ModState& w : h.module->statesUpTo(n)) EXPECT_TRUE(om.contains(ModuleVector(w)));
  }
  const Subspace<ModState> zero = omegaNApprox(h.engine, half(0), 3, Mode::integer(2, 2));
  EXPECT_TRUE(zero.contains(top()));
  EXPECT_FALSE(zero.contains(ModuleVector(ModState{{1}})));
  // n at the truncation: the whole truncated space.
  const Subspace<ModState> all = omegaNApprox(h.engine, Mode::integer(3, 2), 3, Mode::integer(2, 2));
  EXPECT_EQ(all.rank(), h.module->statesUpTo(Mode::integer(3, 2)).size());
}

TEST(GradingTransport, RandomSamples) {
  Heis h;
  Gen gen(42);
  const auto keys = h.voa->backend().basisUpTo(3);
  const auto states = h.module->statesUpTo(Mode::integer(2, 2));
  for (int t = 0; t < 300; ++t) {
    const BasisKey& v = gen.pick(keys);
    Mode p = gen.mode(2, 7);
    if (!h.module->modeAllowed(h.voa->backend().sector(v), p)) p = p + half(1);
    EXPECT_TRUE(checkGradingTransport(h.engine, v, p, gen.pick(states)));
  }
}

TEST(SelfModule, ReproducesModeProducts) {
  for (auto voa : {VertexAlgebra::heisenberg(), VertexAlgebra::virasoro(Scalar(26))}) {
    auto self = voa->backend().makeSelfModule();
    FieldEngine fresh(*voa, *self);
    for (const auto& u : voa->backend().basisUpTo(3))
      for (const auto& v : voa->backend().basisUpTo(3))
        for (int i = -4; i <= 5; ++i)
          EXPECT_EQ(toElement(fresh.apply(Element(u), voa->mode(i), ModuleVector(ModState{v.parts}))),
                    voa->modeProduct(u, i, v));
  }
}
