#include <gtest/gtest.h>

#include "support.hpp"
#include "twzhu/ueva.hpp"

using namespace twzhu;
using twzhu::testing::Gen;

namespace {

const BasisKey kAlpha{{1}};

Mode q(std::int64_t scaled, int T) { return Mode::fromScaled(scaled, T); }

UPoly mono(std::initializer_list<JFactor> fs) { return UPoly(UMonomial{std::vector<JFactor>(fs)}); }

}  // namespace

TEST(JMap, SectorsAndCosets) {
  auto H = VertexAlgebra::heisenberg();
  const auto& B = H->backend();
  EXPECT_TRUE(jMap(B, q(0, 2), Element(kAlpha)).isZero());
  EXPECT_EQ(jMap(B, q(1, 2), Element(kAlpha)), mono({{q(1, 2), kAlpha}}));
  // Only the even component of a mixed element survives at an integral mode.
  const Element mixed = Element(kAlpha) + H->omega();
  EXPECT_EQ(jMap(B, q(0, 2), mixed), mono({{q(0, 2), BasisKey{{1, 1}}}}) * Scalar(1, 2));
}

TEST(JMap, VacuumNormalization) {
  auto H = VertexAlgebra::heisenberg();
  const Mode z = q(0, 2);
  const UPoly x = multiply(mono({{z, BasisKey{}}}), mono({{q(1, 2), kAlpha}}));
  EXPECT_EQ(normalizeVacuum(x), mono({{q(1, 2), kAlpha}}));
  EXPECT_TRUE(normalizeVacuum(mono({{q(2, 2), BasisKey{}}})).isZero());
  EXPECT_EQ(normalizeVacuum(mono({{z, BasisKey{}}})), UPoly(UMonomial{}));
}

TEST(ActOn, FactorsApplyRightToLeft) {
  auto H = VertexAlgebra::heisenberg();
  OscillatorModule tw(H->backend(), true, Mode::integer(2, 2));
  FieldEngine e(*H, tw);
  // J_m(a) = a(m).
  const UPoly x = mono({{q(1, 2), kAlpha}, {q(-1, 2), kAlpha}});
  EXPECT_EQ(actOn(e, x, ModuleVector(ModState{})), ModuleVector(ModState{}, Scalar(1, 2)));
  const UPoly y = mono({{q(-1, 2), kAlpha}, {q(1, 2), kAlpha}});
  EXPECT_TRUE(actOn(e, y, ModuleVector(ModState{})).isZero());
}

TEST(Straighten, SingleFactorIsIdentity) {
  for (auto V : {VertexAlgebra::heisenberg(), VertexAlgebra::virasoro(Scalar(26))}) {
    const int T = V->order();
    for (const Mode& n : {q(0, T), q(1, T), q(2, T)})
      for (const Mode& m : {q(0, T), q(1, T)}) {
        Straightener st(*V, {n, m});
        for (const auto& u : V->backend().basisUpTo(4)) {
          const UMonomial mn{{{m - n, u}}};
          const bool live = u.isVacuum() ? m == n : (m - n - Mode::fromScaled(V->backend().sector(u), T)).isInteger();
          EXPECT_EQ(st.straighten(mn), live ? Element(u) : Element{});
        }
      }
  }
}

TEST(Straighten, RejectsWrongDegree) {
  auto H = VertexAlgebra::heisenberg();
  Straightener st(*H, {q(0, 2), q(0, 2)});
  EXPECT_THROW(st.straighten(UMonomial{{{q(1, 2), kAlpha}}}), std::invalid_argument);
}

TEST(Straighten, FiltrationTailVanishes) {
  auto H = VertexAlgebra::heisenberg();
  Straightener st(*H, {q(0, 2), q(0, 2)});
  // J_{-1/2}(a) J_{1/2}(a): last mode 1/2 > m = 0.
  EXPECT_TRUE(st.straighten(UMonomial{{{q(-1, 2), kAlpha}, {q(1, 2), kAlpha}}}).isZero());
  // J_{1/2}(a) J_{-1/2}(a) = J_0(a_0 a) + (1/2) J_0(a_1 a) = 1/2 |0>.
  EXPECT_EQ(st.straighten(UMonomial{{{q(1, 2), kAlpha}, {q(-1, 2), kAlpha}}}), H->vacuum() * Scalar(1, 2));
}

TEST(Straighten, StepBudget) {
  auto H = VertexAlgebra::heisenberg();
  Straightener st(*H, {q(0, 2), q(0, 2)}, StraightenOptions{1});
  UMonomial m{{{q(3, 2), kAlpha}, {q(-1, 2), kAlpha}, {q(-1, 2), kAlpha}, {q(-1, 2), kAlpha}}};
  EXPECT_THROW(st.straighten(m), StepBudgetExceeded);
}

TEST(Straighten, AgreesWithActionProperty) {
  // On states of degree <= m the filtration acts as zero, so a monomial and
  // J_{m-n}(straighten) act identically there.
  std::mt19937_64 rng(71);
  for (auto V : {VertexAlgebra::heisenberg(), VertexAlgebra::virasoro(Scalar(1, 2))}) {
    const int T = V->order();
    auto modules = makeTwistedModules(V->backend(), Mode::integer(2, T));
    std::vector<std::unique_ptr<FieldEngine>> engines;
    for (const auto& M : modules) engines.push_back(std::make_unique<FieldEngine>(*V, *M));
    for (const Mode& n : {q(0, T), q(1, T)})
      for (const Mode& m : {q(0, T), q(1, T), q(2, T)}) {
        const FiltrationCtx ctx{n, m};
        Straightener st(*V, ctx);
        for (int t = 0; t < 15; ++t) {
          auto mn = randomMonomial(rng, V->backend(), ctx, 1 + t % 3, 1, 2, Mode::fromScaled(5, 2));
          ASSERT_TRUE(mn.has_value());
          EXPECT_EQ(mn->modeSum(T), m - n);
          const UPoly image = phi(V->backend(), ctx, st.straighten(*mn));
          for (const auto& e : engines)
            for (const ModState& w : e->module().statesUpTo(m))
              EXPECT_EQ(actOn(*e, UPoly(*mn), ModuleVector(w)), actOn(*e, image, ModuleVector(w)))
                  << formatMonomial(V->backend(), *mn) << " on " << e->module().name();
        }
      }
  }
}

TEST(UnivRelation, HoldsOnModules) {
  auto H = VertexAlgebra::heisenberg();
  OscillatorModule tw(H->backend(), true, Mode::integer(2, 2));
  FieldEngine e(*H, tw);
  const auto keys = H->backend().basisUpTo(2);
  for (const auto& u : keys)
    for (const auto& v : keys)
      for (std::int64_t l = -2; l <= 2; ++l)
        for (std::int64_t s = -3; s <= 3; ++s)
          for (std::int64_t t = -3; t <= 3; ++t) {
            const Mode ms = q(s, 2), mt = q(t, 2);
            if (!tw.modeAllowed(H->backend().sector(u), ms + (u.weight() - 1)) ||
                !tw.modeAllowed(H->backend().sector(v), mt + (v.weight() - 1)))
              continue;
            EXPECT_TRUE(checkUnivRelation(e, u, v, l, ms, mt, Mode::integer(2, 2)));
          }
  EXPECT_THROW(checkUnivRelation(e, kAlpha, kAlpha, 0, q(0, 2), q(1, 2), Mode::integer(1, 2)), std::invalid_argument);
}

TEST(Equality, Verdicts) {
  auto H = VertexAlgebra::heisenberg();
  ZhuCalculus Z(H);
  const Mode z = q(0, 2);
  OscillatorModule tw(H->backend(), true, Mode::integer(1, 2));
  FieldEngine e(*H, tw);
  QuotientAlgebra A(Z, z, z, {6, 3, q(1, 2)});
  const FiltrationCtx ctx{z, z};
  Straightener st(*H, ctx);
  const UPoly omega = phi(H->backend(), ctx, H->omega());
  const UPoly one = phi(H->backend(), ctx, H->vacuum());
  EXPECT_EQ(uEqualsModFiltration(omega, omega, st, {&e}, A.oApprox()).verdict, Verdict::EqualProven);
  const auto r = uEqualsModFiltration(omega, one, st, {&e}, A.oApprox());
  EXPECT_EQ(r.verdict, Verdict::UnequalProven);
  EXPECT_NE(r.witness.find("|tw>"), std::string::npos);
  // omega = 1/16 in the quotient, proven by the O-span alone.
  EXPECT_EQ(uEqualsModFiltration(omega, one * Scalar(1, 16), st, {}, A.oApprox()).verdict, Verdict::EqualProven);
  // Without modules or span certificate nothing is decided.
  QuotientAlgebra tiny(Z, z, z, {2, 1, q(0, 2)});
  EXPECT_NE(uEqualsModFiltration(omega, one, st, {}, tiny.oApprox()).verdict, Verdict::UnequalProven);
  EXPECT_THROW(uEqualsModFiltration(omega, mono({{q(1, 2), kAlpha}}), st, {}, A.oApprox()), std::invalid_argument);
}

TEST(MonomialText, RoundTripAndErrors) {
  Gen gen(72);
  std::mt19937_64 rng(73);
  auto H = VertexAlgebra::heisenberg();
  const FiltrationCtx ctx{q(1, 2), q(0, 2)};
  for (int t = 0; t < 40; ++t) {
    auto mn = randomMonomial(rng, H->backend(), ctx, 1 + t % 4, 1, 3, Mode::fromScaled(5, 2));
    ASSERT_TRUE(mn.has_value());
    for (const auto& f : mn->factors) EXPECT_LE(f.mode.scaled() < 0 ? -f.mode.scaled() : f.mode.scaled(), 5);
    EXPECT_EQ(parseMonomial(H->backend(), formatMonomial(H->backend(), *mn)), UPoly(*mn));
  }
  EXPECT_EQ(parseMonomial(H->backend(), "J[1/2](a[-1]|0>) * J[0](|0>)"), mono({{q(1, 2), kAlpha}}));
  EXPECT_EQ(parseMonomial(H->backend(), "J[0](a[-1]|0> + 2*a[-1]a[-1]|0>)"), mono({{q(0, 2), BasisKey{{1, 1}}}}) * Scalar(2));
  EXPECT_THROW(parseMonomial(H->backend(), "J[1/3](|0>)"), ParseError);
  EXPECT_THROW(parseMonomial(H->backend(), "J[0](|0>"), ParseError);
  EXPECT_THROW(parseMonomial(H->backend(), "J[0](|0>) x"), ParseError);
}
