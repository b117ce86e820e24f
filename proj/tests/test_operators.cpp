#include <gtest/gtest.h>

#include "support.hpp"

using namespace dra;
namespace fx = dra::fixtures;

namespace {

std::size_t el(const FiniteAlgebra &A, const std::string &n) { return *A.index_of(n); }

OpTable meet_table(const FiniteAlgebra &A)
{
  return OpTable::tabulate(2, A.size(), [&](auto a) { return A.meet(a[0], a[1]); });
}

OpTable constant_bottom(const FiniteAlgebra &A, std::size_t arity)
{
  return OpTable::tabulate(arity, A.size(), [&](auto) { return A.bottom(); });
}

OpTable identity_op(const FiniteAlgebra &A)
{
  return OpTable::tabulate(1, A.size(), [](auto a) { return a[0]; });
}

fx::Fixture with_op(fx::Fixture f, PfOp op)
{
  f.algebra = share(f.algebra->with_extra(std::string(pf_op_name(op)), concrete_table(*f.concrete, op)));
  return f;
}


SpaceRelation diagonal(const EtaleSpace &S)
{
  SpaceRelation R{"diag", 2, {}};
  for (std::size_t x = 0; x < S.size(); ++x)
    R.tuples.insert({x, x});
  return R;
}

} // namespace

TEST(OperatorChecks, MeetIsCompatibilityPreservingOperator)
{
  for (const auto &f : fx::abstract_fixtures()) {
    auto cls = classify_operator(*f.algebra, meet_table(*f.algebra), "meet");
    EXPECT_TRUE(cls.is_compat_preserving_operator()) << f.name;
  }
}

TEST(OperatorChecks, ComposeOnClosedAlgebra)
{
  auto pf2 = fx::PF2();
  auto cls = classify_operator(*pf2.algebra, concrete_table(*pf2.concrete, PfOp::Compose), "compose");
  EXPECT_TRUE(cls.is_compat_preserving_operator());
}

TEST(OperatorChecks, OverrideFails)
{
  auto pf2 = fx::PF2();
  auto cls = classify_operator(*pf2.algebra, concrete_table(*pf2.concrete, PfOp::Override), "override");
  EXPECT_FALSE(cls.is_compat_preserving_operator());
  EXPECT_FALSE(cls.compat_preserving.ok && cls.additive.ok);
}

TEST(OperatorChecks, NormalAndAdditive)
{
  auto b4 = *fx::B4().algebra;
  auto z = classify_operator(b4, constant_bottom(b4, 1), "zero");
  EXPECT_TRUE(z.normal.ok);
  EXPECT_TRUE(z.additive.ok);
  auto d = with_op(fx::PF2(), PfOp::Domain);
  EXPECT_TRUE(check_normal(*d.algebra, *d.algebra->extra("domain")).ok);
  EXPECT_TRUE(check_additive(*d.algebra, *d.algebra->extra("domain")).ok);
  // Ω(0) = a.
  auto bad = OpTable::tabulate(1, b4.size(), [&](auto) { return el(b4, "a"); });
  auto r = check_normal(b4, bad, "bad");
  EXPECT_FALSE(r.ok);
  EXPECT_FALSE(r.witness.empty());
}

TEST(OperatorChecks, Caps)
{
  auto big = fx::PF2().algebra; // 9 elements
  EXPECT_NO_THROW(check_normal(*big, constant_bottom(*big, 3)));
  EXPECT_THROW(check_normal(*big, constant_bottom(*big, 4)), SizeCapError);
  auto c3 = Carrier::make(3);
  auto A = from_concrete(ConcretePFAlgebra(c3, enumerate_all_pfs(c3)));
  EXPECT_THROW(check_normal(A, constant_bottom(A, 1)), SizeCapError);
}

TEST(Relations, FromOperatorExamples)
{
  auto a3c = with_op(fx::A3c(), PfOp::Domain);
  auto FA = F_object(a3c.algebra);
  auto R = relation_from_operator(FA, *a3c.algebra->extra("domain"), "domain");
  EXPECT_EQ(R.arity, 2u);
  EXPECT_EQ(R.tuples, diagonal(*FA.space).tuples);
  auto zero = relation_from_operator(FA, constant_bottom(*a3c.algebra, 1), "zero");
  EXPECT_TRUE(zero.tuples.empty());
  auto id = relation_from_operator(FA, identity_op(*a3c.algebra), "id");
  EXPECT_EQ(id.tuples, diagonal(*FA.space).tuples);
}

TEST(Relations, OperationFromRelation)
{
  auto S = F_object(fx::A3i().algebra).space;
  auto G = G_object(S);
  auto idop = operation_from_relation(G, diagonal(*S));
  EXPECT_EQ(idop, identity_op(*G.algebra));
  SpaceRelation empty{"empty", 2, {}};
  auto z = operation_from_relation(G, empty);
  EXPECT_EQ(z, constant_bottom(*G.algebra, 1));
  SpaceRelation full{"full", 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}};
  EXPECT_THROW(operation_from_relation(G, full), InputError);
}

TEST(Relations, Properties)
{
  auto S = F_object(fx::A3i().algebra).space;
  SpaceRelation full{"full", 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}};
  auto rep = check_relation_properties(*S, full);
  EXPECT_FALSE(rep.passed("compatibility_property"));
  for (const auto &f : fx::operator_fixtures()) {
    auto FA = F_object(f.algebra);
    for (const auto &[name, t] : f.algebra->extras()) {
      auto R = relation_from_operator(FA, t, name);
      auto props = check_relation_properties(*FA.space, R);
      EXPECT_TRUE(props.ok()) << f.name << " " << name << ": " << props.first_failure();
      EXPECT_EQ(is_tight_by_enumeration(*FA.space, R), props.passed("tight")) << f.name << " " << name;
    }
  }
}

TEST(Relations, EtaPreservesOperators)
{
  auto a3c = with_op(fx::A3c(), PfOp::Domain);
  EXPECT_TRUE(check_eta_preserves_operator(F_object(a3c.algebra), *a3c.algebra->extra("domain"), "domain").ok);
  auto b4 = fx::B4().algebra;
  EXPECT_TRUE(check_eta_preserves_operator(F_object(b4), meet_table(*b4), "meet").ok);
  EXPECT_TRUE(check_eta_preserves_operator(F_object(b4), identity_op(*b4), "id").ok);
  auto pf2 = fx::PF2();
  EXPECT_THROW(check_eta_preserves_operator(F_object(pf2.algebra), concrete_table(*pf2.concrete, PfOp::Override)),
               InputError);
}

TEST(Relations, RoundTripThroughSections)
{
  for (const auto &f : fx::operator_fixtures()) {
    auto u = unit_eta(f.algebra);
    for (const auto &[name, t] : f.algebra->extras()) {
      auto R = relation_from_operator(u.spectrum, t, name);
      auto lifted = operation_from_relation(u.dual, R);
      for_each_tuple(t.arity(), f.algebra->size(), [&](std::span<const std::size_t> args) {
        std::vector<std::size_t> img;
        for (std::size_t a : args)
          img.push_back(u.eta(a));
        EXPECT_EQ(lifted(img), u.eta(t(args))) << f.name << " " << name;
      });
    }
  }
}

TEST(Relations, OmegaCommutesWithUnions)
{
  auto f = fx::operator_fixtures().back();
  auto u = unit_eta(f.algebra);
  const auto &S = *u.spectrum.space;
  auto opens = S.opens();
  for (const auto &[name, t] : f.algebra->extras()) {
    if (t.arity() != 1)
      continue;
    auto R = relation_from_operator(u.spectrum, t, name);
    for (const auto &U : opens)
      for (const auto &V : opens) {
        BitSet UV = U | V;
        BitSet lhs = omega_R(R, S.size(), std::span<const BitSet>(&UV, 1));
        BitSet a = omega_R(R, S.size(), std::span<const BitSet>(&U, 1));
        BitSet b = omega_R(R, S.size(), std::span<const BitSet>(&V, 1));
        EXPECT_EQ(lhs, a | b);
      }
  }
}

TEST(Relations, TightRelationIsUnique)
{
  for (const auto &f : fx::operator_fixtures()) {
    auto u = unit_eta(f.algebra);
    if (u.spectrum.space->size() > 2)
      continue;
    for (const auto &[name, t] : f.algebra->extras()) {
      auto R = relation_from_operator(u.spectrum, t, name);
      auto lifted = operation_from_relation(u.dual, R);
      auto found = tight_relations_inducing(u.dual, lifted, 64);
      ASSERT_EQ(found.size(), 1u) << f.name << " " << name;
      EXPECT_EQ(found[0].tuples, R.tuples);
    }
  }
}

TEST(Relations, BackAndForth)
{
  auto d = with_op(fx::A3c(), PfOp::Domain);
  auto FA = F_object(d.algebra);
  auto R = relation_from_operator(FA, *d.algebra->extra("domain"), "domain");
  EXPECT_TRUE(check_morphism_back_forth(SpaceMorphism::identity(FA.space), R, R).ok());

  // F of an operator-preserving inclusion A3c ↪ B4.
  auto b4 = with_op(fx::B4(), PfOp::Domain);
  auto a3c = with_op(fx::A3c(), PfOp::Domain);
  auto h = fx::inclusion(a3c, b4);
  ASSERT_TRUE(hom_check(h).is_hom());
  auto FB = F_object(b4.algebra);
  auto Fh = F_morphism(h, FB, FA);
  auto RB = relation_from_operator(FB, *b4.algebra->extra("domain"), "domain");
  EXPECT_TRUE(check_morphism_back_forth(Fh, RB, R).ok());

  // λ_S against R and the relation of Ω_R.
  auto c = counit_lambda(FA.space);
  auto lifted = operation_from_relation(c.dual, R);
  auto GA = share(c.dual.algebra->with_extra("domain", lifted));
  auto FG = F_object(GA);
  auto RG = relation_from_operator(FG, lifted, "domain");
  SpaceMorphism lam{FA.space, FG.space, c.lambda.map};
  EXPECT_TRUE(check_morphism_back_forth(lam, R, RG).ok());
}

TEST(Completion, WithOperators)
{
  auto a3c = with_op(fx::A3c(), PfOp::Domain);
  auto oc = complete_with_operators(a3c.algebra, {"domain"});
  EXPECT_EQ(oc.algebra->size(), 4u);
  EXPECT_TRUE(hom_check(oc.iota).is_embedding());
  // On B4 every element is a partial identity, so the lifted domain is the identity.
  EXPECT_EQ(*oc.algebra->extra("domain"), identity_op(*oc.algebra));
  auto plain = complete_with_operators(fx::A3c().algebra, {});
  EXPECT_EQ(plain.algebra->size(), 4u);
  auto a3i = with_op(fx::A3i(), PfOp::Domain);
  auto oi = complete_with_operators(a3i.algebra, {"domain"});
  auto iso = isomorphism_search(a3i.algebra, oi.algebra);
  EXPECT_TRUE(iso.has_value());
  EXPECT_THROW(complete_with_operators(a3i.algebra, {"nope"}), InputError);
  auto pf2 = with_op(fx::PF2(), PfOp::Override);
  EXPECT_THROW(complete_with_operators(pf2.algebra, {"override"}), InputError);
}

TEST(Completion, OperatorFixturesLift)
{
  for (const auto &f : fx::operator_fixtures()) {
    std::vector<std::string> names;
    for (const auto &[n, t] : f.algebra->extras())
      names.push_back(n);
    auto oc = complete_with_operators(f.algebra, names);
    EXPECT_TRUE(hom_check(oc.iota).is_embedding()) << f.name;
  }
}

TEST(ConcreteOps, PositiveAndNegativeClassification)
{
  auto pf2 = *fx::PF2().concrete;
  std::vector<PfOp> positives{PfOp::Compose, PfOp::Domain, PfOp::Range, PfOp::Fixset, PfOp::Identity,
                              PfOp::RangeRestrict, PfOp::Meet};
  for (const auto &r : classify_concrete_ops(pf2, positives)) {
    EXPECT_FALSE(r.extended) << pf_op_name(r.op);
    EXPECT_TRUE(r.cls.is_compat_preserving_operator()) << pf_op_name(r.op);
  }
  auto anti = classify_concrete_ops(pf2, {PfOp::Antidomain, PfOp::Antirange, PfOp::Override});
  for (const auto &r : anti)
    EXPECT_FALSE(r.cls.is_compat_preserving_operator()) << pf_op_name(r.op);
  // Antidomain outputs are partial identities, always compatible.
  EXPECT_TRUE(anti[0].cls.compat_preserving.ok);
  EXPECT_FALSE(anti[0].cls.normal.ok);
  EXPECT_FALSE(anti[0].cls.monotone.ok);
}

TEST(ConcreteOps, Converse)
{
  auto w = fx::converse_witness();
  auto r = classify_concrete_ops(*w.concrete, {PfOp::Converse});
  ASSERT_EQ(r.size(), 1u);
  EXPECT_FALSE(r[0].extended);
  EXPECT_FALSE(r[0].cls.compat_preserving.ok);
  EXPECT_FALSE(r[0].cls.compat_preserving.witness.empty());
  EXPECT_TRUE(r[0].cls.normal.ok);
  EXPECT_TRUE(r[0].cls.additive.ok);
  auto pf2 = classify_concrete_ops(*fx::PF2().concrete, {PfOp::Converse});
  EXPECT_FALSE(pf2[0].defined);
}
