#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dra/dra.hpp"

using namespace dra;
namespace fx = dra::fixtures;

namespace {

struct Outcome
{
  bool ok = true;
  std::ostringstream note;

  void require(bool cond, const std::string &what)
  {
    if (!cond && ok) {
      ok = false;
      note << "failed: " << what << "; ";
    }
  }
};

struct Criterion
{
  int id;
  std::string title;
  double budget_s;
  std::function<void(Outcome &)> run;
};

/// Every {−,⇂}-closure of at most two seeds on |X| ≤ 3, one per element set.
std::vector<FiniteAlgebra> small_closures(std::size_t &generated)
{
  std::vector<FiniteAlgebra> out;
  generated = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    auto c = Carrier::make(n);
    auto all = enumerate_all_pfs(c);
    std::set<std::vector<PartialFunction>> seen;
    auto add = [&](std::vector<PartialFunction> seeds) {
      auto P = closure_generate(c, seeds, {PfOp::Difference, PfOp::Restrict});
      ++generated;
      if (seen.insert(P.elements()).second)
        out.push_back(from_concrete(P));
    };
    add({});
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = i; j < all.size(); ++j)
        add({all[i], all[j]});
  }
  return out;
}

BitSet saturate(const EtaleSpace &S, const BitSet &U)
{
  BitSet base(S.base_size()), out(S.size());
  U.for_each([&](std::size_t x) { base.set(S.projection()[x]); });
  for (std::size_t x = 0; x < S.size(); ++x)
    if (base.test(S.projection()[x]))
      out.set(x);
  return out;
}

OpTable meet_table(const FiniteAlgebra &A)
{
  return OpTable::tabulate(2, A.size(), [&](auto a) { return A.meet(a[0], a[1]); });
}

/// A section as the partial function π(x) ↦ x on the points.
PartialFunction section_pf(const CarrierPtr &c, const EtaleSpace &S, const BitSet &U)
{
  std::vector<std::pair<std::size_t, std::size_t>> g;
  U.for_each([&](std::size_t x) { g.emplace_back(S.projection()[x], x); });
  return PartialFunction::from_pairs(c, g);
}

/// Least upper bound found by scanning the order directly.
std::optional<std::size_t> least_upper_bound(const FiniteAlgebra &A, std::size_t x, std::size_t y)
{
  std::vector<std::size_t> ub;
  for (std::size_t z = 0; z < A.size(); ++z)
    if (leq(A, x, z) && leq(A, y, z))
      ub.push_back(z);
  for (std::size_t z : ub) {
    bool least = true;
    for (std::size_t w : ub)
      least = least && leq(A, z, w);
    if (least)
      return z;
  }
  return std::nullopt;
}

void criterion1(Outcome &o)
{
  std::size_t generated = 0;
  auto algebras = small_closures(generated);
  std::size_t bad = 0;
  for (const auto &A : algebras)
    bad += !validate_axioms(A).ok();
  o.require(bad == 0, std::to_string(bad) + " closures violate an axiom");
  o.note << generated << " closures, " << algebras.size() << " distinct algebras checked";
}

void criterion2(Outcome &o)
{
  std::size_t n = 0;
  for (const auto &f : fx::abstract_fixtures()) {
    const auto &A = *f.algebra;
    if (A.size() > 8)
      continue;
    ++n;
    auto u = unit_eta(f.algebra);
    o.require(hom_check(u.eta).is_embedding(), f.name + ": eta is not an injective homomorphism");
    const auto &S = *u.spectrum.space;
    const auto &M = u.spectrum.filters;
    for (std::size_t a = 0; a < A.size(); ++a)
      for (std::size_t b = 0; b < A.size(); ++b) {
        o.require(M.hat(A.minus(a, b)) == M.hat(a) - M.hat(b), f.name + ": hat(a-b)");
        o.require(M.hat(A.rest(a, b)) == (M.hat(b) & saturate(S, M.hat(a))), f.name + ": hat(a|b)");
        o.require(M.hat(A.meet(a, b)) == (M.hat(a) & M.hat(b)), f.name + ": hat(a.b)");
      }
  }
  o.note << n << " fixtures";
}

void criterion3(Outcome &o)
{
  auto b4 = fx::B4().algebra;
  auto c3c = complete(fx::A3c().algebra);
  o.require(c3c.algebra->size() == 4 && isomorphic(c3c.algebra, b4), "complete(A3c) is not B4");
  auto a3i = fx::A3i().algebra;
  o.require(isomorphic(complete(a3i).algebra, a3i), "complete(A3i) is not A3i");
  for (const auto &f : fx::abstract_fixtures()) {
    auto c = complete(f.algebra);
    o.require(is_completion(c.iota), f.name + ": iota is not a completion");
    o.require(isomorphic(complete(c.algebra).algebra, c.algebra), f.name + ": completion is not idempotent");
  }
  o.note << "|complete(A3c)| = " << c3c.algebra->size();
}

void criterion4(Outcome &o)
{
  for (const auto &f : fx::abstract_fixtures()) {
    o.require(check_triangle_identities(f.algebra).ok(), f.name + ": triangle identities on the algebra");
    o.require(check_triangle_identities(F_object(f.algebra).space).ok(), f.name + ": triangle identities on F(A)");
  }
  auto homs = fx::fixture_homs();
  for (const auto &h : homs) {
    o.require(check_naturality(h.map), h.name + ": eta naturality");
    o.require(check_naturality(F_morphism(h.map)), h.name + ": lambda naturality");
  }
  o.note << homs.size() << " homomorphisms";
}

void criterion5(Outcome &o)
{
  for (const auto &f : fx::abstract_fixtures()) {
    bool iso = hom_check(unit_eta(f.algebra).eta).is_iso();
    o.require(iso == is_fin_compatibly_complete(*f.algebra), f.name + ": eta iso disagrees with completeness");
    auto lam = counit_lambda(F_object(f.algebra).space);
    o.require(is_space_isomorphism(lam.lambda), f.name + ": lambda is not an isomorphism");
    o.note << f.name << (iso ? "=" : "<") << " ";
  }
}

void criterion6(Outcome &o)
{
  std::size_t generated = 0, checked = 0;
  for (const auto &A : small_closures(generated)) {
    if (A.size() > 8)
      continue;
    ++checked;
    auto filters = filters_by_subset_scan(A);
    o.require(inclusion_maximal_proper(A, filters) == predicate_maximal(A, filters),
              "maximal filters disagree on an algebra of size " + std::to_string(A.size()));
  }
  o.note << checked << " algebras";
}

void criterion7(Outcome &o)
{
  std::vector<fx::Fixture> cases = fx::operator_fixtures();
  for (fx::Fixture f : fx::abstract_fixtures()) {
    f.algebra = share(f.algebra->with_extra("meet", meet_table(*f.algebra)));
    f.name += "+meet";
    cases.push_back(std::move(f));
  }
  std::size_t ops = 0;
  for (const auto &f : cases) {
    const auto &A = *f.algebra;
    auto FA = F_object(f.algebra);
    std::vector<std::string> names;
    for (const auto &[name, t] : A.extras()) {
      ++ops;
      names.push_back(name);
      const std::string where = f.name + " " + name;
      o.require(check_compat_preserving(A, t, name).ok, where + ": compatibility preservation");
      o.require(check_normal(A, t, name).ok, where + ": normal");
      o.require(check_additive(A, t, name).ok, where + ": additive");
      auto props = check_relation_properties(*FA.space, relation_from_operator(FA, t, name));
      for (const char *p : {"compatibility_property", "spectral", "tight"})
        o.require(props.passed(p), where + ": relation " + p);
      o.require(check_eta_preserves_operator(FA, t, name).ok, where + ": hat equality");
    }
    auto oc = complete_with_operators(f.algebra, names);
    o.require(hom_check(oc.iota).is_embedding(), f.name + ": iota does not preserve the operators");
  }
  o.note << ops << " operations on " << cases.size() << " algebras";
}

void criterion8(Outcome &o)
{
  auto pf2 = *fx::PF2().concrete;
  for (const auto &r : classify_concrete_ops(pf2, {PfOp::Compose, PfOp::Domain, PfOp::Range, PfOp::Fixset,
                                                   PfOp::Identity})) {
    o.require(r.defined && !r.extended && r.cls.is_compat_preserving_operator(),
              std::string(pf_op_name(r.op)) + " on PF2");
  }
  auto anti = classify_concrete_ops(pf2, {PfOp::Antidomain}).at(0);
  o.require(!anti.cls.is_compat_preserving_operator(), "antidomain classified as an operator");
  const OpCheck &aw = !anti.cls.compat_preserving.ok ? anti.cls.compat_preserving
                      : !anti.cls.monotone.ok        ? anti.cls.monotone
                                                     : anti.cls.normal;
  o.note << "antidomain: compatibility preservation " << (anti.cls.compat_preserving.ok ? "holds" : "fails")
         << ", witness {" << aw.witness << "}; ";
  auto conv = classify_concrete_ops(*fx::converse_witness().concrete, {PfOp::Converse}).at(0);
  o.require(conv.defined && !conv.extended, "converse witness is not closed under converse");
  o.require(!conv.cls.compat_preserving.ok, "converse preserves compatibility");
  o.require(conv.cls.normal.ok && conv.cls.additive.ok, "converse is not normal and additive");
  o.note << "converse witness {" << conv.cls.compat_preserving.witness << "}";
}

void criterion9(Outcome &o)
{
  std::size_t n = 0;
  for (const auto &f : fx::abstract_fixtures()) {
    const auto &A = *f.algebra;
    if (!is_subtraction_algebra(A))
      continue;
    o.note << f.name << " ";
    ++n;
    auto M = maximal_filters(f.algebra);
    for (const auto &mu : M.points)
      for (const auto &nu : M.points)
        o.require(filter_equiv(A, mu, nu) == (mu == nu), f.name + ": equivalence is not equality");
    o.require(satisfies_gba_laws(*complete(f.algebra).algebra), f.name + ": completion is not a GBA");
  }
  o.require(n > 0, "no subtraction-algebra fixtures");
}

void criterion10(Outcome &o)
{
  std::size_t pairs = 0;
  for (const auto &f : fx::abstract_fixtures()) {
    auto C = complete(f.algebra).algebra;
    const auto &A = *C;
    auto u = unit_eta(C);
    const auto &S = *u.spectrum.space;
    auto carrier = Carrier::make(std::max<std::size_t>(S.size(), 1));
    const auto &sections = u.dual.sections;
    for (std::size_t x = 0; x < A.size(); ++x)
      for (std::size_t y = 0; y < A.size(); ++y) {
        ++pairs;
        std::size_t ov = derived_override(A, x, y);
        auto concrete = pf_override(section_pf(carrier, S, sections[u.eta(x)]),
                                    section_pf(carrier, S, sections[u.eta(y)]));
        o.require(section_pf(carrier, S, sections[u.eta(ov)]) == concrete,
                  f.name + ": override differs from the concrete override");
        auto formula = least_upper_bound(A, x, A.minus(y, A.rest(x, y)));
        o.require(formula && *formula == ov, f.name + ": override differs from a v (b - a|b)");
      }
  }
  o.note << pairs << " pairs";
}

} // namespace

int main()
{
  const std::vector<Criterion> criteria{
      {1, "axiom soundness of small closures", 10, criterion1},
      {2, "representation by maximal filters", 1, criterion2},
      {3, "compatible completion", 1, criterion3},
      {4, "adjunction laws", 1, criterion4},
      {5, "duality fixed points", 1, criterion5},
      {6, "maximal filter predicate", 30, criterion6},
      {7, "operator layer", 5, criterion7},
      {8, "classification of concrete operations", 5, criterion8},
      {9, "subtraction algebras", 1, criterion9},
      {10, "override coherence", 1, criterion10},
  };
  int failures = 0;
  for (const auto &c : criteria) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception &e) {
      o.ok = false;
      o.note << "exception: " << e.what();
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = s < c.budget_s;
    bool pass = o.ok && in_time;
    failures += !pass;
    std::printf("%s criterion %d (%s): %.3fs / %.0fs%s; %s\n", pass ? "PASS" : "FAIL", c.id, c.title.c_str(), s,
                c.budget_s, in_time ? "" : " over budget", o.note.str().c_str());
  }
  return failures == 0 ? 0 : 1;
}
