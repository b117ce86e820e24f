#ifndef DRA_DUALITY_HPP
#define DRA_DUALITY_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dra/algebra.hpp"
#include "dra/bitset.hpp"
#include "dra/common.hpp"
#include "dra/filters.hpp"
#include "dra/space.hpp"

namespace dra {

/// F(A): maximal filters as points, ≈ classes as base points, hats as basis.
struct Spectrum
{
  AlgebraPtr algebra;
  MaxFilterSpace filters;
  SpacePtr space;
  std::vector<BitSet> hats;
};

inline Spectrum F_object(const AlgebraPtr &A, const Limits &limits = {})
{
  Spectrum sp;
  sp.algebra = A;
  sp.filters = maximal_filters(A, limits);
  const auto &M = sp.filters;
  std::vector<std::string> points, base;
  for (std::size_t p = 0; p < M.size(); ++p)
    points.push_back(M.point_name(p));
  for (std::size_t c = 0; c < M.classes.size(); ++c)
    base.push_back(M.class_name(c));
  std::vector<BitSet> basis;
  for (std::size_t a = 0; a < A->size(); ++a) {
    sp.hats.push_back(M.hat(a));
    if (std::find(basis.begin(), basis.end(), sp.hats.back()) == basis.end())
      basis.push_back(sp.hats.back());
  }
  sp.space = share(EtaleSpace(std::move(points), std::move(base), M.class_of, std::move(basis)));
  auto rep = validate_etale(*sp.space);
  if (!rep.ok())
    throw InternalError("F_object: dual space fails " + rep.first_failure());
  return sp;
}

/// "{p,q}" using point names.
inline std::string section_name(const EtaleSpace &S, const BitSet &U)
{
  std::string s = "{";
  bool first = true;
  U.for_each([&](std::size_t x) {
    if (!first)
      s += ",";
    first = false;
    s += S.point(x);
  });
  return s + "}";
}

/// Opens on which π is injective, ascending. No validation of the space.
inline std::vector<BitSet> enumerate_sections(const EtaleSpace &S)
{
  std::vector<std::vector<std::size_t>> fibres(S.base_size());
  for (std::size_t x = 0; x < S.size(); ++x)
    fibres[S.pi(x)].push_back(x);
  std::vector<BitSet> out;
  std::vector<std::size_t> choice(S.base_size(), 0);
  while (true) {
    BitSet U(S.size());
    for (std::size_t b = 0; b < S.base_size(); ++b)
      if (choice[b] > 0)
        U.set(fibres[b][choice[b] - 1]);
    if (S.is_open(U) && S.is_compact(U))
      out.push_back(U);
    std::size_t k = S.base_size();
    while (k > 0) {
      if (++choice[k - 1] <= fibres[k - 1].size())
        break;
      choice[k - 1] = 0;
      --k;
    }
    if (k == 0)
      break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// G(S): compact open injective sections with U − V and π⁻¹(π(U)) ∩ V.
struct DualAlgebra
{
  SpacePtr space;
  std::vector<BitSet> sections;
  AlgebraPtr algebra;

  std::optional<std::size_t> index_of(const BitSet &U) const
  {
    auto it = std::lower_bound(sections.begin(), sections.end(), U);
    if (it == sections.end() || *it != U)
      return std::nullopt;
    return static_cast<std::size_t>(it - sections.begin());
  }

  std::size_t require_index(const BitSet &U, const char *what) const
  {
    auto i = index_of(U);
    if (!i)
      throw InternalError(std::string(what) + ": " + section_name(*space, U) + " is not a section");
    return *i;
  }

  /// Sections containing x.
  BitSet lambda_zero(std::size_t x) const
  {
    BitSet out(sections.size());
    for (std::size_t i = 0; i < sections.size(); ++i)
      if (sections[i].test(x))
        out.set(i);
    return out;
  }
};

/// Builds the dual algebra on a given section list without validating the
/// space. Closure under the two operations is still required.
inline DualAlgebra dual_from_sections(const SpacePtr &S, std::vector<BitSet> sections)
{
  std::sort(sections.begin(), sections.end());
  DualAlgebra D;
  D.space = S;
  D.sections = std::move(sections);
  const std::size_t n = D.sections.size();
  std::vector<std::string> names;
  for (const auto &U : D.sections)
    names.push_back(section_name(*S, U));
  auto lookup = [&](const BitSet &U) {
    auto i = D.index_of(U);
    if (!i)
      throw InputError("dual algebra: sections are not closed under the dual operations");
    return *i;
  };
  auto minus = OpTable::tabulate(2, n, [&](auto a) {
    return lookup(D.sections[a[0]] - D.sections[a[1]]);
  });
  auto rest = OpTable::tabulate(2, n, [&](auto a) {
    return lookup(S->saturate(D.sections[a[0]]) & D.sections[a[1]]);
  });
  D.algebra = share(FiniteAlgebra(std::move(names), std::move(minus), std::move(rest)));
  return D;
}

inline DualAlgebra G_object(const SpacePtr &S)
{
  auto rep = validate_etale(*S);
  if (!rep.ok())
    throw InputError("G_object: space is not a Hausdorff étale space: " + rep.first_failure());
  return dual_from_sections(S, enumerate_sections(*S));
}

/// a ↦ hat(a) into a dual of the spectrum's space.
inline AlgebraMap unit_eta(const Spectrum &FA, const DualAlgebra &GFA)
{
  std::vector<std::size_t> t;
  for (const auto &h : FA.hats)
    t.push_back(GFA.require_index(h, "unit_eta"));
  AlgebraMap eta(FA.algebra, GFA.algebra, std::move(t));
  if (!hom_check(eta).is_embedding())
    throw InternalError("unit_eta: not an embedding");
  return eta;
}

struct Unit
{
  Spectrum spectrum;
  DualAlgebra dual;
  AlgebraMap eta;
};

inline Unit unit_eta(const AlgebraPtr &A, const Limits &limits = {})
{
  Unit u;
  u.spectrum = F_object(A, limits);
  u.dual = G_object(u.spectrum.space);
  u.eta = unit_eta(u.spectrum, u.dual);
  return u;
}

struct Counit
{
  DualAlgebra dual;
  Spectrum spectrum;
  SpaceMorphism lambda;
};

/// λ(x): the sections containing x, a point of F(G(S)); undefined when no
/// section contains x.
inline Counit counit_lambda(const SpacePtr &S, const Limits &limits = {})
{
  Counit c;
  c.dual = G_object(S);
  c.spectrum = F_object(c.dual.algebra, limits);
  PointMap m(S->size());
  for (std::size_t x = 0; x < S->size(); ++x) {
    BitSet l0 = c.dual.lambda_zero(x);
    if (l0.none())
      continue;
    auto p = c.spectrum.filters.index_of(l0);
    if (!p)
      throw InternalError("counit_lambda: sections through " + S->point(x) +
                          " do not form a maximal filter");
    m[x] = *p;
  }
  auto rep = morphism_report(*S, *c.spectrum.space, m);
  if (!rep.ok())
    throw InternalError("counit_lambda: " + rep.first_failure());
  c.lambda = SpaceMorphism{S, c.spectrum.space, std::move(m)};
  return c;
}

/// Fh: F(B) ⇀ F(A), ξ ↦ h⁻¹(ξ) on the union of the hats of h(a).
inline SpaceMorphism F_morphism(const AlgebraMap &h, const Spectrum &FB, const Spectrum &FA)
{
  if (!hom_check(h).is_hom())
    throw InputError("F_morphism: map is not a homomorphism");
  const FiniteAlgebra &A = *h.source;
  PointMap m(FB.filters.size());
  for (std::size_t p = 0; p < FB.filters.size(); ++p) {
    const BitSet &xi = FB.filters.points[p];
    BitSet pre(A.size());
    for (std::size_t a = 0; a < A.size(); ++a)
      if (xi.test(h(a)))
        pre.set(a);
    if (pre.none())
      continue;
    auto q = FA.filters.index_of(pre);
    if (!q)
      throw InternalError("F_morphism: preimage of " + FB.filters.point_name(p) + " is not maximal");
    m[p] = *q;
  }
  SpaceMorphism Fh{FB.space, FA.space, std::move(m)};
  for (std::size_t a = 0; a < A.size(); ++a)
    if (Fh.preimage(FA.hats[a]) != FB.hats[h(a)])
      throw InternalError("F_morphism: preimage of hat(" + A.name(a) + ") is not hat of its image");
  auto rep = morphism_report(*FB.space, *FA.space, Fh.map);
  if (!rep.ok())
    throw InternalError("F_morphism: " + rep.first_failure());
  return Fh;
}

inline SpaceMorphism F_morphism(const AlgebraMap &h, const Limits &limits = {})
{ return F_morphism(h, F_object(h.target, limits), F_object(h.source, limits)); }

/// Gφ: G(Y) → G(X), U ↦ φ⁻¹(U).
inline AlgebraMap G_morphism(const SpaceMorphism &phi, const DualAlgebra &GY, const DualAlgebra &GX)
{
  auto rep = morphism_report(*phi.source, *phi.target, phi.map);
  if (!rep.ok())
    throw InputError("G_morphism: " + rep.first_failure());
  std::vector<std::size_t> t;
  for (const auto &U : GY.sections)
    t.push_back(GX.require_index(phi.preimage(U), "G_morphism"));
  AlgebraMap g(GY.algebra, GX.algebra, std::move(t));
  if (!hom_check(g).is_hom())
    throw InternalError("G_morphism: preimage map is not a homomorphism");
  return g;
}

inline AlgebraMap G_morphism(const SpaceMorphism &phi)
{ return G_morphism(phi, G_object(phi.target), G_object(phi.source)); }

// ---------------------------------------------------------------------------
// Adjunction checks

inline bool is_identity(const SpaceMorphism &phi)
{
  for (std::size_t x = 0; x < phi.map.size(); ++x)
    if (!phi.map[x] || *phi.map[x] != x)
      return false;
  return true;
}

inline bool is_identity(const AlgebraMap &m)
{
  for (std::size_t a = 0; a < m.table.size(); ++a)
    if (m.table[a] != a)
      return false;
  return true;
}

struct TriangleReport
{
  bool left = false;  // Fη ∘ λ_F = Id
  bool right = false; // Gλ ∘ η_G = Id
  bool ok() const { return left && right; }
};

namespace detail {

/// Fη_A ∘ λ_{F(A)} on the points of F(A).
inline bool left_triangle(const Spectrum &FA, const Limits &limits)
{
  Counit lam = counit_lambda(FA.space, limits);
  AlgebraMap eta = unit_eta(FA, lam.dual);
  SpaceMorphism Feta = F_morphism(eta, lam.spectrum, FA);
  return is_identity(compose(Feta, lam.lambda));
}

/// Gλ_S ∘ η_{G(S)} on the elements of G(S).
inline bool right_triangle(const SpacePtr &S, const Limits &limits)
{
  Counit lam = counit_lambda(S, limits);
  DualAlgebra GFGS = G_object(lam.spectrum.space);
  AlgebraMap eta = unit_eta(lam.spectrum, GFGS);
  AlgebraMap Glam = G_morphism(lam.lambda, GFGS, lam.dual);
  return is_identity(compose(Glam, eta));
}

} // namespace detail

/// Left identity at A, right identity at F(A).
inline TriangleReport check_triangle_identities(const AlgebraPtr &A, const Limits &limits = {})
{
  Spectrum FA = F_object(A, limits);
  return {detail::left_triangle(FA, limits), detail::right_triangle(FA.space, limits)};
}

/// Right identity at S, left identity at G(S).
inline TriangleReport check_triangle_identities(const SpacePtr &S, const Limits &limits = {})
{
  DualAlgebra GS = G_object(S);
  return {detail::left_triangle(F_object(GS.algebra, limits), limits),
          detail::right_triangle(S, limits)};
}

/// GF(h) ∘ η_A = η_B ∘ h, pointwise.
inline bool check_naturality(const AlgebraMap &h, const Limits &limits = {})
{
  Unit uA = unit_eta(h.source, limits);
  Unit uB = unit_eta(h.target, limits);
  SpaceMorphism Fh = F_morphism(h, uB.spectrum, uA.spectrum);
  AlgebraMap GFh = G_morphism(Fh, uA.dual, uB.dual);
  return compose(GFh, uA.eta).table == compose(uB.eta, h).table;
}

/// FG(φ) ∘ λ_X = λ_Y ∘ φ, pointwise with definedness.
inline bool check_naturality(const SpaceMorphism &phi, const Limits &limits = {})
{
  Counit lX = counit_lambda(phi.source, limits);
  Counit lY = counit_lambda(phi.target, limits);
  AlgebraMap Gphi = G_morphism(phi, lY.dual, lX.dual);
  SpaceMorphism FGphi = F_morphism(Gphi, lX.spectrum, lY.spectrum);
  return compose(FGphi, lX.lambda).map == compose(lY.lambda, phi).map;
}

// ---------------------------------------------------------------------------
// Completion

/// Each element of the target is the join of the images below it.
inline bool is_finite_join_dense(const AlgebraMap &iota)
{
  const FiniteAlgebra &C = *iota.target;
  for (std::size_t c = 0; c < C.size(); ++c) {
    std::vector<std::size_t> below;
    for (std::size_t a = 0; a < iota.source->size(); ++a)
      if (leq(C, iota(a), c))
        below.push_back(iota(a));
    auto j = join_if_exists(C, below);
    if (!j || *j != c)
      return false;
  }
  return true;
}

inline bool is_completion(const AlgebraMap &iota)
{
  return hom_check(iota).is_embedding() && is_fin_compatibly_complete(*iota.target) &&
         is_finite_join_dense(iota);
}

struct Completion
{
  Spectrum spectrum;
  DualAlgebra dual;
  AlgebraPtr algebra;
  AlgebraMap iota;
};

/// C = G(F(A)) with ι = η_A.
inline Completion complete(const AlgebraPtr &A, const Limits &limits = {})
{
  Unit u = unit_eta(A, limits);
  Completion c{u.spectrum, u.dual, u.dual.algebra, u.eta};
  if (!is_fin_compatibly_complete(*c.algebra))
    throw InternalError("complete: result is not finitarily compatibly complete");
  if (!is_finite_join_dense(c.iota))
    throw InternalError("complete: image is not finite-join dense");
  return c;
}

struct CompletionIso
{
  AlgebraMap theta;
  /// Isomorphisms C → C′ with θ ∘ ι = ι′, counted up to two.
  std::size_t commuting_isos = 0;
};

inline bool same_algebra(const FiniteAlgebra &A, const FiniteAlgebra &B)
{
  return A.names() == B.names() && A.minus_table() == B.minus_table() &&
         A.rest_table() == B.rest_table() && A.extras() == B.extras();
}

/// θ(c) = Σ ι′(a) over the a with ι(a) ≤ c.
inline CompletionIso unique_completion_iso(const AlgebraMap &iota, const AlgebraMap &iota2)
{
  if (!same_algebra(*iota.source, *iota2.source))
    throw InputError("unique_completion_iso: embeddings have different sources");
  if (!is_completion(iota))
    throw InputError("unique_completion_iso: first map is not a completion");
  if (!is_completion(iota2))
    throw InputError("unique_completion_iso: second map is not a completion");
  const FiniteAlgebra &C = *iota.target;
  const FiniteAlgebra &C2 = *iota2.target;
  std::vector<std::size_t> t(C.size());
  for (std::size_t c = 0; c < C.size(); ++c) {
    std::vector<std::size_t> parts;
    for (std::size_t a = 0; a < iota.source->size(); ++a)
      if (leq(C, iota(a), c))
        parts.push_back(iota2(a));
    auto j = join_if_exists(C2, parts);
    if (!j)
      throw InternalError("unique_completion_iso: join missing in the second completion");
    t[c] = *j;
  }
  CompletionIso r{AlgebraMap(iota.target, iota2.target, std::move(t)), 0};
  if (!hom_check(r.theta).is_iso() || compose(r.theta, iota).table != iota2.table)
    throw InternalError("unique_completion_iso: θ is not an isomorphism commuting with the embeddings");
  MapSearchOptions opt;
  opt.injective = opt.bijective = true;
  opt.preserve_extras = false;
  opt.fixed.assign(C.size(), std::nullopt);
  for (std::size_t a = 0; a < iota.source->size(); ++a)
    opt.fixed[iota(a)] = iota2(a);
  opt.max_results = 2;
  r.commuting_isos = search_homs(iota.target, iota2.target, opt).size();
  return r;
}

struct ExtensionCheck
{
  std::string name;
  bool target_complete = false;
  bool dense = false;
  bool smallest_applies = false;
  bool smallest_factor = false; // embedding C → B with κ̂ ∘ ι = κ
  bool largest_applies = false;
  bool largest_factor = false; // embedding B → C with κ̂ ∘ κ = ι
};

struct CharacterizationReport
{
  bool a = false;
  bool b = false;
  bool c = false;
  std::vector<ExtensionCheck> tests;
  bool consistent() const { return a == b && b == c; }
};

namespace detail {

inline bool factor_exists(const AlgebraMap &from, const AlgebraMap &to)
{
  MapSearchOptions opt;
  opt.injective = true;
  opt.preserve_extras = false;
  opt.fixed.assign(from.target->size(), std::nullopt);
  for (std::size_t a = 0; a < from.source->size(); ++a) {
    auto &slot = opt.fixed[from(a)];
    if (slot && *slot != to(a))
      return false;
    slot = to(a);
  }
  return !search_homs(from.target, to.target, opt).empty();
}

} // namespace detail

/// The three characterizations of a completion, decided against a finite
/// family of test extensions κ: A ↪ B.
inline CharacterizationReport
completion_characterizations(const AlgebraMap &iota,
                             const std::vector<std::pair<std::string, AlgebraMap>> &extensions)
{
  if (!hom_check(iota).is_embedding())
    throw InputError("completion_characterizations: ι is not an embedding");
  CharacterizationReport r;
  const bool complete_target = is_fin_compatibly_complete(*iota.target);
  const bool dense = is_finite_join_dense(iota);
  r.a = complete_target && dense;
  r.b = complete_target;
  r.c = dense;
  for (const auto &[name, kappa] : extensions) {
    if (!same_algebra(*kappa.source, *iota.source))
      throw InputError("completion_characterizations: extension '" + name + "' has another source");
    if (!hom_check(kappa).is_embedding())
      throw InputError("completion_characterizations: extension '" + name + "' is not an embedding");
    ExtensionCheck e;
    e.name = name;
    e.target_complete = is_fin_compatibly_complete(*kappa.target);
    e.dense = is_finite_join_dense(kappa);
    e.smallest_applies = e.target_complete;
    e.smallest_factor = detail::factor_exists(iota, kappa);
    e.largest_applies = e.dense;
    e.largest_factor = detail::factor_exists(kappa, iota);
    if (e.smallest_applies && !e.smallest_factor)
      r.b = false;
    if (e.largest_applies && !e.largest_factor)
      r.c = false;
    r.tests.push_back(std::move(e));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Subtraction algebras

struct StoneReport
{
  bool applicable = false;
  bool equiv_is_equality = true;
  bool bijective_projection = true;
  bool dual_is_subtraction = true;
  bool dual_is_all_compact_opens = true;
  bool gba_laws = true;
  bool ok() const
  {
    return equiv_is_equality && bijective_projection && dual_is_subtraction &&
           dual_is_all_compact_opens && gba_laws;
  }
};

/// a · (b − a) = 0 and a ∨ (b − a) = a ∨ b at every pair.
inline bool satisfies_gba_laws(const FiniteAlgebra &C)
{
  const std::size_t z = C.bottom();
  for (std::size_t a = 0; a < C.size(); ++a)
    for (std::size_t b = 0; b < C.size(); ++b) {
      if (C.meet(a, C.minus(b, a)) != z)
        return false;
      auto l = join_if_exists(C, {a, C.minus(b, a)});
      auto r = join_if_exists(C, {a, b});
      if (!l || !r || *l != *r)
        return false;
    }
  return true;
}

inline StoneReport stone_restriction_checks(const SpacePtr &S)
{
  StoneReport r;
  r.applicable = S->size() == S->base_size() && S->injective_on(S->full_set());
  if (!r.applicable)
    return r;
  DualAlgebra G = G_object(S);
  r.dual_is_subtraction = is_subtraction_algebra(*G.algebra);
  std::vector<BitSet> compact_opens;
  for (const auto &U : S->opens())
    if (S->is_compact(U))
      compact_opens.push_back(U);
  r.dual_is_all_compact_opens = compact_opens == G.sections;
  return r;
}

inline StoneReport stone_restriction_checks(const AlgebraPtr &A, const Limits &limits = {})
{
  StoneReport r;
  r.applicable = is_subtraction_algebra(*A);
  if (!r.applicable)
    return r;
  Completion c = complete(A, limits);
  const auto &M = c.spectrum.filters;
  for (std::size_t p = 0; p < M.size(); ++p)
    for (std::size_t q = 0; q < M.size(); ++q)
      if (filter_equiv(*A, M.points[p], M.points[q]) != (p == q))
        r.equiv_is_equality = false;
  auto sr = stone_restriction_checks(c.spectrum.space);
  r.bijective_projection = sr.applicable;
  if (sr.applicable) {
    r.dual_is_subtraction = sr.dual_is_subtraction;
    r.dual_is_all_compact_opens = sr.dual_is_all_compact_opens;
  }
  r.gba_laws = satisfies_gba_laws(*c.algebra);
  return r;
}

} // namespace dra

#endif // DRA_DUALITY_HPP
