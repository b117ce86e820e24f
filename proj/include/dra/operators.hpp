#ifndef DRA_OPERATORS_HPP
#define DRA_OPERATORS_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dra/algebra.hpp"
#include "dra/bitset.hpp"
#include "dra/common.hpp"
#include "dra/duality.hpp"
#include "dra/pfun.hpp"
#include "dra/space.hpp"

namespace dra {

struct OpCheck
{
  bool ok = true;
  std::string witness;
  explicit operator bool() const { return ok; }
};

namespace detail {

inline void require_operator_caps(const FiniteAlgebra &A, const OpTable &op, const Limits &limits)
{
  require_cap(A.size(), limits.max_operator_elements, "operator check");
  require_cap(op.arity(), limits.max_operator_arity, "operator arity");
  if (op.size() != A.size())
    throw InputError("operator table does not match the algebra");
}

inline std::string call_str(const FiniteAlgebra &A, const std::string &name,
                            std::span<const std::size_t> args)
{
  std::string s = name + "(";
  for (std::size_t i = 0; i < args.size(); ++i)
    s += (i ? "," : "") + A.name(args[i]);
  return s + ")";
}

} // namespace detail

/// Coordinate-wise compatible arguments give compatible results.
inline OpCheck check_compat_preserving(const FiniteAlgebra &A, const OpTable &op,
                                       const std::string &name = "op", const Limits &limits = {})
{
  detail::require_operator_caps(A, op, limits);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < A.size(); ++a)
    for (std::size_t b = 0; b < A.size(); ++b)
      if (compatible(A, a, b))
        pairs.emplace_back(a, b);
  const std::size_t n = op.arity();
  std::vector<std::size_t> x(n), y(n);
  OpCheck r;
  for_each_tuple(n, pairs.size(), [&](std::span<const std::size_t> pick) {
    if (!r.ok)
      return;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = pairs[pick[i]].first;
      y[i] = pairs[pick[i]].second;
    }
    const std::size_t u = op(x), v = op(y);
    if (!compatible(A, u, v)) {
      r.ok = false;
      r.witness = detail::call_str(A, name, x) + " = " + A.name(u) + " and " +
                  detail::call_str(A, name, y) + " = " + A.name(v) +
                  " are not compatible, though the arguments are";
    }
  });
  return r;
}

/// Ω is 0 whenever some argument is 0.
inline OpCheck check_normal(const FiniteAlgebra &A, const OpTable &op, const std::string &name = "op",
                            const Limits &limits = {})
{
  detail::require_operator_caps(A, op, limits);
  const std::size_t z = A.bottom();
  OpCheck r;
  for_each_tuple(op.arity(), A.size(), [&](std::span<const std::size_t> args) {
    if (!r.ok || std::find(args.begin(), args.end(), z) == args.end())
      return;
    if (op(args) != z) {
      r.ok = false;
      r.witness = detail::call_str(A, name, args) + " = " + A.name(op(args)) + ", not 0";
    }
  });
  return r;
}

/// Ω(.., b + c, ..) = Ω(.., b, ..) + Ω(.., c, ..) whenever b + c exists.
inline OpCheck check_additive(const FiniteAlgebra &A, const OpTable &op, const std::string &name = "op",
                              const Limits &limits = {})
{
  detail::require_operator_caps(A, op, limits);
  struct Join
  {
    std::size_t b, c, j;
  };
  std::vector<Join> joins;
  for (std::size_t b = 0; b < A.size(); ++b)
    for (std::size_t c = 0; c < A.size(); ++c)
      if (auto j = join_if_exists(A, {b, c}))
        joins.push_back({b, c, *j});
  OpCheck r;
  const std::size_t n = op.arity();
  std::vector<std::size_t> args(n);
  for (std::size_t i = 0; i < n && r.ok; ++i)
    for_each_tuple(n, A.size(), [&](std::span<const std::size_t> base) {
      if (!r.ok || base[i] != 0)
        return;
      std::copy(base.begin(), base.end(), args.begin());
      for (const auto &J : joins) {
        args[i] = J.j;
        const std::size_t whole = op(args);
        args[i] = J.b;
        const std::size_t left = op(args);
        args[i] = J.c;
        const std::size_t right = op(args);
        auto sum = join_if_exists(A, {left, right});
        if (!sum || *sum != whole) {
          args[i] = J.j;
          r.ok = false;
          r.witness = detail::call_str(A, name, args) + " = " + A.name(whole) + " but the parts " +
                      A.name(J.b) + ", " + A.name(J.c) + " give " + A.name(left) + " and " +
                      A.name(right) + (sum ? " with join " + A.name(*sum) : " with no join");
          return;
        }
      }
    });
  return r;
}

/// Order preservation in each argument.
inline OpCheck check_monotone(const FiniteAlgebra &A, const OpTable &op, const std::string &name = "op",
                              const Limits &limits = {})
{
  detail::require_operator_caps(A, op, limits);
  OpCheck r;
  const std::size_t n = op.arity();
  std::vector<std::size_t> hi(n);
  for (std::size_t i = 0; i < n && r.ok; ++i)
    for_each_tuple(n, A.size(), [&](std::span<const std::size_t> lo) {
      if (!r.ok)
        return;
      std::copy(lo.begin(), lo.end(), hi.begin());
      for (std::size_t b = 0; b < A.size() && r.ok; ++b) {
        if (!leq(A, lo[i], b))
          continue;
        hi[i] = b;
        if (!leq(A, op(lo), op(hi))) {
          r.ok = false;
          r.witness = A.name(lo[i]) + " <= " + A.name(b) + " but " + detail::call_str(A, name, lo) +
                      " = " + A.name(op(lo)) + " is not below " + detail::call_str(A, name, hi) +
                      " = " + A.name(op(hi));
        }
      }
    });
  return r;
}

struct OperatorClassification
{
  OpCheck compat_preserving;
  OpCheck normal;
  OpCheck additive;
  OpCheck monotone;
  bool is_operator() const { return normal.ok && additive.ok; }
  bool is_compat_preserving_operator() const { return compat_preserving.ok && is_operator(); }
};

inline OperatorClassification classify_operator(const FiniteAlgebra &A, const OpTable &op,
                                                const std::string &name = "op",
                                                const Limits &limits = {})
{
  return {check_compat_preserving(A, op, name, limits), check_normal(A, op, name, limits),
          check_additive(A, op, name, limits), check_monotone(A, op, name, limits)};
}

// ---------------------------------------------------------------------------
// Relations

/// An (n+1)-ary relation on the points of a space.
struct SpaceRelation
{
  std::string name;
  std::size_t arity = 1;
  std::set<std::vector<std::size_t>> tuples;

  bool contains(const std::vector<std::size_t> &t) const { return tuples.count(t) > 0; }
};

/// Ω_R(S_1..S_n): the last coordinates of tuples whose first n lie in S_i.
inline BitSet omega_R(const SpaceRelation &R, std::size_t points, std::span<const BitSet> S)
{
  if (S.size() + 1 != R.arity)
    throw InputError("omega_R: expected " + std::to_string(R.arity - 1) + " arguments");
  BitSet out(points);
  for (const auto &t : R.tuples) {
    bool in = true;
    for (std::size_t i = 0; i < S.size() && in; ++i)
      in = S[i].test(t[i]);
    if (in)
      out.set(t.back());
  }
  return out;
}

/// R_Ω: tuples with Ω(a_1..a_n) ∈ μ_{n+1} for all a_i ∈ μ_i.
inline SpaceRelation relation_from_operator(const Spectrum &FA, const OpTable &op,
                                            const std::string &name = "op", const Limits &limits = {})
{
  const FiniteAlgebra &A = *FA.algebra;
  detail::require_operator_caps(A, op, limits);
  const auto &pts = FA.filters.points;
  const std::size_t n = op.arity();
  std::vector<std::vector<std::size_t>> members;
  for (const auto &p : pts)
    members.push_back(p.indices());
  SpaceRelation R{name, n + 1, {}};
  std::vector<std::size_t> args(n);
  for_each_tuple(n + 1, pts.size(), [&](std::span<const std::size_t> mu) {
    bool ok = true;
    std::vector<std::size_t> sizes(n);
    for (std::size_t i = 0; i < n; ++i)
      sizes[i] = members[mu[i]].size();
    // Odometer over a_i ∈ μ_i.
    std::vector<std::size_t> pick(n, 0);
    while (ok) {
      for (std::size_t i = 0; i < n; ++i)
        args[i] = members[mu[i]][pick[i]];
      if (!pts[mu[n]].test(op(args)))
        ok = false;
      std::size_t k = n;
      while (k > 0) {
        if (++pick[k - 1] < sizes[k - 1])
          break;
        pick[k - 1] = 0;
        --k;
      }
      if (k == 0)
        break;
    }
    if (ok)
      R.tuples.insert(std::vector<std::size_t>(mu.begin(), mu.end()));
  });
  return R;
}

namespace detail {

inline bool point_compatible(const EtaleSpace &S, std::size_t x, std::size_t y)
{ return S.pi(x) != S.pi(y) || x == y; }

/// Opens used to quantify over open argument tuples. All opens when the
/// tuple count is modest, otherwise the basis and ∅, which suffices because
/// Ω_R commutes with unions in each argument.
inline std::vector<BitSet> open_generators(const EtaleSpace &S, std::size_t n)
{
  auto all = S.opens();
  double tuples = 1;
  for (std::size_t i = 0; i < n; ++i)
    tuples *= static_cast<double>(all.size());
  if (tuples <= 65536.0)
    return all;
  std::vector<BitSet> gens{S.empty_set()};
  for (const auto &B : S.basis())
    gens.push_back(B);
  return gens;
}

} // namespace detail

/// Ω_R on a tuple of point sets, with the arguments given as indices into
/// `sets`.
inline BitSet omega_R_indexed(const SpaceRelation &R, std::size_t points, const std::vector<BitSet> &sets,
                              std::span<const std::size_t> idx)
{
  std::vector<BitSet> S;
  for (std::size_t i : idx)
    S.push_back(sets[i]);
  return omega_R(R, points, S);
}

/// Tightness decided literally: for every tuple outside R, look for compact
/// opens S_i ∋ x_i with x_{n+1} ∉ Ω_R(S).
inline bool is_tight_by_enumeration(const EtaleSpace &S, const SpaceRelation &R)
{
  const std::size_t n = R.arity - 1;
  std::vector<BitSet> co;
  for (const auto &U : S.opens())
    if (S.is_compact(U))
      co.push_back(U);
  bool tight = true;
  for_each_tuple(n + 1, S.size(), [&](std::span<const std::size_t> x) {
    if (!tight || R.contains(std::vector<std::size_t>(x.begin(), x.end())))
      return;
    bool condition = true;
    for_each_tuple(n, co.size(), [&](std::span<const std::size_t> pick) {
      if (!condition)
        return;
      for (std::size_t i = 0; i < n; ++i)
        if (!co[pick[i]].test(x[i]))
          return;
      if (!omega_R_indexed(R, S.size(), co, pick).test(x[n]))
        condition = false;
    });
    if (condition)
      tight = false;
  });
  return tight;
}

/// Compatibility property, continuity, spectrality and tightness.
inline CheckReport check_relation_properties(const EtaleSpace &S, const SpaceRelation &R)
{
  CheckReport r;
  const std::size_t n = R.arity - 1;
  for (const auto &t : R.tuples)
    if (t.size() != R.arity || std::any_of(t.begin(), t.end(), [&](std::size_t x) { return x >= S.size(); }))
      throw InputError("relation: tuple of the wrong shape for this space");

  {
    std::string w;
    for (const auto &t : R.tuples)
      for (const auto &u : R.tuples) {
        if (!w.empty())
          break;
        bool premise = true;
        for (std::size_t i = 0; i < n && premise; ++i)
          premise = detail::point_compatible(S, t[i], u[i]);
        if (premise && !detail::point_compatible(S, t[n], u[n]))
          w = "tuples ending in " + S.point(t[n]) + " and " + S.point(u[n]) +
              " have compatible arguments but distinct outputs in one fibre";
      }
    r.add("compatibility_property", w.empty(), w);
  }

  auto gens = detail::open_generators(S, n);
  std::string cont, spec;
  for_each_tuple(n, gens.size(), [&](std::span<const std::size_t> pick) {
    if (!cont.empty() && !spec.empty())
      return;
    BitSet out = omega_R_indexed(R, S.size(), gens, pick);
    if (!S.is_open(out) && cont.empty())
      cont = "image of an open tuple is not open";
    bool compact_args = true;
    for (std::size_t i : pick)
      compact_args = compact_args && S.is_compact(gens[i]);
    if (compact_args && !(S.is_open(out) && S.is_compact(out)) && spec.empty())
      spec = "image of a compact open tuple is not compact open";
  });
  r.add("continuous", cont.empty(), cont);
  r.add("spectral", cont.empty() && spec.empty(), cont.empty() ? spec : "not continuous");

  {
    std::vector<BitSet> nb;
    for (std::size_t x = 0; x < S.size(); ++x)
      nb.push_back(S.min_neighbourhood(x));
    std::string w;
    for_each_tuple(n + 1, S.size(), [&](std::span<const std::size_t> x) {
      if (!w.empty() || R.contains(std::vector<std::size_t>(x.begin(), x.end())))
        return;
      if (omega_R_indexed(R, S.size(), nb, x.first(n)).test(x[n])) {
        w = "tuple ending in " + S.point(x[n]) + " is forced by every neighbourhood but not related";
      }
    });
    r.add("tight", w.empty(), w);
  }
  return r;
}

/// Ω_R as an operation on the dual algebra.
inline OpTable operation_from_relation(const DualAlgebra &G, const SpaceRelation &R)
{
  auto props = check_relation_properties(*G.space, R);
  for (const char *need : {"compatibility_property", "spectral"})
    if (!props.passed(need))
      throw InputError("operation_from_relation: relation '" + R.name + "' fails " + need + ": " +
                       props.item(need)->detail);
  const std::size_t n = R.arity - 1;
  return OpTable::tabulate(n, G.sections.size(), [&](std::span<const std::size_t> idx) {
    BitSet out = omega_R_indexed(R, G.space->size(), G.sections, idx);
    auto k = G.index_of(out);
    if (!k)
      throw InputError("operation_from_relation: " + section_name(*G.space, out) + " is not a section");
    return *k;
  });
}

/// hat(Ω(a)) = Ω_{R_Ω}(hat(a_1), .., hat(a_n)) for all tuples.
inline OpCheck check_eta_preserves_operator(const Spectrum &FA, const OpTable &op,
                                            const std::string &name = "op", const Limits &limits = {})
{
  const FiniteAlgebra &A = *FA.algebra;
  auto cls = classify_operator(A, op, name, limits);
  if (!cls.is_compat_preserving_operator())
    throw InputError("check_eta_preserves_operator: '" + name +
                     "' is not a compatibility preserving operator");
  SpaceRelation R = relation_from_operator(FA, op, name, limits);
  OpCheck r;
  for_each_tuple(op.arity(), A.size(), [&](std::span<const std::size_t> args) {
    if (!r.ok)
      return;
    std::vector<BitSet> hats;
    for (std::size_t a : args)
      hats.push_back(FA.hats[a]);
    if (omega_R(R, FA.space->size(), hats) != FA.hats[op(args)]) {
      r.ok = false;
      r.witness = "hat of " + detail::call_str(A, name, args) + " differs from the relational image";
    }
  });
  return r;
}

/// The reverse forth and back conditions for φ: X ⇀ Y.
inline CheckReport check_morphism_back_forth(const SpaceMorphism &phi, const SpaceRelation &RX,
                                             const SpaceRelation &RY)
{
  if (RX.arity != RY.arity)
    throw InputError("check_morphism_back_forth: relation arities differ");
  const std::size_t n = RX.arity - 1;
  CheckReport r;
  std::string fw;
  for (const auto &t : RX.tuples) {
    bool defined = true;
    std::vector<std::size_t> img(n + 1);
    for (std::size_t i = 0; i < n && defined; ++i) {
      defined = phi.map[t[i]].has_value();
      if (defined)
        img[i] = *phi.map[t[i]];
    }
    if (!defined)
      continue;
    if (!phi.map[t[n]]) {
      fw = "last point " + phi.source->point(t[n]) + " of a related tuple is outside the domain";
      break;
    }
    img[n] = *phi.map[t[n]];
    if (!RY.contains(img)) {
      fw = "image of a related tuple ending in " + phi.source->point(t[n]) + " is not related";
      break;
    }
  }
  r.add("reverse_forth", fw.empty(), fw);

  std::string bk;
  for (std::size_t x = 0; x < phi.map.size() && bk.empty(); ++x) {
    if (!phi.map[x])
      continue;
    for (const auto &u : RY.tuples) {
      if (u[n] != *phi.map[x])
        continue;
      bool found = false;
      for (const auto &t : RX.tuples) {
        if (t[n] != x)
          continue;
        bool match = true;
        for (std::size_t i = 0; i < n && match; ++i)
          match = phi.map[t[i]] && *phi.map[t[i]] == u[i];
        if (match) {
          found = true;
          break;
        }
      }
      if (!found) {
        bk = "no related preimage tuple ending in " + phi.source->point(x);
        break;
      }
    }
  }
  r.add("back", bk.empty(), bk);
  return r;
}

// ---------------------------------------------------------------------------
// Completion with operators

struct OperatorCompletion
{
  Completion base;
  AlgebraPtr algebra;
  AlgebraMap iota;
  std::map<std::string, SpaceRelation> relations;
};

/// complete(A) carrying Ω_{R_Ω} for each named extra operation of A.
inline OperatorCompletion complete_with_operators(const AlgebraPtr &A, const std::vector<std::string> &ops,
                                                  const Limits &limits = {})
{
  for (const auto &name : ops) {
    const OpTable *op = A->extra(name);
    if (!op)
      throw InputError("complete_with_operators: algebra has no operation '" + name + "'");
    auto cls = classify_operator(*A, *op, name, limits);
    if (!cls.compat_preserving)
      throw InputError("complete_with_operators: '" + name + "' is not compatibility preserving: " +
                       cls.compat_preserving.witness);
    if (!cls.normal)
      throw InputError("complete_with_operators: '" + name + "' is not normal: " + cls.normal.witness);
    if (!cls.additive)
      throw InputError("complete_with_operators: '" + name + "' is not additive: " +
                       cls.additive.witness);
  }
  OperatorCompletion oc;
  oc.base = complete(A, limits);
  std::map<std::string, OpTable> lifted;
  for (const auto &name : ops) {
    SpaceRelation R = relation_from_operator(oc.base.spectrum, *A->extra(name), name, limits);
    lifted[name] = operation_from_relation(oc.base.dual, R);
    oc.relations[name] = std::move(R);
  }
  oc.algebra = share(oc.base.algebra->with_extras(lifted));
  oc.iota = AlgebraMap(A, oc.algebra, oc.base.iota.table);
  if (!hom_check(oc.iota).is_embedding())
    throw InternalError("complete_with_operators: ι does not preserve the lifted operations");
  const Limits wide = limits.with_element_cap(oc.algebra->size());
  for (const auto &[name, t] : lifted) {
    auto cls = classify_operator(*oc.algebra, t, name, wide);
    if (!cls.is_compat_preserving_operator())
      throw InternalError("complete_with_operators: lifted '" + name +
                          "' is not a compatibility preserving operator");
  }
  return oc;
}

/// All tight (n+1)-ary relations on S whose Ω_R is `op` on the sections.
/// Brute force over every relation; intended for spaces of one or two points.
inline std::vector<SpaceRelation> tight_relations_inducing(const DualAlgebra &G, const OpTable &op,
                                                           std::size_t max_tuples = 12)
{
  const EtaleSpace &S = *G.space;
  const std::size_t n = op.arity();
  std::vector<std::vector<std::size_t>> all;
  for_each_tuple(n + 1, S.size(), [&](std::span<const std::size_t> t) {
    all.emplace_back(t.begin(), t.end());
  });
  require_cap(all.size(), max_tuples, "tight_relations_inducing");
  std::vector<SpaceRelation> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << all.size()); ++mask) {
    SpaceRelation R{"candidate", n + 1, {}};
    for (std::size_t i = 0; i < all.size(); ++i)
      if ((mask >> i) & 1u)
        R.tuples.insert(all[i]);
    bool induces = true;
    for_each_tuple(n, G.sections.size(), [&](std::span<const std::size_t> idx) {
      if (induces && G.index_of(omega_R_indexed(R, S.size(), G.sections, idx)) != op(idx))
        induces = false;
    });
    if (induces && check_relation_properties(S, R).passed("tight"))
      out.push_back(std::move(R));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Concrete operations

struct ConcreteOpReport
{
  PfOp op;
  /// False when the operation is undefined on some element (converse of a
  /// non-injective function).
  bool defined = true;
  /// The algebra had to be closed under the operation first.
  bool extended = false;
  std::size_t algebra_size = 0;
  OperatorClassification cls;
  std::string note;
};

/// Classifies each operation on P, or on its closure under the operation
/// when P is not closed under it.
inline std::vector<ConcreteOpReport> classify_concrete_ops(const ConcretePFAlgebra &P,
                                                           const std::vector<PfOp> &ops,
                                                           const Limits &limits = {})
{
  std::vector<ConcreteOpReport> out;
  for (PfOp op : ops) {
    ConcreteOpReport rep;
    rep.op = op;
    std::optional<ConcretePFAlgebra> Q;
    if (P.closed_under(op)) {
      Q = P;
    } else {
      rep.extended = true;
      try {
        Q = closure_generate(P.carrier(), P.elements(), {PfOp::Difference, PfOp::Restrict, op}, limits);
      } catch (const InputError &e) {
        rep.defined = false;
        rep.note = e.what();
      }
    }
    if (Q) {
      FiniteAlgebra A = from_concrete(*Q);
      rep.algebra_size = A.size();
      rep.cls = classify_operator(A, concrete_table(*Q, op), std::string(pf_op_name(op)), limits);
    }
    out.push_back(std::move(rep));
  }
  return out;
}

} // namespace dra

#endif // DRA_OPERATORS_HPP
