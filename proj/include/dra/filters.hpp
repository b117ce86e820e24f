#ifndef DRA_FILTERS_HPP
#define DRA_FILTERS_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "dra/algebra.hpp"
#include "dra/bitset.hpp"
#include "dra/common.hpp"

namespace dra {

inline BitSet element_set(const FiniteAlgebra &A, std::initializer_list<std::size_t> xs)
{
  BitSet s(A.size());
  for (std::size_t x : xs)
    s.set(x);
  return s;
}

inline BitSet up_closure(const FiniteAlgebra &A, const BitSet &S)
{
  BitSet out(A.size());
  S.for_each([&](std::size_t s) {
    for (std::size_t x = 0; x < A.size(); ++x)
      if (leq(A, s, x))
        out.set(x);
  });
  return out;
}

inline BitSet principal_filter(const FiniteAlgebra &A, std::size_t a)
{ return up_closure(A, BitSet::single(A.size(), a)); }

/// Nonempty, upward closed, closed under the derived meet.
inline bool is_filter(const FiniteAlgebra &A, const BitSet &S)
{
  if (S.size() != A.size() || S.none())
    return false;
  bool ok = true;
  S.for_each([&](std::size_t s) {
    for (std::size_t x = 0; x < A.size() && ok; ++x) {
      if (leq(A, s, x) && !S.test(x))
        ok = false;
      if (S.test(x) && !S.test(A.meet(s, x)))
        ok = false;
    }
  });
  return ok;
}

inline bool is_proper(const FiniteAlgebra &A, const BitSet &S) { return !S.test(A.bottom()); }

/// For all a in F and b in A, exactly one of a · b and a − b lies in F.
inline bool satisfies_maximality_predicate(const FiniteAlgebra &A, const BitSet &F)
{
  bool ok = true;
  F.for_each([&](std::size_t a) {
    for (std::size_t b = 0; b < A.size() && ok; ++b)
      if (F.test(A.meet(a, b)) == F.test(A.minus(a, b)))
        ok = false;
  });
  return ok;
}

/// All filters, found as up-sets of antichains that turn out meet-closed.
inline std::vector<BitSet> all_filters(const FiniteAlgebra &A, const Limits &limits = {})
{
  require_cap(A.size(), limits.max_filter_elements, "maximal_filters");
  const std::size_t n = A.size();
  std::set<BitSet> found;
  std::vector<std::size_t> chosen;
  auto comparable = [&](std::size_t x, std::size_t y) { return leq(A, x, y) || leq(A, y, x); };
  auto rec = [&](auto &&self, std::size_t next) -> void {
    if (!chosen.empty()) {
      BitSet gen(n);
      for (std::size_t c : chosen)
        gen.set(c);
      BitSet up = up_closure(A, gen);
      if (is_filter(A, up))
        found.insert(up);
    }
    for (std::size_t x = next; x < n; ++x) {
      if (std::any_of(chosen.begin(), chosen.end(), [&](std::size_t c) { return comparable(c, x); }))
        continue;
      chosen.push_back(x);
      self(self, x + 1);
      chosen.pop_back();
    }
  };
  rec(rec, 0);
  return {found.begin(), found.end()};
}

/// Raw scan of all 2^n subsets; the slow independent route.
inline std::vector<BitSet> filters_by_subset_scan(const FiniteAlgebra &A, const Limits &limits = {})
{
  require_cap(A.size(), limits.max_subset_scan, "filters_by_subset_scan");
  std::vector<BitSet> out;
  const std::uint64_t count = std::uint64_t{1} << A.size();
  for (std::uint64_t mask = 1; mask < count; ++mask) {
    BitSet s = BitSet::from_mask(A.size(), mask);
    if (is_filter(A, s))
      out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Proper filters of `filters` not strictly contained in another proper one.
inline std::vector<BitSet> inclusion_maximal_proper(const FiniteAlgebra &A,
                                                    const std::vector<BitSet> &filters)
{
  std::vector<BitSet> proper;
  for (const auto &f : filters)
    if (is_proper(A, f))
      proper.push_back(f);
  std::vector<BitSet> out;
  for (const auto &f : proper) {
    bool maximal = std::none_of(proper.begin(), proper.end(), [&](const BitSet &g) {
      return g != f && f.is_subset_of(g);
    });
    if (maximal)
      out.push_back(f);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<BitSet> predicate_maximal(const FiniteAlgebra &A, const std::vector<BitSet> &filters)
{
  std::vector<BitSet> out;
  for (const auto &f : filters)
    if (is_proper(A, f) && satisfies_maximality_predicate(A, f))
      out.push_back(f);
  std::sort(out.begin(), out.end());
  return out;
}

/// μ ≈ ν iff a ⇂ b ∈ ν for all a ∈ μ, b ∈ ν.
inline bool filter_equiv(const FiniteAlgebra &A, const BitSet &mu, const BitSet &nu)
{
  bool ok = true;
  mu.for_each([&](std::size_t a) {
    nu.for_each([&](std::size_t b) {
      if (ok && !nu.test(A.rest(a, b)))
        ok = false;
    });
  });
  return ok;
}

/// G ⇂ F: the up-closure of {g ⇂ f | g ∈ G, f ∈ F}.
inline BitSet filter_rest(const FiniteAlgebra &A, const BitSet &G, const BitSet &F)
{
  BitSet s(A.size());
  G.for_each([&](std::size_t g) { F.for_each([&](std::size_t f) { s.set(A.rest(g, f)); }); });
  return up_closure(A, s);
}

/// F ⪯⪯ G iff G ⇂ F ⊆ F.
inline bool filter_domain_rel(const FiniteAlgebra &A, const BitSet &F, const BitSet &G)
{ return filter_rest(A, G, F).is_subset_of(F); }

/// Maximal filters of an algebra in ascending bit-set order, with their ≈
/// classes.
struct MaxFilterSpace
{
  AlgebraPtr algebra;
  std::vector<BitSet> points;
  std::vector<std::size_t> class_of;
  std::vector<std::vector<std::size_t>> classes;

  std::size_t size() const { return points.size(); }

  /// The least element of a point; maximal filters of a finite algebra are
  /// principal.
  std::size_t generator(std::size_t p) const
  {
    const auto &A = *algebra;
    for (std::size_t x : points[p].indices()) {
      bool least = true;
      points[p].for_each([&](std::size_t y) { least = least && leq(A, x, y); });
      if (least)
        return x;
    }
    throw InternalError("maximal filter without a least element");
  }

  std::string point_name(std::size_t p) const { return "up(" + algebra->name(generator(p)) + ")"; }

  std::string class_name(std::size_t c) const { return "[" + point_name(classes[c].front()) + "]"; }

  std::optional<std::size_t> index_of(const BitSet &f) const
  {
    auto it = std::lower_bound(points.begin(), points.end(), f);
    if (it == points.end() || *it != f)
      return std::nullopt;
    return static_cast<std::size_t>(it - points.begin());
  }

  /// hat(a): the points containing a.
  BitSet hat(std::size_t a) const
  {
    BitSet h(points.size());
    for (std::size_t p = 0; p < points.size(); ++p)
      if (points[p].test(a))
        h.set(p);
    return h;
  }
};

/// Maximal filters by inclusion among enumerated filters and, separately, by
/// the maximality predicate. Disagreement is an internal error.
inline MaxFilterSpace maximal_filters(const AlgebraPtr &A, const Limits &limits = {})
{
  const FiniteAlgebra &alg = *A;
  auto filters = all_filters(alg, limits);
  auto by_inclusion = inclusion_maximal_proper(alg, filters);
  auto by_predicate = predicate_maximal(alg, filters);
  if (by_inclusion != by_predicate)
    throw InternalError("maximal_filters: inclusion-maximal and predicate routes disagree");

  MaxFilterSpace M;
  M.algebra = A;
  M.points = std::move(by_inclusion);
  M.class_of.assign(M.points.size(), 0);
  std::vector<bool> placed(M.points.size(), false);
  for (std::size_t p = 0; p < M.points.size(); ++p) {
    if (placed[p])
      continue;
    std::vector<std::size_t> cls;
    for (std::size_t q = p; q < M.points.size(); ++q)
      if (!placed[q] && filter_equiv(alg, M.points[p], M.points[q])) {
        if (!filter_equiv(alg, M.points[q], M.points[p]))
          throw InternalError("maximal_filters: filter equivalence is not symmetric");
        placed[q] = true;
        M.class_of[q] = M.classes.size();
        cls.push_back(q);
      }
    M.classes.push_back(std::move(cls));
  }
  return M;
}

inline BitSet hat(const MaxFilterSpace &M, std::size_t a) { return M.hat(a); }

/// The equivalence induced by ⪯⪯ on arbitrary filters.
inline bool filter_domain_equiv(const FiniteAlgebra &A, const BitSet &F, const BitSet &G)
{ return filter_domain_rel(A, F, G) && filter_domain_rel(A, G, F); }

/// Whenever a maximal filter is equivalent under ⪯⪯ to some filter, that
/// filter is maximal too.
inline bool equivalence_is_saturated(const FiniteAlgebra &A, const std::vector<BitSet> &filters,
                                     const std::vector<BitSet> &maximal)
{
  for (const auto &m : maximal)
    for (const auto &f : filters)
      if (filter_domain_equiv(A, m, f) && !std::binary_search(maximal.begin(), maximal.end(), f))
        return false;
  return true;
}

/// On maximal filters, the equivalence induced by ⪯⪯ is the pointwise ≈.
inline bool domain_equiv_matches_on_points(const FiniteAlgebra &A, const std::vector<BitSet> &maximal)
{
  for (const auto &m : maximal)
    for (const auto &n : maximal)
      if (filter_domain_equiv(A, m, n) != filter_equiv(A, m, n))
        return false;
  return true;
}

} // namespace dra

#endif // DRA_FILTERS_HPP
