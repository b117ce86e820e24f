#ifndef DRA_SPACE_HPP
#define DRA_SPACE_HPP

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dra/bitset.hpp"
#include "dra/common.hpp"

namespace dra {

/// A finite space X with a projection π onto a base X0 and a basis of opens.
/// X0 carries the quotient topology.
class EtaleSpace
{
public:
  EtaleSpace(std::vector<std::string> points, std::vector<std::string> base_points,
             std::vector<std::size_t> projection, std::vector<BitSet> basis)
    : points_(std::move(points)), base_(std::move(base_points)),
      projection_(std::move(projection)), basis_(std::move(basis))
  {
    auto distinct = [](const std::vector<std::string> &v, const char *what) {
      std::set<std::string> s(v.begin(), v.end());
      if (s.size() != v.size())
        throw InputError(std::string("space: duplicate ") + what + " name");
      for (const auto &n : v)
        if (n.empty())
          throw InputError(std::string("space: empty ") + what + " name");
    };
    distinct(points_, "point");
    distinct(base_, "base point");
    if (projection_.size() != points_.size())
      throw InputError("space: projection must give one base point per point");
    for (std::size_t b : projection_)
      if (b >= base_.size())
        throw InputError("space: projection value out of range");
    for (const auto &B : basis_)
      if (B.size() != points_.size())
        throw InputError("space: basis set has the wrong width");
  }

  std::size_t size() const { return points_.size(); }
  std::size_t base_size() const { return base_.size(); }
  const std::vector<std::string> &points() const { return points_; }
  const std::vector<std::string> &base_points() const { return base_; }
  const std::string &point(std::size_t x) const { return points_[x]; }
  const std::string &base_point(std::size_t b) const { return base_[b]; }
  const std::vector<std::size_t> &projection() const { return projection_; }
  std::size_t pi(std::size_t x) const { return projection_[x]; }
  const std::vector<BitSet> &basis() const { return basis_; }

  std::optional<std::size_t> point_index(const std::string &name) const
  {
    auto it = std::find(points_.begin(), points_.end(), name);
    if (it == points_.end())
      return std::nullopt;
    return static_cast<std::size_t>(it - points_.begin());
  }

  BitSet empty_set() const { return BitSet(size()); }
  BitSet full_set() const { return BitSet::full(size()); }

  BitSet fibre(std::size_t b) const
  {
    BitSet f(size());
    for (std::size_t x = 0; x < size(); ++x)
      if (projection_[x] == b)
        f.set(x);
    return f;
  }

  /// π(S) as a subset of X0.
  BitSet image(const BitSet &S) const
  {
    BitSet out(base_size());
    S.for_each([&](std::size_t x) { out.set(projection_[x]); });
    return out;
  }

  /// π⁻¹(T) for T ⊆ X0.
  BitSet preimage(const BitSet &T) const
  {
    BitSet out(size());
    for (std::size_t x = 0; x < size(); ++x)
      if (T.test(projection_[x]))
        out.set(x);
    return out;
  }

  /// π⁻¹(π(S)).
  BitSet saturate(const BitSet &S) const { return preimage(image(S)); }

  bool injective_on(const BitSet &S) const { return image(S).count() == S.count(); }

  /// Union of the basis sets inside S.
  BitSet interior(const BitSet &S) const
  {
    BitSet out(size());
    for (const auto &B : basis_)
      if (B.is_subset_of(S))
        out |= B;
    return out;
  }

  bool is_open(const BitSet &S) const { return interior(S) == S; }
  bool is_closed(const BitSet &S) const { return is_open(full_set() - S); }

  /// A subset of X0 is open iff its preimage is.
  bool is_base_open(const BitSet &T) const { return is_open(preimage(T)); }

  /// Every subset of a finite space is compact: an open cover has finitely
  /// many members to begin with.
  bool is_compact(const BitSet &S) const { return S.size() == size(); }

  /// Intersection of the basis sets containing x (all of X if there are none).
  BitSet min_neighbourhood(std::size_t x) const
  {
    BitSet n = full_set();
    for (const auto &B : basis_)
      if (B.test(x))
        n &= B;
    return n;
  }

  bool is_discrete() const
  {
    for (std::size_t x = 0; x < size(); ++x)
      if (!is_open(BitSet::single(size(), x)))
        return false;
    return true;
  }

  /// All opens: ∅ and every union of basis sets, ascending.
  std::vector<BitSet> opens(std::size_t cap = 1u << 16) const
  {
    std::set<BitSet> seen{empty_set()};
    std::vector<BitSet> frontier{empty_set()};
    while (!frontier.empty()) {
      std::vector<BitSet> next;
      for (const auto &U : frontier)
        for (const auto &B : basis_) {
          BitSet V = U | B;
          if (seen.insert(V).second) {
            require_cap(seen.size(), cap, "opens");
            next.push_back(V);
          }
        }
      frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
  }

  /// Identity projection onto a copy of the points, with the discrete basis.
  static EtaleSpace discrete(std::vector<std::string> names)
  {
    const std::size_t n = names.size();
    std::vector<std::size_t> proj(n);
    std::vector<BitSet> basis;
    for (std::size_t i = 0; i < n; ++i) {
      proj[i] = i;
      basis.push_back(BitSet::single(n, i));
    }
    auto base = names;
    return EtaleSpace(std::move(names), std::move(base), std::move(proj), std::move(basis));
  }

private:
  std::vector<std::string> points_;
  std::vector<std::string> base_;
  std::vector<std::size_t> projection_;
  std::vector<BitSet> basis_;
};

using SpacePtr = std::shared_ptr<const EtaleSpace>;

inline SpacePtr share(EtaleSpace s) { return std::make_shared<const EtaleSpace>(std::move(s)); }

struct CheckItem
{
  std::string name;
  bool ok = true;
  std::string detail;
};

struct CheckReport
{
  std::vector<CheckItem> items;

  bool ok() const
  { return std::all_of(items.begin(), items.end(), [](const CheckItem &i) { return i.ok; }); }

  const CheckItem *item(const std::string &name) const
  {
    for (const auto &i : items)
      if (i.name == name)
        return &i;
    return nullptr;
  }

  bool passed(const std::string &name) const
  {
    const CheckItem *i = item(name);
    return i && i->ok;
  }

  void add(std::string name, bool ok, std::string detail = {})
  { items.push_back({std::move(name), ok, std::move(detail)}); }

  std::string first_failure() const
  {
    for (const auto &i : items)
      if (!i.ok)
        return i.name + (i.detail.empty() ? "" : ": " + i.detail);
    return {};
  }
};

struct EtaleReport : CheckReport
{
  /// Informational: every singleton is open.
  bool discrete = false;
};

inline EtaleReport validate_etale(const EtaleSpace &S)
{
  EtaleReport r;
  const std::size_t n = S.size();

  {
    BitSet cover(n);
    for (const auto &B : S.basis())
      cover |= B;
    std::string detail;
    if (cover != S.full_set())
      detail = "basis does not cover the points";
    for (std::size_t i = 0; i < S.basis().size() && detail.empty(); ++i)
      for (std::size_t j = i + 1; j < S.basis().size() && detail.empty(); ++j)
        if (!S.is_open(S.basis()[i] & S.basis()[j]))
          detail = "intersection of basis sets " + std::to_string(i) + " and " + std::to_string(j) +
                   " is not a union of basis sets";
    r.add("basis", detail.empty(), detail);
  }
  {
    BitSet hit = S.image(S.full_set());
    std::string detail;
    for (std::size_t b = 0; b < S.base_size() && detail.empty(); ++b)
      if (!hit.test(b))
        detail = "base point " + S.base_point(b) + " has an empty fibre";
    r.add("surjective", detail.empty(), detail);
  }
  {
    std::string detail;
    for (std::size_t i = 0; i < S.basis().size() && detail.empty(); ++i)
      if (!S.is_open(S.saturate(S.basis()[i])))
        detail = "image of basis set " + std::to_string(i) + " is not open";
    r.add("projection_open", detail.empty(), detail);
  }
  {
    std::string detail;
    for (std::size_t x = 0; x < n && detail.empty(); ++x) {
      bool found = false;
      for (const auto &B : S.basis()) {
        if (!B.test(x) || !S.injective_on(B))
          continue;
        bool open_onto_image = true;
        for (const auto &C : S.basis())
          if (!S.is_open(S.saturate(B & C)))
            open_onto_image = false;
        if (open_onto_image) {
          found = true;
          break;
        }
      }
      if (!found)
        detail = "point " + S.point(x) + " has no basic neighbourhood mapped homeomorphically";
    }
    r.add("local_homeomorphism", detail.empty(), detail);
  }
  {
    std::string detail;
    for (std::size_t x = 0; x < n && detail.empty(); ++x)
      for (std::size_t y = x + 1; y < n && detail.empty(); ++y) {
        bool separated = false;
        for (const auto &U : S.basis())
          for (const auto &V : S.basis())
            if (U.test(x) && V.test(y) && !U.intersects(V))
              separated = true;
        if (!separated)
          detail = "points " + S.point(x) + " and " + S.point(y) + " cannot be separated";
      }
    r.add("hausdorff", detail.empty(), detail);
  }
  {
    std::string detail;
    for (std::size_t x = 0; x < n && detail.empty(); ++x) {
      BitSet N = S.min_neighbourhood(x);
      if (!S.is_open(N) || !S.is_closed(N))
        detail = "point " + S.point(x) + " has no clopen neighbourhood base";
    }
    r.add("zero_dimensional", detail.empty(), detail);
  }
  {
    std::string detail;
    for (std::size_t x = 0; x < n && detail.empty(); ++x)
      if (!S.is_compact(S.min_neighbourhood(x)))
        detail = "point " + S.point(x) + " has no compact neighbourhood";
    r.add("locally_compact", detail.empty(), detail);
  }
  r.discrete = S.is_discrete();
  return r;
}

// ---------------------------------------------------------------------------
// Partial maps between spaces

using PointMap = std::vector<std::optional<std::size_t>>;

namespace detail {

inline BitSet preimage_under(const PointMap &map, std::size_t source_size, const BitSet &V)
{
  BitSet out(source_size);
  for (std::size_t x = 0; x < map.size(); ++x)
    if (map[x] && V.test(*map[x]))
      out.set(x);
  return out;
}

} // namespace detail

/// Continuity, properness and the conditions Q.1 to Q.3 for a partial map.
inline CheckReport morphism_report(const EtaleSpace &X, const EtaleSpace &Y, const PointMap &map)
{
  CheckReport r;
  if (map.size() != X.size()) {
    r.add("shape", false, "map has " + std::to_string(map.size()) + " entries for " +
                              std::to_string(X.size()) + " points");
    return r;
  }
  for (const auto &v : map)
    if (v && *v >= Y.size()) {
      r.add("shape", false, "image out of range");
      return r;
    }
  auto pre = [&](const BitSet &V) { return detail::preimage_under(map, X.size(), V); };

  {
    std::string detail;
    if (!X.is_open(pre(Y.full_set())))
      detail = "domain is not open";
    for (std::size_t i = 0; i < Y.basis().size() && detail.empty(); ++i)
      if (!X.is_open(pre(Y.basis()[i])))
        detail = "preimage of basis set " + std::to_string(i) + " is not open";
    r.add("continuous", detail.empty(), detail);
  }
  {
    std::string detail;
    for (std::size_t i = 0; i < Y.basis().size() && detail.empty(); ++i)
      if (Y.is_compact(Y.basis()[i]) && !X.is_compact(pre(Y.basis()[i])))
        detail = "preimage of compact basis set " + std::to_string(i) + " is not compact";
    r.add("proper", detail.empty(), detail);
  }

  std::string q1, q2, q3;
  for (std::size_t x = 0; x < X.size(); ++x)
    for (std::size_t x2 = 0; x2 < X.size(); ++x2) {
      if (!map[x] || !map[x2] || X.pi(x) != X.pi(x2))
        continue;
      if (Y.pi(*map[x]) != Y.pi(*map[x2]) && q1.empty())
        q1 = "points " + X.point(x) + " and " + X.point(x2) + " share a fibre but their images do not";
      if (x != x2 && *map[x] == *map[x2] && q2.empty())
        q2 = "points " + X.point(x) + " and " + X.point(x2) + " in one fibre have the same image";
    }
  if (q1.empty())
    for (std::size_t x = 0; x < X.size() && q3.empty(); ++x) {
      if (!map[x])
        continue;
      const std::size_t x0 = X.pi(x), y0 = Y.pi(*map[x]);
      for (std::size_t y = 0; y < Y.size() && q3.empty(); ++y) {
        if (Y.pi(y) != y0)
          continue;
        bool hit = false;
        for (std::size_t z = 0; z < X.size(); ++z)
          if (X.pi(z) == x0 && map[z] && *map[z] == y)
            hit = true;
        if (!hit)
          q3 = "point " + Y.point(y) + " in the fibre over " + Y.base_point(y0) + " is missed";
      }
    }
  r.add("Q1", q1.empty(), q1);
  r.add("Q2", q2.empty(), q2);
  r.add("Q3", q3.empty() && q1.empty(), q1.empty() ? q3 : "undefined without Q1");
  return r;
}

/// A morphism of Hausdorff étale spaces. `make` refuses maps that fail any
/// check.
struct SpaceMorphism
{
  SpacePtr source;
  SpacePtr target;
  PointMap map;

  static SpaceMorphism make(SpacePtr X, SpacePtr Y, PointMap map)
  {
    auto r = morphism_report(*X, *Y, map);
    if (!r.ok())
      throw InputError("space morphism: " + r.first_failure());
    return SpaceMorphism{std::move(X), std::move(Y), std::move(map)};
  }

  static SpaceMorphism identity(const SpacePtr &X)
  {
    PointMap m(X->size());
    for (std::size_t i = 0; i < m.size(); ++i)
      m[i] = i;
    return SpaceMorphism{X, X, std::move(m)};
  }

  static SpaceMorphism empty(const SpacePtr &X, const SpacePtr &Y)
  { return SpaceMorphism{X, Y, PointMap(X->size())}; }

  std::optional<std::size_t> operator()(std::size_t x) const { return map[x]; }

  BitSet preimage(const BitSet &V) const { return detail::preimage_under(map, source->size(), V); }

  bool total() const
  { return std::all_of(map.begin(), map.end(), [](const auto &v) { return v.has_value(); }); }
};

/// ψ ∘ φ as partial maps.
inline SpaceMorphism compose(const SpaceMorphism &psi, const SpaceMorphism &phi)
{
  PointMap m(phi.map.size());
  for (std::size_t x = 0; x < m.size(); ++x)
    if (phi.map[x])
      m[x] = psi.map[*phi.map[x]];
  return SpaceMorphism{phi.source, psi.target, std::move(m)};
}

/// A total homeomorphism that matches fibres both ways.
inline CheckReport space_iso_report(const SpaceMorphism &phi)
{
  const EtaleSpace &X = *phi.source;
  const EtaleSpace &Y = *phi.target;
  CheckReport r;
  std::set<std::size_t> hit;
  for (const auto &v : phi.map)
    if (v)
      hit.insert(*v);
  const bool bijective = phi.total() && hit.size() == X.size() && X.size() == Y.size();
  r.add("total_bijection", bijective);
  if (!bijective)
    return r;
  auto rep = morphism_report(X, Y, phi.map);
  r.add("continuous", rep.passed("continuous"));
  bool open = true;
  for (const auto &B : X.basis()) {
    BitSet img(Y.size());
    B.for_each([&](std::size_t x) { img.set(*phi.map[x]); });
    open = open && Y.is_open(img);
  }
  r.add("open", open);
  bool fibres = true;
  for (std::size_t x = 0; x < X.size(); ++x)
    for (std::size_t x2 = 0; x2 < X.size(); ++x2)
      fibres = fibres && ((X.pi(x) == X.pi(x2)) == (Y.pi(*phi.map[x]) == Y.pi(*phi.map[x2])));
  r.add("fibres", fibres);
  return r;
}

inline bool is_space_isomorphism(const SpaceMorphism &phi) { return space_iso_report(phi).ok(); }

} // namespace dra

#endif // DRA_SPACE_HPP
