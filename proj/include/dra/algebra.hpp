#ifndef DRA_ALGEBRA_HPP
#define DRA_ALGEBRA_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "dra/bitset.hpp"
#include "dra/common.hpp"
#include "dra/pfun.hpp"

namespace dra {

/// A total n-ary operation on {0..size-1}, stored row-major.
class OpTable
{
public:
  OpTable() = default;
  OpTable(std::size_t arity, std::size_t size, std::vector<std::size_t> entries)
    : arity_(arity), size_(size), entries_(std::move(entries))
  {
    if (entries_.size() != tuple_count())
      throw InputError("operation table: expected " + std::to_string(tuple_count()) +
                       " entries, got " + std::to_string(entries_.size()));
    for (std::size_t e : entries_)
      if (e >= size_)
        throw InputError("operation table: entry " + std::to_string(e) + " out of range");
  }

  /// Builds a table by evaluating `f` on every argument tuple.
  static OpTable tabulate(std::size_t arity, std::size_t size,
                          const std::function<std::size_t(std::span<const std::size_t>)> &f)
  {
    OpTable t;
    t.arity_ = arity;
    t.size_ = size;
    t.entries_.resize(t.tuple_count());
    std::vector<std::size_t> args(arity, 0);
    for (std::size_t k = 0; k < t.entries_.size(); ++k) {
      t.decode(k, args);
      t.entries_[k] = f(args);
    }
    for (std::size_t e : t.entries_)
      if (e >= size)
        throw InputError("operation table: entry out of range");
    return t;
  }

  std::size_t arity() const { return arity_; }
  std::size_t size() const { return size_; }
  const std::vector<std::size_t> &entries() const { return entries_; }

  std::size_t tuple_count() const
  {
    std::size_t n = 1;
    for (std::size_t i = 0; i < arity_; ++i)
      n *= size_;
    return n;
  }

  std::size_t encode(std::span<const std::size_t> args) const
  {
    std::size_t k = 0;
    for (std::size_t a : args)
      k = k * size_ + a;
    return k;
  }

  void decode(std::size_t k, std::vector<std::size_t> &args) const
  {
    args.resize(arity_);
    for (std::size_t i = arity_; i-- > 0;) {
      args[i] = k % size_;
      k /= size_;
    }
  }

  std::size_t operator()(std::span<const std::size_t> args) const { return entries_[encode(args)]; }
  std::size_t operator()(std::size_t a, std::size_t b) const { return entries_[a * size_ + b]; }
  std::size_t operator()(std::size_t a) const { return entries_[a]; }

  friend bool operator==(const OpTable &, const OpTable &) = default;

private:
  std::size_t arity_ = 0;
  std::size_t size_ = 0;
  std::vector<std::size_t> entries_;
};

/// Calls `f(args)` for every tuple in {0..size-1}^arity, lexicographically.
template <class F>
void for_each_tuple(std::size_t arity, std::size_t size, F &&f)
{
  if (size == 0 && arity > 0)
    return;
  std::vector<std::size_t> args(arity, 0);
  while (true) {
    f(std::span<const std::size_t>(args));
    std::size_t k = arity;
    while (k > 0) {
      if (++args[k - 1] < size)
        break;
      args[k - 1] = 0;
      --k;
    }
    if (k == 0)
      return;
  }
}

/// A finite {−,⇂}-algebra given by tables, with optional extra operations.
///
/// Construction checks only shapes. Use validate_axioms for the equational
/// content.
class FiniteAlgebra
{
public:
  FiniteAlgebra(std::vector<std::string> names, OpTable minus, OpTable rest,
                std::map<std::string, OpTable> extras = {})
    : names_(std::move(names)), minus_(std::move(minus)), rest_(std::move(rest)),
      extras_(std::move(extras))
  {
    if (names_.empty())
      throw InputError("algebra: at least one element is required");
    std::set<std::string> seen;
    for (const auto &n : names_) {
      if (n.empty())
        throw InputError("algebra: element names must be nonempty");
      if (!seen.insert(n).second)
        throw InputError("algebra: duplicate element name '" + n + "'");
    }
    auto check = [&](const OpTable &t, const std::string &what, std::optional<std::size_t> arity) {
      if (t.size() != names_.size())
        throw InputError("algebra: table '" + what + "' has size " + std::to_string(t.size()) +
                         ", expected " + std::to_string(names_.size()));
      if (arity && t.arity() != *arity)
        throw InputError("algebra: table '" + what + "' must be binary");
    };
    check(minus_, "minus", 2);
    check(rest_, "rest", 2);
    for (const auto &[name, t] : extras_) {
      if (name == "minus" || name == "rest")
        throw InputError("algebra: extra operation may not be named '" + name + "'");
      check(t, name, std::nullopt);
    }
    const std::size_t n = names_.size();
    meet_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        meet_[a * n + b] = minus_(a, minus_(a, b));
  }

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string> &names() const { return names_; }
  const std::string &name(std::size_t i) const { return names_[i]; }

  std::optional<std::size_t> index_of(const std::string &name) const
  {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end())
      return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
  }

  const OpTable &minus_table() const { return minus_; }
  const OpTable &rest_table() const { return rest_; }
  const std::map<std::string, OpTable> &extras() const { return extras_; }

  const OpTable *extra(const std::string &name) const
  {
    auto it = extras_.find(name);
    return it == extras_.end() ? nullptr : &it->second;
  }

  std::size_t minus(std::size_t a, std::size_t b) const { return minus_(a, b); }
  std::size_t rest(std::size_t a, std::size_t b) const { return rest_(a, b); }
  /// a · b = a − (a − b).
  std::size_t meet(std::size_t a, std::size_t b) const { return meet_[a * size() + b]; }

  /// The common value of a − a, or absent when it is not constant.
  std::optional<std::size_t> find_bottom() const
  {
    const std::size_t z = minus_(0, 0);
    for (std::size_t a = 1; a < size(); ++a)
      if (minus_(a, a) != z)
        return std::nullopt;
    return z;
  }

  std::size_t bottom() const
  {
    auto z = find_bottom();
    if (!z)
      throw InputError("algebra: a - a is not constant, so there is no bottom");
    return *z;
  }

  /// Same carrier and base tables, with a different set of extras.
  FiniteAlgebra with_extras(std::map<std::string, OpTable> extras) const
  { return FiniteAlgebra(names_, minus_, rest_, std::move(extras)); }

  FiniteAlgebra with_extra(const std::string &name, OpTable table) const
  {
    auto ex = extras_;
    ex[name] = std::move(table);
    return with_extras(std::move(ex));
  }

  /// Same tables under new element names.
  FiniteAlgebra renamed(std::vector<std::string> names) const
  { return FiniteAlgebra(std::move(names), minus_, rest_, extras_); }

private:
  std::vector<std::string> names_;
  OpTable minus_;
  OpTable rest_;
  std::map<std::string, OpTable> extras_;
  std::vector<std::size_t> meet_;
};

using AlgebraPtr = std::shared_ptr<const FiniteAlgebra>;

inline AlgebraPtr share(FiniteAlgebra a) { return std::make_shared<const FiniteAlgebra>(std::move(a)); }

// ---------------------------------------------------------------------------
// Axioms

struct AxiomViolation
{
  std::string axiom;
  std::vector<std::size_t> args;
  std::size_t lhs = 0;
  std::size_t rhs = 0;
};

struct AxiomReport
{
  bool bottom_constant = true;
  std::vector<AxiomViolation> violations;
  std::size_t instances_checked = 0;

  bool ok() const { return bottom_constant && violations.empty(); }

  bool fails(const std::string &axiom) const
  {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const AxiomViolation &v) { return v.axiom == axiom; });
  }
};

/// Every failed instance of Ax.1 to Ax.5. A non-constant a − a is reported
/// first and stops the check.
inline AxiomReport validate_axioms(const FiniteAlgebra &A)
{
  AxiomReport r;
  if (!A.find_bottom()) {
    r.bottom_constant = false;
    return r;
  }
  const std::size_t n = A.size();
  auto add = [&](const char *ax, std::vector<std::size_t> args, std::size_t l, std::size_t rr) {
    if (l != rr)
      r.violations.push_back({ax, std::move(args), l, rr});
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      r.instances_checked += 3;
      add("Ax.1", {a, b}, A.minus(a, A.minus(b, a)), a);
      add("Ax.2", {a, b}, A.meet(a, b), A.meet(b, a));
      add("Ax.5", {a, b}, A.rest(A.meet(a, b), a), A.meet(a, b));
      for (std::size_t c = 0; c < n; ++c) {
        r.instances_checked += 2;
        add("Ax.3", {a, b, c}, A.minus(A.minus(a, b), c), A.minus(A.minus(a, c), b));
        add("Ax.4", {a, b, c}, A.meet(A.rest(a, c), A.rest(b, c)), A.rest(A.rest(a, b), c));
      }
    }
  return r;
}

inline bool is_valid_dra(const FiniteAlgebra &A) { return validate_axioms(A).ok(); }

// ---------------------------------------------------------------------------
// Derived structure

inline std::size_t derived_meet(const FiniteAlgebra &A, std::size_t x, std::size_t y)
{ return A.meet(x, y); }

inline std::size_t bottom(const FiniteAlgebra &A) { return A.bottom(); }

inline bool leq(const FiniteAlgebra &A, std::size_t x, std::size_t y) { return A.meet(x, y) == x; }

/// x ⪯ y iff x ≤ y ⇂ x.
inline bool domain_preorder(const FiniteAlgebra &A, std::size_t x, std::size_t y)
{ return leq(A, x, A.rest(y, x)); }

inline bool domain_equiv(const FiniteAlgebra &A, std::size_t x, std::size_t y)
{ return domain_preorder(A, x, y) && domain_preorder(A, y, x); }

/// Classes of ∼, each ascending, ordered by least member.
inline std::vector<std::vector<std::size_t>> domain_equiv_classes(const FiniteAlgebra &A)
{
  std::vector<std::vector<std::size_t>> classes;
  std::vector<bool> placed(A.size(), false);
  for (std::size_t a = 0; a < A.size(); ++a) {
    if (placed[a])
      continue;
    std::vector<std::size_t> cls;
    for (std::size_t b = a; b < A.size(); ++b)
      if (!placed[b] && domain_equiv(A, a, b)) {
        cls.push_back(b);
        placed[b] = true;
      }
    classes.push_back(std::move(cls));
  }
  return classes;
}

inline bool compatible(const FiniteAlgebra &A, std::size_t x, std::size_t y)
{ return A.rest(x, y) == A.rest(y, x); }

inline std::vector<std::size_t> downset(const FiniteAlgebra &A, std::size_t a)
{
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < A.size(); ++x)
    if (leq(A, x, a))
      out.push_back(x);
  return out;
}

inline std::vector<std::size_t> upper_bounds(const FiniteAlgebra &A, std::span<const std::size_t> S)
{
  std::vector<std::size_t> out;
  for (std::size_t u = 0; u < A.size(); ++u)
    if (std::all_of(S.begin(), S.end(), [&](std::size_t s) { return leq(A, s, u); }))
      out.push_back(u);
  return out;
}

/// Least upper bound of S under ≤, if any. The empty set joins to 0.
inline std::optional<std::size_t> join_if_exists(const FiniteAlgebra &A, std::span<const std::size_t> S)
{
  auto ub = upper_bounds(A, S);
  for (std::size_t u : ub)
    if (std::all_of(ub.begin(), ub.end(), [&](std::size_t v) { return leq(A, u, v); }))
      return u;
  return std::nullopt;
}

inline std::optional<std::size_t> join_if_exists(const FiniteAlgebra &A,
                                                 std::initializer_list<std::size_t> S)
{ return join_if_exists(A, std::span<const std::size_t>(S.begin(), S.size())); }

/// Every compatible pair has a join.
inline bool is_fin_compatibly_complete(const FiniteAlgebra &A)
{
  for (std::size_t a = 0; a < A.size(); ++a)
    for (std::size_t b = a + 1; b < A.size(); ++b)
      if (compatible(A, a, b) && !join_if_exists(A, {a, b}))
        return false;
  return true;
}

/// a ⊕ b = a ∨ (b − (a ⇂ b)).
inline std::size_t derived_override(const FiniteAlgebra &A, std::size_t x, std::size_t y)
{
  if (!is_fin_compatibly_complete(A))
    throw InputError("derived_override: algebra is not finitarily compatibly complete");
  const std::size_t rhs = A.minus(y, A.rest(x, y));
  auto j = join_if_exists(A, {x, rhs});
  if (!j)
    throw InternalError("derived_override: join of compatible elements " + A.name(x) + " and " +
                        A.name(rhs) + " is missing");
  return *j;
}

/// ⇂ coincides with the derived meet.
inline bool is_subtraction_algebra(const FiniteAlgebra &A)
{
  for (std::size_t a = 0; a < A.size(); ++a)
    for (std::size_t b = 0; b < A.size(); ++b)
      if (A.rest(a, b) != A.meet(a, b))
        return false;
  return true;
}

/// The algebra with ⇂ replaced by the derived meet.
inline FiniteAlgebra with_rest_as_meet(const FiniteAlgebra &A)
{
  auto meet = OpTable::tabulate(2, A.size(), [&](auto args) { return A.meet(args[0], args[1]); });
  return FiniteAlgebra(A.names(), A.minus_table(), meet, A.extras());
}

// ---------------------------------------------------------------------------
// Maps

/// A total map between the element sets of two algebras.
struct AlgebraMap
{
  AlgebraPtr source;
  AlgebraPtr target;
  std::vector<std::size_t> table;

  AlgebraMap() = default;
  AlgebraMap(AlgebraPtr s, AlgebraPtr t, std::vector<std::size_t> tab)
    : source(std::move(s)), target(std::move(t)), table(std::move(tab))
  {
    if (table.size() != source->size())
      throw InputError("algebra map: table has " + std::to_string(table.size()) +
                       " entries, source has " + std::to_string(source->size()) + " elements");
    for (std::size_t v : table)
      if (v >= target->size())
        throw InputError("algebra map: image " + std::to_string(v) + " out of range");
  }

  std::size_t operator()(std::size_t a) const { return table[a]; }

  static AlgebraMap identity(const AlgebraPtr &A)
  {
    std::vector<std::size_t> t(A->size());
    for (std::size_t i = 0; i < t.size(); ++i)
      t[i] = i;
    return AlgebraMap(A, A, std::move(t));
  }

  /// Every element to the bottom of the target.
  static AlgebraMap constant_bottom(const AlgebraPtr &A, const AlgebraPtr &B)
  { return AlgebraMap(A, B, std::vector<std::size_t>(A->size(), B->bottom())); }

  bool injective() const
  {
    std::set<std::size_t> s(table.begin(), table.end());
    return s.size() == table.size();
  }

  bool surjective() const
  {
    std::set<std::size_t> s(table.begin(), table.end());
    return s.size() == target->size();
  }
};

/// g ∘ f.
inline AlgebraMap compose(const AlgebraMap &g, const AlgebraMap &f)
{
  if (f.target->size() != g.source->size())
    throw InputError("compose: map shapes do not match");
  std::vector<std::size_t> t(f.table.size());
  for (std::size_t i = 0; i < t.size(); ++i)
    t[i] = g.table[f.table[i]];
  return AlgebraMap(f.source, g.target, std::move(t));
}

struct HomReport
{
  std::vector<std::string> violations;
  bool injective = false;
  bool surjective = false;

  bool is_hom() const { return violations.empty(); }
  bool is_embedding() const { return is_hom() && injective; }
  bool is_iso() const { return is_hom() && injective && surjective; }
};

/// Operations checked by hom_check: −, ⇂, and each extra present in both
/// algebras.
inline HomReport hom_check(const AlgebraMap &m)
{
  const FiniteAlgebra &A = *m.source;
  const FiniteAlgebra &B = *m.target;
  HomReport r;
  r.injective = m.injective();
  r.surjective = m.surjective();
  auto check = [&](const std::string &name, const OpTable &ta, const OpTable &tb) {
    if (ta.arity() != tb.arity()) {
      r.violations.push_back(name + ": arity differs between source and target");
      return;
    }
    std::vector<std::size_t> img(ta.arity());
    for_each_tuple(ta.arity(), A.size(), [&](std::span<const std::size_t> args) {
      for (std::size_t i = 0; i < args.size(); ++i)
        img[i] = m(args[i]);
      const std::size_t lhs = m(ta(args));
      const std::size_t rhs = tb(img);
      if (lhs != rhs) {
        std::string s = name + "(";
        for (std::size_t i = 0; i < args.size(); ++i)
          s += (i ? "," : "") + A.name(args[i]);
        s += "): image " + B.name(lhs) + ", expected " + B.name(rhs);
        r.violations.push_back(std::move(s));
      }
    });
  };
  check("minus", A.minus_table(), B.minus_table());
  check("rest", A.rest_table(), B.rest_table());
  for (const auto &[name, t] : A.extras())
    if (const OpTable *tb = B.extra(name))
      check(name, t, *tb);
  return r;
}

/// Every target element lies below the image of some source element.
inline bool is_proper_hom(const AlgebraMap &m)
{
  const FiniteAlgebra &B = *m.target;
  for (std::size_t t = 0; t < B.size(); ++t) {
    bool below = false;
    for (std::size_t a = 0; a < m.source->size() && !below; ++a)
      below = leq(B, t, m(a));
    if (!below)
      return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Map search

struct MapSearchOptions
{
  bool injective = false;
  /// Only meaningful together with `injective`; requires equal sizes.
  bool bijective = false;
  /// Preserve extras present in both algebras.
  bool preserve_extras = true;
  /// Prescribed images; empty means unconstrained.
  std::vector<std::optional<std::size_t>> fixed;
  std::size_t max_results = 1;
};

namespace detail {

struct ElementInvariant
{
  std::size_t downset = 0;
  std::size_t equiv_class = 0;
  std::size_t compat_degree = 0;
  bool is_bottom = false;
  auto operator<=>(const ElementInvariant &) const = default;
};

inline std::vector<ElementInvariant> invariants(const FiniteAlgebra &A)
{
  std::vector<ElementInvariant> inv(A.size());
  const auto z = A.find_bottom();
  for (std::size_t a = 0; a < A.size(); ++a) {
    inv[a].downset = downset(A, a).size();
    inv[a].is_bottom = z && *z == a;
    for (std::size_t b = 0; b < A.size(); ++b) {
      inv[a].equiv_class += domain_equiv(A, a, b) ? 1 : 0;
      inv[a].compat_degree += compatible(A, a, b) ? 1 : 0;
    }
  }
  return inv;
}

class MapSearch
{
public:
  MapSearch(const FiniteAlgebra &A, const FiniteAlgebra &B, const MapSearchOptions &opt)
    : A_(A), B_(B), opt_(opt)
  {
    ops_.push_back({&A.minus_table(), &B.minus_table()});
    ops_.push_back({&A.rest_table(), &B.rest_table()});
    if (opt.preserve_extras)
      for (const auto &[name, t] : A.extras())
        if (const OpTable *tb = B.extra(name)) {
          if (tb->arity() != t.arity())
            impossible_ = true;
          ops_.push_back({&t, tb});
        }
    if (opt.bijective) {
      if (A.size() != B.size())
        impossible_ = true;
      inv_a_ = invariants(A);
      inv_b_ = invariants(B);
    }
  }

  std::vector<std::vector<std::size_t>> run()
  {
    std::vector<std::vector<std::size_t>> results;
    if (impossible_)
      return results;
    State s;
    s.img.assign(A_.size(), unassigned);
    s.used.assign(B_.size(), false);
    if (!opt_.fixed.empty()) {
      if (opt_.fixed.size() != A_.size())
        throw InputError("map search: fixed assignment has wrong length");
      for (std::size_t a = 0; a < A_.size(); ++a)
        if (opt_.fixed[a] && !assign(s, a, *opt_.fixed[a]))
          return results;
    }
    if (!propagate(s))
      return results;
    recurse(s, results);
    return results;
  }

private:
  static constexpr std::size_t unassigned = static_cast<std::size_t>(-1);

  struct State
  {
    std::vector<std::size_t> img;
    std::vector<bool> used;
  };

  bool assign(State &s, std::size_t a, std::size_t b)
  {
    if (s.img[a] != unassigned)
      return s.img[a] == b;
    if (b >= B_.size())
      return false;
    if (opt_.injective && s.used[b])
      return false;
    if (opt_.bijective && !(inv_a_[a] == inv_b_[b]))
      return false;
    s.img[a] = b;
    s.used[b] = true;
    return true;
  }

  bool propagate(State &s)
  {
    bool changed = true;
    std::vector<std::size_t> img;
    while (changed) {
      changed = false;
      for (auto [ta, tb] : ops_) {
        bool ok = true;
        img.resize(ta->arity());
        for_each_tuple(ta->arity(), A_.size(), [&](std::span<const std::size_t> args) {
          if (!ok)
            return;
          for (std::size_t i = 0; i < args.size(); ++i) {
            if (s.img[args[i]] == unassigned)
              return;
            img[i] = s.img[args[i]];
          }
          const std::size_t r = (*ta)(args);
          const std::size_t want = (*tb)(img);
          if (s.img[r] == unassigned) {
            if (!assign(s, r, want))
              ok = false;
            else
              changed = true;
          } else if (s.img[r] != want) {
            ok = false;
          }
        });
        if (!ok)
          return false;
      }
    }
    return true;
  }

  void recurse(const State &s, std::vector<std::vector<std::size_t>> &results)
  {
    if (results.size() >= opt_.max_results)
      return;
    auto it = std::find(s.img.begin(), s.img.end(), unassigned);
    if (it == s.img.end()) {
      results.push_back(s.img);
      return;
    }
    const std::size_t a = static_cast<std::size_t>(it - s.img.begin());
    for (std::size_t b = 0; b < B_.size(); ++b) {
      State next = s;
      if (assign(next, a, b) && propagate(next))
        recurse(next, results);
      if (results.size() >= opt_.max_results)
        return;
    }
  }

  const FiniteAlgebra &A_;
  const FiniteAlgebra &B_;
  const MapSearchOptions &opt_;
  std::vector<std::pair<const OpTable *, const OpTable *>> ops_;
  std::vector<ElementInvariant> inv_a_, inv_b_;
  bool impossible_ = false;
};

} // namespace detail

/// Homomorphisms A → B in canonical search order (lexicographic on the image
/// vector), up to `opt.max_results`.
inline std::vector<AlgebraMap> search_homs(const AlgebraPtr &A, const AlgebraPtr &B,
                                           const MapSearchOptions &opt = {})
{
  detail::MapSearch search(*A, *B, opt);
  std::vector<AlgebraMap> out;
  for (auto &t : search.run())
    out.emplace_back(A, B, std::move(t));
  return out;
}

inline std::optional<AlgebraMap> isomorphism_search(const AlgebraPtr &A, const AlgebraPtr &B,
                                                    const Limits &limits = {})
{
  require_cap(A->size(), limits.max_iso_elements, "isomorphism_search");
  MapSearchOptions opt;
  opt.injective = true;
  opt.bijective = true;
  auto r = search_homs(A, B, opt);
  if (r.empty())
    return std::nullopt;
  return r.front();
}

inline bool isomorphic(const AlgebraPtr &A, const AlgebraPtr &B, const Limits &limits = {})
{ return isomorphism_search(A, B, limits).has_value(); }

// ---------------------------------------------------------------------------
// Concrete algebras as tables

/// The table of `op` on a concrete algebra closed under it.
inline OpTable concrete_table(const ConcretePFAlgebra &P, PfOp op)
{
  const auto &els = P.elements();
  std::vector<PartialFunction> args;
  return OpTable::tabulate(pf_op_arity(op), els.size(), [&](std::span<const std::size_t> idx) {
    args.clear();
    for (std::size_t i : idx)
      args.push_back(els[i]);
    auto r = pf_apply(op, P.carrier(), args);
    std::optional<std::size_t> k = r ? P.index_of(*r) : std::nullopt;
    if (!k)
      throw InputError("from_concrete: algebra is not closed under " + std::string(pf_op_name(op)));
    return *k;
  });
}

/// Tables of a concrete algebra, with the named extra operations. Names
/// default to the graphs, e.g. "{(0,1)}".
inline FiniteAlgebra from_concrete(const ConcretePFAlgebra &P, const std::vector<PfOp> &extras = {},
                                   std::vector<std::string> names = {})
{
  if (names.empty())
    for (const auto &f : P.elements())
      names.push_back(f.str());
  if (names.size() != P.size())
    throw InputError("from_concrete: expected " + std::to_string(P.size()) + " names");
  std::map<std::string, OpTable> ex;
  for (PfOp op : extras)
    if (op != PfOp::Difference && op != PfOp::Restrict)
      ex[std::string(pf_op_name(op))] = concrete_table(P, op);
  return FiniteAlgebra(std::move(names), concrete_table(P, PfOp::Difference),
                       concrete_table(P, PfOp::Restrict), std::move(ex));
}

} // namespace dra

#endif // DRA_ALGEBRA_HPP
