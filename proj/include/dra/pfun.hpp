#ifndef DRA_PFUN_HPP
#define DRA_PFUN_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dra/bitset.hpp"
#include "dra/common.hpp"

namespace dra {

/// The base set X of an algebra of partial functions. Points are 0-based
/// indices; labels are cosmetic.
struct Carrier
{
  std::size_t size = 1;
  std::vector<std::string> labels;

  static std::shared_ptr<const Carrier> make(std::size_t size,
                                             std::vector<std::string> labels = {})
  {
    if (size == 0)
      throw InputError("carrier size must be at least 1");
    if (!labels.empty()) {
      if (labels.size() != size)
        throw InputError("carrier labels: expected " + std::to_string(size) +
                         " labels, got " + std::to_string(labels.size()));
      std::set<std::string> seen(labels.begin(), labels.end());
      if (seen.size() != labels.size())
        throw InputError("carrier labels must be pairwise distinct");
    }
    return std::make_shared<const Carrier>(Carrier{size, std::move(labels)});
  }

  std::string label(std::size_t i) const
  { return labels.empty() ? std::to_string(i) : labels[i]; }

  friend bool operator==(const Carrier &, const Carrier &) = default;
};

using CarrierPtr = std::shared_ptr<const Carrier>;

/// A partial self-map on a finite carrier, stored as an image vector with
/// `undefined` for points outside the domain.
class PartialFunction
{
public:
  static constexpr int undefined = -1;

  explicit PartialFunction(CarrierPtr carrier)
    : carrier_(std::move(carrier)), image_(carrier_->size, undefined)
  {}

  PartialFunction(CarrierPtr carrier, std::vector<int> image)
    : carrier_(std::move(carrier)), image_(std::move(image))
  {
    if (image_.size() != carrier_->size)
      throw InputError("partial function: image vector has wrong length");
    for (int v : image_)
      if (v < undefined || v >= static_cast<int>(carrier_->size))
        throw InputError("partial function: value out of carrier range");
  }

  /// Builds from graph pairs; rejects pairs that break functionality.
  static PartialFunction from_pairs(CarrierPtr carrier,
                                    const std::vector<std::pair<std::size_t, std::size_t>> &pairs)
  {
    PartialFunction f(std::move(carrier));
    for (auto [x, y] : pairs) {
      if (x >= f.size() || y >= f.size())
        throw InputError("partial function: pair (" + std::to_string(x) + "," +
                         std::to_string(y) + ") out of carrier range");
      int &slot = f.image_[x];
      if (slot != undefined && slot != static_cast<int>(y))
        throw InputError("partial function: two values at point " + std::to_string(x));
      slot = static_cast<int>(y);
    }
    return f;
  }

  static PartialFunction identity(CarrierPtr carrier)
  {
    PartialFunction f(std::move(carrier));
    for (std::size_t x = 0; x < f.size(); ++x)
      f.image_[x] = static_cast<int>(x);
    return f;
  }

  const Carrier &carrier() const { return *carrier_; }
  const CarrierPtr &carrier_ptr() const { return carrier_; }
  std::size_t size() const { return image_.size(); }
  const std::vector<int> &image() const { return image_; }

  bool defined(std::size_t x) const { return image_[x] != undefined; }
  std::optional<std::size_t> at(std::size_t x) const
  {
    if (image_[x] == undefined)
      return std::nullopt;
    return static_cast<std::size_t>(image_[x]);
  }

  bool empty() const
  { return std::all_of(image_.begin(), image_.end(), [](int v) { return v == undefined; }); }

  std::size_t cardinality() const
  { return static_cast<std::size_t>(std::count_if(image_.begin(), image_.end(), [](int v) { return v != undefined; })); }

  std::vector<std::pair<std::size_t, std::size_t>> graph() const
  {
    std::vector<std::pair<std::size_t, std::size_t>> g;
    for (std::size_t x = 0; x < size(); ++x)
      if (defined(x))
        g.emplace_back(x, static_cast<std::size_t>(image_[x]));
    return g;
  }

  BitSet domain_set() const
  {
    BitSet d(size());
    for (std::size_t x = 0; x < size(); ++x)
      if (defined(x))
        d.set(x);
    return d;
  }

  BitSet range_set() const
  {
    BitSet r(size());
    for (int v : image_)
      if (v != undefined)
        r.set(static_cast<std::size_t>(v));
    return r;
  }

  bool injective() const
  {
    std::vector<bool> hit(size(), false);
    for (int v : image_) {
      if (v == undefined)
        continue;
      if (hit[static_cast<std::size_t>(v)])
        return false;
      hit[static_cast<std::size_t>(v)] = true;
    }
    return true;
  }

  bool is_subset_of(const PartialFunction &g) const
  {
    for (std::size_t x = 0; x < size(); ++x)
      if (defined(x) && image_[x] != g.image_[x])
        return false;
    return true;
  }

  /// "{(0,1),(1,1)}", using carrier labels when present.
  std::string str() const
  {
    std::string s = "{";
    bool first = true;
    for (auto [x, y] : graph()) {
      if (!first)
        s += ",";
      first = false;
      s += "(" + carrier_->label(x) + "," + carrier_->label(y) + ")";
    }
    return s + "}";
  }

  /// Canonical order: lexicographic on (value + 1) per point, 0 = undefined.
  friend std::strong_ordering operator<=>(const PartialFunction &a, const PartialFunction &b)
  {
    if (a.size() != b.size())
      return a.size() <=> b.size();
    return a.image_ <=> b.image_;
  }
  friend bool operator==(const PartialFunction &a, const PartialFunction &b)
  { return a.image_ == b.image_ && *a.carrier_ == *b.carrier_; }

private:
  CarrierPtr carrier_;
  std::vector<int> image_;
};

namespace detail {

inline void require_same_carrier(const PartialFunction &f, const PartialFunction &g,
                                 const char *op)
{
  if (f.carrier_ptr() != g.carrier_ptr() && !(f.carrier() == g.carrier()))
    throw InputError(std::string(op) + ": carrier mismatch");
}

inline PartialFunction with_image(const PartialFunction &like, std::vector<int> image)
{
  return PartialFunction(like.carrier_ptr(), std::move(image));
}

} // namespace detail

/// Pairs of f absent from g.
inline PartialFunction pf_difference(const PartialFunction &f, const PartialFunction &g)
{
  detail::require_same_carrier(f, g, "pf_difference");
  std::vector<int> out(f.size(), PartialFunction::undefined);
  for (std::size_t x = 0; x < f.size(); ++x)
    if (f.image()[x] != g.image()[x])
      out[x] = f.image()[x];
  return detail::with_image(f, std::move(out));
}

/// g restricted to dom(f).
inline PartialFunction pf_restrict(const PartialFunction &f, const PartialFunction &g)
{
  detail::require_same_carrier(f, g, "pf_restrict");
  std::vector<int> out(f.size(), PartialFunction::undefined);
  for (std::size_t x = 0; x < f.size(); ++x)
    if (f.defined(x))
      out[x] = g.image()[x];
  return detail::with_image(f, std::move(out));
}

/// Graph intersection, f - (f - g).
inline PartialFunction pf_meet(const PartialFunction &f, const PartialFunction &g)
{
  detail::require_same_carrier(f, g, "pf_meet");
  std::vector<int> out(f.size(), PartialFunction::undefined);
  for (std::size_t x = 0; x < f.size(); ++x)
    if (f.image()[x] == g.image()[x])
      out[x] = f.image()[x];
  return detail::with_image(f, std::move(out));
}

/// Preferential union: f, then g off dom(f).
inline PartialFunction pf_override(const PartialFunction &f, const PartialFunction &g)
{
  detail::require_same_carrier(f, g, "pf_override");
  std::vector<int> out = f.image();
  for (std::size_t x = 0; x < f.size(); ++x)
    if (!f.defined(x))
      out[x] = g.image()[x];
  return detail::with_image(f, std::move(out));
}

/// f after g: {(x,z) | g(x) = y, f(y) = z}.
inline PartialFunction pf_compose(const PartialFunction &f, const PartialFunction &g)
{
  detail::require_same_carrier(f, g, "pf_compose");
  std::vector<int> out(f.size(), PartialFunction::undefined);
  for (std::size_t x = 0; x < f.size(); ++x)
    if (auto y = g.at(x))
      out[x] = f.image()[*y];
  return detail::with_image(f, std::move(out));
}

inline PartialFunction pf_identity_on(const PartialFunction &like, const BitSet &points)
{
  std::vector<int> out(like.size(), PartialFunction::undefined);
  points.for_each([&](std::size_t x) { out[x] = static_cast<int>(x); });
  return detail::with_image(like, std::move(out));
}

inline PartialFunction pf_domain(const PartialFunction &f)
{ return pf_identity_on(f, f.domain_set()); }

inline PartialFunction pf_range(const PartialFunction &f)
{ return pf_identity_on(f, f.range_set()); }

inline PartialFunction pf_fixset(const PartialFunction &f)
{
  BitSet fixed(f.size());
  for (std::size_t x = 0; x < f.size(); ++x)
    if (f.image()[x] == static_cast<int>(x))
      fixed.set(x);
  return pf_identity_on(f, fixed);
}

inline PartialFunction pf_antidomain(const PartialFunction &f)
{ return pf_identity_on(f, BitSet::full(f.size()) - f.domain_set()); }

inline PartialFunction pf_antirange(const PartialFunction &f)
{ return pf_identity_on(f, BitSet::full(f.size()) - f.range_set()); }

/// Range restriction: the pairs (x,y) of g with y in dom(f).
inline PartialFunction pf_range_restrict(const PartialFunction &f, const PartialFunction &g)
{
  detail::require_same_carrier(f, g, "pf_range_restrict");
  std::vector<int> out(f.size(), PartialFunction::undefined);
  for (std::size_t x = 0; x < f.size(); ++x)
    if (auto y = g.at(x); y && f.defined(*y))
      out[x] = static_cast<int>(*y);
  return detail::with_image(f, std::move(out));
}

/// Converse; absent when f is not injective.
inline std::optional<PartialFunction> pf_converse(const PartialFunction &f)
{
  if (!f.injective())
    return std::nullopt;
  std::vector<int> out(f.size(), PartialFunction::undefined);
  for (auto [x, y] : f.graph())
    out[y] = static_cast<int>(x);
  return detail::with_image(f, std::move(out));
}

/// Agreement on dom(f) ∩ dom(g).
inline bool pf_agree_on_shared_domain(const PartialFunction &f, const PartialFunction &g)
{
  detail::require_same_carrier(f, g, "pf_agree_on_shared_domain");
  for (std::size_t x = 0; x < f.size(); ++x)
    if (f.defined(x) && g.defined(x) && f.image()[x] != g.image()[x])
      return false;
  return true;
}

/// f ∪ g when the union is functional.
inline std::optional<PartialFunction> pf_union_if_compatible(const PartialFunction &f,
                                                             const PartialFunction &g)
{
  if (!pf_agree_on_shared_domain(f, g))
    return std::nullopt;
  return pf_override(f, g);
}

/// Named concrete operations. Update is deliberately absent: it has no
/// fixed definition here.
enum class PfOp
{
  Difference,
  Restrict,
  Meet,
  Override,
  Compose,
  Domain,
  Range,
  Fixset,
  RangeRestrict,
  Identity,
  Antidomain,
  Antirange,
  Converse,
};

inline constexpr PfOp all_pf_ops[] = {
  PfOp::Difference, PfOp::Restrict,      PfOp::Meet,     PfOp::Override,   PfOp::Compose,
  PfOp::Domain,     PfOp::Range,         PfOp::Fixset,   PfOp::RangeRestrict,
  PfOp::Identity,   PfOp::Antidomain,    PfOp::Antirange, PfOp::Converse,
};

inline std::string_view pf_op_name(PfOp op)
{
  switch (op) {
  case PfOp::Difference: return "difference";
  case PfOp::Restrict: return "restrict";
  case PfOp::Meet: return "meet";
  case PfOp::Override: return "override";
  case PfOp::Compose: return "compose";
  case PfOp::Domain: return "domain";
  case PfOp::Range: return "range";
  case PfOp::Fixset: return "fixset";
  case PfOp::RangeRestrict: return "range_restrict";
  case PfOp::Identity: return "identity";
  case PfOp::Antidomain: return "antidomain";
  case PfOp::Antirange: return "antirange";
  case PfOp::Converse: return "converse";
  }
  return "?";
}

inline std::optional<PfOp> pf_op_from_name(std::string_view name)
{
  for (PfOp op : all_pf_ops)
    if (pf_op_name(op) == name)
      return op;
  return std::nullopt;
}

inline std::size_t pf_op_arity(PfOp op)
{
  switch (op) {
  case PfOp::Identity: return 0;
  case PfOp::Domain:
  case PfOp::Range:
  case PfOp::Fixset:
  case PfOp::Antidomain:
  case PfOp::Antirange:
  case PfOp::Converse: return 1;
  default: return 2;
  }
}

/// Applies `op`; `args.size()` must equal its arity. Absent only for converse
/// of a non-injective function.
inline std::optional<PartialFunction> pf_apply(PfOp op, const CarrierPtr &carrier,
                                               std::span<const PartialFunction> args)
{
  if (args.size() != pf_op_arity(op))
    throw InputError("pf_apply: wrong number of arguments for " + std::string(pf_op_name(op)));
  switch (op) {
  case PfOp::Difference: return pf_difference(args[0], args[1]);
  case PfOp::Restrict: return pf_restrict(args[0], args[1]);
  case PfOp::Meet: return pf_meet(args[0], args[1]);
  case PfOp::Override: return pf_override(args[0], args[1]);
  case PfOp::Compose: return pf_compose(args[0], args[1]);
  case PfOp::Domain: return pf_domain(args[0]);
  case PfOp::Range: return pf_range(args[0]);
  case PfOp::Fixset: return pf_fixset(args[0]);
  case PfOp::RangeRestrict: return pf_range_restrict(args[0], args[1]);
  case PfOp::Identity: return PartialFunction::identity(carrier);
  case PfOp::Antidomain: return pf_antidomain(args[0]);
  case PfOp::Antirange: return pf_antirange(args[0]);
  case PfOp::Converse: return pf_converse(args[0]);
  }
  return std::nullopt;
}

/// A finite algebra of partial functions closed under − and ⇂, kept in
/// canonical order.
class ConcretePFAlgebra
{
public:
  ConcretePFAlgebra(CarrierPtr carrier, std::vector<PartialFunction> elements)
    : carrier_(std::move(carrier)), elements_(std::move(elements))
  {
    for (const auto &f : elements_)
      if (!(f.carrier() == *carrier_))
        throw InputError("pfalgebra: element " + f.str() + " is on a different carrier");
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
    if (elements_.empty() || !elements_.front().empty())
      throw InputError("pfalgebra: must contain the empty function");
    for (PfOp op : {PfOp::Difference, PfOp::Restrict})
      if (auto bad = first_escape(op))
        throw InputError("pfalgebra: not closed under " + std::string(pf_op_name(op)) +
                         ": " + *bad);
  }

  const CarrierPtr &carrier() const { return carrier_; }
  const std::vector<PartialFunction> &elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }

  std::optional<std::size_t> index_of(const PartialFunction &f) const
  {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), f);
    if (it == elements_.end() || !(*it == f))
      return std::nullopt;
    return static_cast<std::size_t>(it - elements_.begin());
  }

  bool contains(const PartialFunction &f) const { return index_of(f).has_value(); }

  bool closed_under(PfOp op) const { return !first_escape(op).has_value(); }

  /// Description of the first argument tuple whose result leaves the algebra
  /// (or is undefined), if any.
  std::optional<std::string> first_escape(PfOp op) const
  {
    const std::size_t n = pf_op_arity(op);
    std::vector<std::size_t> idx(n, 0);
    std::vector<PartialFunction> args;
    while (true) {
      args.clear();
      for (std::size_t i : idx)
        args.push_back(elements_[i]);
      auto r = pf_apply(op, carrier_, args);
      if (!r || !contains(*r)) {
        std::string s = std::string(pf_op_name(op)) + "(";
        for (std::size_t k = 0; k < n; ++k)
          s += (k ? "," : "") + args[k].str();
        s += ") = " + (r ? r->str() : std::string("undefined"));
        return s;
      }
      std::size_t k = n;
      while (k > 0) {
        if (++idx[k - 1] < elements_.size())
          break;
        idx[k - 1] = 0;
        --k;
      }
      if (k == 0)
        return std::nullopt;
    }
  }

private:
  CarrierPtr carrier_;
  std::vector<PartialFunction> elements_;
};

/// All (size+1)^size partial functions on `carrier`, canonical order.
inline std::vector<PartialFunction> enumerate_all_pfs(const CarrierPtr &carrier,
                                                      const Limits &limits = {})
{
  require_cap(carrier->size, limits.max_carrier, "enumerate_all_pfs");
  const std::size_t n = carrier->size;
  std::vector<int> image(n, PartialFunction::undefined);
  std::vector<PartialFunction> out;
  while (true) {
    out.emplace_back(carrier, image);
    std::size_t k = n;
    while (k > 0) {
      if (++image[k - 1] < static_cast<int>(n))
        break;
      image[k - 1] = PartialFunction::undefined;
      --k;
    }
    if (k == 0)
      return out;
  }
}

/// Least set containing the seeds and ∅, closed under `ops`.
inline ConcretePFAlgebra closure_generate(const CarrierPtr &carrier,
                                          const std::vector<PartialFunction> &seeds,
                                          const std::vector<PfOp> &ops,
                                          const Limits &limits = {})
{
  require_cap(carrier->size, limits.max_carrier, "closure_generate");
  if (std::find(ops.begin(), ops.end(), PfOp::Difference) == ops.end() ||
      std::find(ops.begin(), ops.end(), PfOp::Restrict) == ops.end())
    throw InputError("closure_generate: operations must include difference and restrict");

  std::vector<PartialFunction> elems;
  std::set<PartialFunction> seen;
  auto add = [&](const PartialFunction &f) {
    if (!(f.carrier() == *carrier))
      throw InputError("closure_generate: seed " + f.str() + " is on a different carrier");
    if (seen.insert(f).second) {
      elems.push_back(f);
      require_cap(elems.size(), limits.max_closure_elements, "closure_generate");
    }
  };
  auto apply = [&](PfOp op, std::span<const PartialFunction> args) {
    auto r = pf_apply(op, carrier, args);
    if (!r)
      throw InputError("closure_generate: " + std::string(pf_op_name(op)) +
                       " undefined on " + args[0].str());
    add(*r);
  };

  add(PartialFunction(carrier));
  for (const auto &s : seeds)
    add(s);
  for (PfOp op : ops)
    if (pf_op_arity(op) == 0)
      apply(op, {});

  // Element i is combined with every j <= i once it is reached.
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (PfOp op : ops) {
      const std::size_t arity = pf_op_arity(op);
      if (arity == 1) {
        PartialFunction a = elems[i];
        apply(op, std::span<const PartialFunction>(&a, 1));
      } else if (arity == 2) {
        for (std::size_t j = 0; j <= i; ++j) {
          PartialFunction ij[2] = {elems[i], elems[j]};
          apply(op, ij);
          if (j != i) {
            PartialFunction ji[2] = {elems[j], elems[i]};
            apply(op, ji);
          }
        }
      }
    }
  }
  return ConcretePFAlgebra(carrier, std::move(elems));
}

} // namespace dra

#endif // DRA_PFUN_HPP
