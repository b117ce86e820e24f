#ifndef DRA_IO_HPP
#define DRA_IO_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "dra/algebra.hpp"
#include "dra/common.hpp"
#include "dra/operators.hpp"
#include "dra/pfun.hpp"
#include "dra/space.hpp"

namespace dra::io {

using json = nlohmann::json;

inline constexpr int document_version = 1;

/// A schema problem at a JSON-pointer location.
class DocumentError : public InputError
{
public:
  DocumentError(std::string path, const std::string &message)
    : InputError(message), path_(std::move(path))
  {}
  const std::string &path() const { return path_; }

private:
  std::string path_;
};

namespace detail {

inline std::string child(const std::string &path, const std::string &key) { return path + "/" + key; }
inline std::string child(const std::string &path, std::size_t i) { return path + "/" + std::to_string(i); }

inline const json &field(const json &j, const std::string &path, const std::string &key)
{
  if (!j.is_object())
    throw DocumentError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end())
    throw DocumentError(child(path, key), "missing field '" + key + "'");
  return *it;
}

inline const json *optional_field(const json &j, const std::string &key)
{
  auto it = j.find(key);
  return it == j.end() || it->is_null() ? nullptr : &*it;
}

inline std::string as_string(const json &j, const std::string &path)
{
  if (!j.is_string())
    throw DocumentError(path, "expected a string");
  return j.get<std::string>();
}

inline std::size_t as_index(const json &j, const std::string &path)
{
  if (!j.is_number_integer() || j.get<long long>() < 0)
    throw DocumentError(path, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

inline const json &as_array(const json &j, const std::string &path)
{
  if (!j.is_array())
    throw DocumentError(path, "expected an array");
  return j;
}

inline std::vector<std::string> string_list(const json &j, const std::string &path)
{
  std::vector<std::string> out;
  const json &a = as_array(j, path);
  for (std::size_t i = 0; i < a.size(); ++i)
    out.push_back(as_string(a[i], child(path, i)));
  return out;
}

inline std::size_t lookup(const std::map<std::string, std::size_t> &names, const json &j,
                          const std::string &path, const char *what)
{
  std::string s = as_string(j, path);
  auto it = names.find(s);
  if (it == names.end())
    throw DocumentError(path, std::string("unknown ") + what + " '" + s + "'");
  return it->second;
}

inline std::map<std::string, std::size_t> index_names(const std::vector<std::string> &names,
                                                      const std::string &path, const char *what)
{
  std::map<std::string, std::size_t> m;
  for (std::size_t i = 0; i < names.size(); ++i)
    if (!m.emplace(names[i], i).second)
      throw DocumentError(child(path, i), std::string("duplicate ") + what + " '" + names[i] + "'");
  return m;
}

inline void check_header(const json &j, const std::string &kind)
{
  if (!j.is_object())
    throw DocumentError("", "document must be an object");
  std::string k = as_string(field(j, "", "kind"), "/kind");
  if (k != kind)
    throw DocumentError("/kind", "expected kind '" + kind + "', got '" + k + "'");
  if (const json *v = optional_field(j, "version"))
    if (!v->is_number_integer() || v->get<int>() != document_version)
      throw DocumentError("/version", "unsupported version");
}

/// Row-major nested arrays of names, depth = arity.
inline OpTable parse_table(const json &j, const std::string &path, std::size_t arity,
                           const std::map<std::string, std::size_t> &names)
{
  const std::size_t n = names.size();
  std::vector<std::size_t> entries;
  auto rec = [&](auto &&self, const json &node, const std::string &p, std::size_t depth) -> void {
    if (depth == arity) {
      entries.push_back(lookup(names, node, p, "element"));
      return;
    }
    const json &a = as_array(node, p);
    if (a.size() != n)
      throw DocumentError(p, "table row has " + std::to_string(a.size()) + " entries, expected " +
                                 std::to_string(n));
    for (std::size_t i = 0; i < n; ++i)
      self(self, a[i], child(p, i), depth + 1);
  };
  rec(rec, j, path, 0);
  return OpTable(arity, n, std::move(entries));
}

inline json emit_table(const OpTable &t, const std::vector<std::string> &names)
{
  std::size_t k = 0;
  auto rec = [&](auto &&self, std::size_t depth) -> json {
    if (depth == t.arity())
      return names[t.entries()[k++]];
    json a = json::array();
    for (std::size_t i = 0; i < t.size(); ++i)
      a.push_back(self(self, depth + 1));
    return a;
  };
  return rec(rec, 0);
}

inline std::vector<std::pair<std::size_t, std::size_t>> parse_graph(const json &j, const std::string &path,
                                                                    std::size_t size)
{
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const json &a = as_array(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::string p = child(path, i);
    if (!a[i].is_array() || a[i].size() != 2)
      throw DocumentError(p, "graph pair must be [x, y]");
    std::size_t x = as_index(a[i][0], child(p, 0));
    std::size_t y = as_index(a[i][1], child(p, 1));
    if (x >= size || y >= size)
      throw DocumentError(p, "pair outside the carrier");
    out.emplace_back(x, y);
  }
  return out;
}

inline json emit_graph(const PartialFunction &f)
{
  json a = json::array();
  for (auto [x, y] : f.graph())
    a.push_back(json::array({x, y}));
  return a;
}

} // namespace detail

inline std::string kind_of(const json &j)
{
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw DocumentError("/kind", "document has no kind");
  return j["kind"].get<std::string>();
}

inline json parse_text(const std::string &text)
{
  try {
    return json::parse(text);
  } catch (const json::parse_error &e) {
    throw DocumentError("@" + std::to_string(e.byte), std::string("malformed JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Algebras

struct NamedAlgebra
{
  std::string name;
  AlgebraPtr algebra;
};

inline NamedAlgebra parse_algebra(const json &j)
{
  using namespace detail;
  check_header(j, "algebra");
  auto names = string_list(field(j, "", "elements"), "/elements");
  if (names.empty())
    throw DocumentError("/elements", "at least one element is required");
  auto idx = index_names(names, "/elements", "element");
  OpTable minus = parse_table(field(j, "", "minus"), "/minus", 2, idx);
  OpTable rest = parse_table(field(j, "", "rest"), "/rest", 2, idx);
  std::map<std::string, OpTable> extras;
  if (const json *ops = optional_field(j, "operators")) {
    if (!ops->is_object())
      throw DocumentError("/operators", "expected an object");
    for (const auto &[name, body] : ops->items()) {
      const std::string p = "/operators/" + name;
      if (name == "minus" || name == "rest" || name.empty())
        throw DocumentError(p, "reserved or empty operation name");
      std::size_t arity = as_index(field(body, p, "arity"), p + "/arity");
      if (arity > 4)
        throw DocumentError(p + "/arity", "arity above 4 is not supported");
      extras[name] = parse_table(field(body, p, "table"), p + "/table", arity, idx);
    }
  }
  NamedAlgebra out;
  if (const json *n = optional_field(j, "name"))
    out.name = as_string(*n, "/name");
  out.algebra = share(FiniteAlgebra(std::move(names), std::move(minus), std::move(rest), std::move(extras)));
  return out;
}

inline json emit_algebra(const FiniteAlgebra &A, const std::string &name = {})
{
  json j;
  j["kind"] = "algebra";
  j["version"] = document_version;
  if (!name.empty())
    j["name"] = name;
  j["elements"] = A.names();
  j["minus"] = detail::emit_table(A.minus_table(), A.names());
  j["rest"] = detail::emit_table(A.rest_table(), A.names());
  if (!A.extras().empty()) {
    json ops = json::object();
    for (const auto &[n, t] : A.extras())
      ops[n] = {{"arity", t.arity()}, {"table", detail::emit_table(t, A.names())}};
    j["operators"] = ops;
  }
  return j;
}

// ---------------------------------------------------------------------------
// Concrete algebras

struct NamedPFAlgebra
{
  std::string name;
  ConcretePFAlgebra algebra;
  std::vector<std::string> element_names;
  std::vector<PfOp> operators;

  AlgebraPtr abstract() const { return share(from_concrete(algebra, operators, element_names)); }
};

inline NamedPFAlgebra parse_pfalgebra(const json &j)
{
  using namespace detail;
  check_header(j, "pfalgebra");
  const json &c = field(j, "", "carrier");
  std::size_t size = as_index(field(c, "/carrier", "size"), "/carrier/size");
  std::vector<std::string> labels;
  if (const json *l = optional_field(c, "labels"))
    labels = string_list(*l, "/carrier/labels");
  CarrierPtr carrier;
  try {
    carrier = Carrier::make(size, labels);
  } catch (const InputError &e) {
    throw DocumentError("/carrier", e.what());
  }

  auto parse_fn = [&](const json &e, const std::string &p, std::map<PartialFunction, std::string> &named) {
    if (!e.is_object())
      throw DocumentError(p, "expected an object with a graph");
    PartialFunction f(carrier);
    try {
      f = PartialFunction::from_pairs(carrier, parse_graph(field(e, p, "graph"), p + "/graph", size));
    } catch (const DocumentError &) {
      throw;
    } catch (const InputError &err) {
      throw DocumentError(p + "/graph", err.what());
    }
    if (const json *n = optional_field(e, "name"))
      named[f] = as_string(*n, p + "/name");
    return f;
  };

  std::map<PartialFunction, std::string> named;
  std::optional<ConcretePFAlgebra> alg;
  const json *els = optional_field(j, "elements");
  const json *gen = optional_field(j, "generate");
  if ((els == nullptr) == (gen == nullptr))
    throw DocumentError("", "exactly one of 'elements' and 'generate' is required");
  try {
    if (els) {
      std::vector<PartialFunction> fs;
      for (std::size_t i = 0; i < as_array(*els, "/elements").size(); ++i)
        fs.push_back(parse_fn((*els)[i], child("/elements", i), named));
      try {
        alg.emplace(carrier, std::move(fs));
      } catch (const InputError &e) {
        throw DocumentError("/elements", e.what());
      }
    } else {
      std::vector<PartialFunction> seeds;
      const json &s = field(*gen, "/generate", "seeds");
      for (std::size_t i = 0; i < as_array(s, "/generate/seeds").size(); ++i)
        seeds.push_back(parse_fn(s[i], child("/generate/seeds", i), named));
      std::vector<PfOp> ops{PfOp::Difference, PfOp::Restrict};
      if (const json *o = optional_field(*gen, "ops")) {
        ops.clear();
        auto names = string_list(*o, "/generate/ops");
        for (std::size_t i = 0; i < names.size(); ++i) {
          auto op = pf_op_from_name(names[i]);
          if (!op)
            throw DocumentError(child("/generate/ops", i), "unknown operation '" + names[i] + "'");
          ops.push_back(*op);
        }
      }
      try {
        alg.emplace(closure_generate(carrier, seeds, ops));
      } catch (const InputError &e) {
        throw DocumentError("/generate", e.what());
      }
    }
  } catch (const DocumentError &) {
    throw;
  }

  NamedPFAlgebra out{{}, *alg, {}, {}};
  if (const json *n = optional_field(j, "name"))
    out.name = as_string(*n, "/name");
  std::set<std::string> used;
  for (const auto &f : out.algebra.elements()) {
    auto it = named.find(f);
    std::string nm = it != named.end() ? it->second : f.str();
    if (!used.insert(nm).second)
      throw DocumentError("/elements", "duplicate element name '" + nm + "'");
    out.element_names.push_back(nm);
  }
  if (const json *o = optional_field(j, "operators")) {
    auto names = string_list(*o, "/operators");
    for (std::size_t i = 0; i < names.size(); ++i) {
      auto op = pf_op_from_name(names[i]);
      if (!op)
        throw DocumentError(child("/operators", i), "unknown operation '" + names[i] + "'");
      if (!out.algebra.closed_under(*op))
        throw DocumentError(child("/operators", i), "algebra is not closed under '" + names[i] + "'");
      out.operators.push_back(*op);
    }
  }
  return out;
}

inline json emit_pfalgebra(const NamedPFAlgebra &P)
{
  json j;
  j["kind"] = "pfalgebra";
  j["version"] = document_version;
  if (!P.name.empty())
    j["name"] = P.name;
  const Carrier &c = *P.algebra.carrier();
  j["carrier"] = {{"size", c.size}};
  if (!c.labels.empty())
    j["carrier"]["labels"] = c.labels;
  json els = json::array();
  for (std::size_t i = 0; i < P.algebra.size(); ++i)
    els.push_back({{"name", P.element_names[i]}, {"graph", detail::emit_graph(P.algebra.elements()[i])}});
  j["elements"] = els;
  if (!P.operators.empty()) {
    json ops = json::array();
    for (PfOp op : P.operators)
      ops.push_back(std::string(pf_op_name(op)));
    j["operators"] = ops;
  }
  return j;
}

// ---------------------------------------------------------------------------
// Spaces

struct NamedSpace
{
  std::string name;
  SpacePtr space;
};

inline NamedSpace parse_space(const json &j)
{
  using namespace detail;
  check_header(j, "space");
  auto points = string_list(field(j, "", "points"), "/points");
  auto base = string_list(field(j, "", "base_points"), "/base_points");
  auto pidx = index_names(points, "/points", "point");
  auto bidx = index_names(base, "/base_points", "base point");
  const json &proj = field(j, "", "projection");
  if (!proj.is_object())
    throw DocumentError("/projection", "expected an object from point to base point");
  std::vector<std::size_t> pi(points.size());
  std::vector<bool> seen(points.size(), false);
  for (const auto &[p, b] : proj.items()) {
    auto it = pidx.find(p);
    if (it == pidx.end())
      throw DocumentError("/projection/" + p, "unknown point '" + p + "'");
    pi[it->second] = lookup(bidx, b, "/projection/" + p, "base point");
    seen[it->second] = true;
  }
  for (std::size_t i = 0; i < points.size(); ++i)
    if (!seen[i])
      throw DocumentError("/projection", "point '" + points[i] + "' has no projection");
  std::vector<BitSet> basis;
  const json &bj = as_array(field(j, "", "basis"), "/basis");
  for (std::size_t i = 0; i < bj.size(); ++i) {
    BitSet B(points.size());
    const std::string p = child("/basis", i);
    const json &set = as_array(bj[i], p);
    for (std::size_t k = 0; k < set.size(); ++k)
      B.set(lookup(pidx, set[k], child(p, k), "point"));
    basis.push_back(B);
  }
  NamedSpace out;
  if (const json *n = optional_field(j, "name"))
    out.name = as_string(*n, "/name");
  out.space = share(EtaleSpace(std::move(points), std::move(base), std::move(pi), std::move(basis)));
  return out;
}

inline json point_list(const EtaleSpace &S, const BitSet &U)
{
  json a = json::array();
  U.for_each([&](std::size_t x) { a.push_back(S.point(x)); });
  return a;
}

inline json emit_space(const EtaleSpace &S, const std::string &name = {})
{
  json j;
  j["kind"] = "space";
  j["version"] = document_version;
  if (!name.empty())
    j["name"] = name;
  j["points"] = S.points();
  j["base_points"] = S.base_points();
  json proj = json::object();
  for (std::size_t x = 0; x < S.size(); ++x)
    proj[S.point(x)] = S.base_point(S.pi(x));
  j["projection"] = proj;
  json basis = json::array();
  for (const auto &B : S.basis())
    basis.push_back(point_list(S, B));
  j["basis"] = basis;
  return j;
}

// ---------------------------------------------------------------------------
// Morphisms

struct ParsedMorphism
{
  bool between_algebras = true;
  std::optional<AlgebraMap> hom;
  std::optional<SpacePtr> source_space, target_space;
  PointMap point_map;
};

inline ParsedMorphism parse_morphism(const json &j)
{
  using namespace detail;
  check_header(j, "morphism");
  std::string between = as_string(field(j, "", "between"), "/between");
  const json &map = field(j, "", "map");
  if (!map.is_object())
    throw DocumentError("/map", "expected an object");
  auto nested = [&](const char *key, auto parse) {
    try {
      return parse(field(j, "", key));
    } catch (const DocumentError &e) {
      throw DocumentError("/" + std::string(key) + e.path(), e.what());
    }
  };
  ParsedMorphism out;
  if (between == "algebras") {
    auto A = nested("source", parse_algebra).algebra;
    auto B = nested("target", parse_algebra).algebra;
    std::vector<std::optional<std::size_t>> t(A->size());
    for (const auto &[k, v] : map.items()) {
      auto a = A->index_of(k);
      if (!a)
        throw DocumentError("/map/" + k, "unknown source element '" + k + "'");
      auto b = B->index_of(as_string(v, "/map/" + k));
      if (!b)
        throw DocumentError("/map/" + k, "unknown target element '" + v.get<std::string>() + "'");
      t[*a] = *b;
    }
    std::vector<std::size_t> table;
    for (std::size_t a = 0; a < t.size(); ++a) {
      if (!t[a])
        throw DocumentError("/map", "element '" + A->name(a) + "' has no image");
      table.push_back(*t[a]);
    }
    out.hom = AlgebraMap(A, B, std::move(table));
  } else if (between == "spaces") {
    out.between_algebras = false;
    out.source_space = nested("source", parse_space).space;
    out.target_space = nested("target", parse_space).space;
    const EtaleSpace &X = **out.source_space;
    const EtaleSpace &Y = **out.target_space;
    out.point_map.assign(X.size(), std::nullopt);
    for (const auto &[k, v] : map.items()) {
      auto x = X.point_index(k);
      if (!x)
        throw DocumentError("/map/" + k, "unknown source point '" + k + "'");
      if (v.is_null())
        continue;
      auto y = Y.point_index(as_string(v, "/map/" + k));
      if (!y)
        throw DocumentError("/map/" + k, "unknown target point '" + v.get<std::string>() + "'");
      out.point_map[*x] = *y;
    }
  } else {
    throw DocumentError("/between", "expected 'algebras' or 'spaces'");
  }
  return out;
}

inline json emit_morphism(const AlgebraMap &h)
{
  json map = json::object();
  for (std::size_t a = 0; a < h.table.size(); ++a)
    map[h.source->name(a)] = h.target->name(h(a));
  return {{"kind", "morphism"},       {"version", document_version},
          {"between", "algebras"},    {"source", emit_algebra(*h.source)},
          {"target", emit_algebra(*h.target)}, {"map", map}};
}

inline json emit_morphism(const SpaceMorphism &phi)
{
  json map = json::object();
  for (std::size_t x = 0; x < phi.map.size(); ++x)
    if (phi.map[x])
      map[phi.source->point(x)] = phi.target->point(*phi.map[x]);
  return {{"kind", "morphism"},        {"version", document_version},
          {"between", "spaces"},       {"source", emit_space(*phi.source)},
          {"target", emit_space(*phi.target)}, {"map", map}};
}

// ---------------------------------------------------------------------------
// Operators and relations

inline std::pair<std::string, OpTable> parse_operator(const json &j, const FiniteAlgebra &A)
{
  using namespace detail;
  check_header(j, "operator");
  std::string name = as_string(field(j, "", "name"), "/name");
  std::size_t arity = as_index(field(j, "", "arity"), "/arity");
  if (arity > 4)
    throw DocumentError("/arity", "arity above 4 is not supported");
  auto idx = index_names(A.names(), "/elements", "element");
  return {name, parse_table(field(j, "", "table"), "/table", arity, idx)};
}

inline json emit_operator(const std::string &name, const OpTable &t, const FiniteAlgebra &A)
{
  return {{"kind", "operator"},
          {"version", document_version},
          {"name", name},
          {"arity", t.arity()},
          {"table", detail::emit_table(t, A.names())}};
}

inline SpaceRelation parse_relation(const json &j, const EtaleSpace &S)
{
  using namespace detail;
  check_header(j, "relation");
  SpaceRelation R;
  R.name = as_string(field(j, "", "name"), "/name");
  R.arity = as_index(field(j, "", "arity"), "/arity");
  if (R.arity == 0)
    throw DocumentError("/arity", "relation arity must be at least 1");
  auto idx = index_names(S.points(), "/points", "point");
  const json &ts = as_array(field(j, "", "tuples"), "/tuples");
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const std::string p = child("/tuples", i);
    const json &t = as_array(ts[i], p);
    if (t.size() != R.arity)
      throw DocumentError(p, "tuple has the wrong length");
    std::vector<std::size_t> tuple;
    for (std::size_t k = 0; k < t.size(); ++k)
      tuple.push_back(lookup(idx, t[k], child(p, k), "point"));
    R.tuples.insert(std::move(tuple));
  }
  return R;
}

inline json emit_relation(const SpaceRelation &R, const EtaleSpace &S)
{
  json ts = json::array();
  for (const auto &t : R.tuples) {
    json a = json::array();
    for (std::size_t x : t)
      a.push_back(S.point(x));
    ts.push_back(a);
  }
  return {{"kind", "relation"}, {"version", document_version}, {"name", R.name}, {"arity", R.arity},
          {"tuples", ts}};
}

/// emit(parse(d)) for any supported kind.
inline json normalize(const json &j)
{
  const std::string kind = kind_of(j);
  if (kind == "algebra") {
    auto a = parse_algebra(j);
    return emit_algebra(*a.algebra, a.name);
  }
  if (kind == "pfalgebra")
    return emit_pfalgebra(parse_pfalgebra(j));
  if (kind == "space") {
    auto s = parse_space(j);
    return emit_space(*s.space, s.name);
  }
  if (kind == "morphism") {
    auto m = parse_morphism(j);
    if (m.between_algebras)
      return emit_morphism(*m.hom);
    return emit_morphism(SpaceMorphism{*m.source_space, *m.target_space, m.point_map});
  }
  throw DocumentError("/kind", "cannot normalize a standalone '" + kind + "' document");
}

} // namespace dra::io

#endif // DRA_IO_HPP
