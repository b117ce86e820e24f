#ifndef DRA_CLI_HPP
#define DRA_CLI_HPP

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dra/duality.hpp"
#include "dra/fixtures.hpp"
#include "dra/io.hpp"
#include "dra/operators.hpp"

namespace dra::cli {

using json = nlohmann::json;

enum ExitCode : int
{
  exit_ok = 0,
  exit_property_failure = 1,
  exit_input_error = 2,
  exit_internal_error = 3,
};

namespace detail {

inline json read_document(const std::string &path, std::istream &in)
{
  std::string text;
  if (path == "-") {
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  } else {
    std::ifstream f(path, std::ios::binary);
    if (!f)
      throw io::DocumentError("", "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  }
  return io::parse_text(text);
}

inline json names_of(const FiniteAlgebra &A, const std::vector<std::size_t> &xs)
{
  json a = json::array();
  for (std::size_t x : xs)
    a.push_back(A.name(x));
  return a;
}

inline json names_of(const FiniteAlgebra &A, const BitSet &xs) { return names_of(A, xs.indices()); }

inline json check_items(const CheckReport &r)
{
  json items = json::object();
  for (const auto &it : r.items) {
    json v = {{"ok", it.ok}};
    if (!it.detail.empty())
      v["detail"] = it.detail;
    items[it.name] = v;
  }
  return items;
}

inline json op_check(const OpCheck &c)
{
  json v = {{"ok", c.ok}};
  if (!c.ok)
    v["witness"] = c.witness;
  return v;
}

inline json classification(const OperatorClassification &c)
{
  return {{"compatibility_preserving", op_check(c.compat_preserving)},
          {"normal", op_check(c.normal)},
          {"additive", op_check(c.additive)},
          {"monotone", op_check(c.monotone)},
          {"operator", c.is_operator()},
          {"compatibility_preserving_operator", c.is_compat_preserving_operator()}};
}

inline json report(const std::string &command, bool ok)
{
  return {{"kind", "report"}, {"version", io::document_version}, {"command", command}, {"ok", ok}};
}

inline AlgebraPtr algebra_from(const json &doc)
{
  const std::string kind = io::kind_of(doc);
  if (kind == "algebra")
    return io::parse_algebra(doc).algebra;
  if (kind == "pfalgebra")
    return io::parse_pfalgebra(doc).abstract();
  throw io::DocumentError("/kind", "expected an algebra or pfalgebra document, got '" + kind + "'");
}

/// An algebra that passes the axioms; later commands assume them.
inline AlgebraPtr valid_algebra_from(const json &doc)
{
  AlgebraPtr A = algebra_from(doc);
  AxiomReport r = validate_axioms(*A);
  if (!r.ok())
    throw InputError(r.bottom_constant ? "the algebra fails " + r.violations.front().axiom + "; run validate for details"
                                       : "the algebra has no bottom; run validate for details");
  return A;
}

inline int validate(const json &doc, json &out)
{
  const std::string kind = io::kind_of(doc);
  if (kind == "algebra" || kind == "pfalgebra") {
    AlgebraPtr A = algebra_from(doc);
    AxiomReport r = validate_axioms(*A);
    out = report("validate", r.ok());
    out["elements"] = A->size();
    out["bottom_constant"] = r.bottom_constant;
    out["instances_checked"] = r.instances_checked;
    json vs = json::array();
    for (const auto &v : r.violations) {
      if (vs.size() == 20)
        break;
      vs.push_back({{"axiom", v.axiom}, {"args", names_of(*A, v.args)}, {"lhs", A->name(v.lhs)},
                    {"rhs", A->name(v.rhs)}});
    }
    out["violations"] = vs;
    out["violation_count"] = r.violations.size();
    if (r.ok())
      out["finitarily_compatibly_complete"] = is_fin_compatibly_complete(*A);
    return r.ok() ? exit_ok : exit_property_failure;
  }
  if (kind == "space") {
    auto S = io::parse_space(doc).space;
    EtaleReport r = validate_etale(*S);
    out = report("validate", r.ok());
    out["checks"] = check_items(r);
    out["discrete"] = r.discrete;
    return r.ok() ? exit_ok : exit_property_failure;
  }
  if (kind == "morphism") {
    auto m = io::parse_morphism(doc);
    if (m.between_algebras) {
      HomReport r = hom_check(*m.hom);
      out = report("validate", r.is_hom());
      out["violations"] = r.violations;
      return r.is_hom() ? exit_ok : exit_property_failure;
    }
    CheckReport r = morphism_report(**m.source_space, **m.target_space, m.point_map);
    out = report("validate", r.ok());
    out["checks"] = check_items(r);
    return r.ok() ? exit_ok : exit_property_failure;
  }
  throw io::DocumentError("/kind", "cannot validate a standalone '" + kind + "' document");
}

inline json filters_report(const AlgebraPtr &A, const Limits &limits)
{
  MaxFilterSpace M = maximal_filters(A, limits);
  json out = report("filters", true);
  json points = json::array();
  for (std::size_t p = 0; p < M.size(); ++p)
    points.push_back({{"name", M.point_name(p)}, {"elements", names_of(*A, M.points[p])}});
  out["points"] = points;
  json classes = json::array();
  for (const auto &c : M.classes) {
    json cl = json::array();
    for (std::size_t p : c)
      cl.push_back(M.point_name(p));
    classes.push_back(cl);
  }
  out["classes"] = classes;
  json hats = json::object();
  for (std::size_t a = 0; a < A->size(); ++a) {
    json h = json::array();
    M.hat(a).for_each([&](std::size_t p) { h.push_back(M.point_name(p)); });
    hats[A->name(a)] = h;
  }
  out["hat"] = hats;
  return out;
}

inline json completion_document(const AlgebraPtr &A, const std::vector<std::string> &ops, const Limits &limits)
{
  json out;
  AlgebraMap iota;
  AlgebraPtr C;
  if (ops.empty()) {
    Completion c = complete(A, limits);
    iota = c.iota;
    C = c.algebra;
  } else {
    OperatorCompletion c = complete_with_operators(A, ops, limits);
    iota = c.iota;
    C = c.algebra;
  }
  out = io::emit_algebra(*C);
  json emb = json::object();
  for (std::size_t a = 0; a < A->size(); ++a)
    emb[A->name(a)] = C->name(iota(a));
  out["embedding"] = emb;
  // Each element as the join of the image elements below it.
  json density = json::object();
  for (std::size_t c = 0; c < C->size(); ++c) {
    json below = json::array();
    for (std::size_t a = 0; a < A->size(); ++a)
      if (leq(*C, iota(a), c) && iota(a) != C->bottom())
        below.push_back(A->name(a));
    density[C->name(c)] = below;
  }
  out["density"] = density;
  return out;
}

inline int roundtrip(const json &doc, const Limits &limits, json &out)
{
  const std::string kind = io::kind_of(doc);
  if (kind == "space") {
    auto S = io::parse_space(doc).space;
    auto tri = check_triangle_identities(S, limits);
    Counit lam = counit_lambda(S, limits);
    bool counit_iso = is_space_isomorphism(lam.lambda);
    bool nat = check_naturality(SpaceMorphism::identity(S), limits);
    bool ok = tri.ok() && counit_iso && nat;
    out = report("roundtrip", ok);
    out["checks"] = {{"triangle_left", tri.left},
                     {"triangle_right", tri.right},
                     {"counit_isomorphism", counit_iso},
                     {"naturality_identity", nat}};
    return ok ? exit_ok : exit_property_failure;
  }
  AlgebraPtr A = valid_algebra_from(doc);
  auto tri = check_triangle_identities(A, limits);
  bool nat = check_naturality(AlgebraMap::identity(A), limits);
  Unit u = unit_eta(A, limits);
  bool eta_iso = hom_check(u.eta).is_iso();
  bool fcc = is_fin_compatibly_complete(*A);
  Completion c1 = complete(A, limits);
  Completion c2 = complete(c1.algebra, limits);
  bool idem = isomorphic(c1.algebra, c2.algebra, limits);
  bool ok = tri.ok() && nat && (eta_iso == fcc) && idem;
  out = report("roundtrip", ok);
  out["checks"] = {{"triangle_left", tri.left},
                   {"triangle_right", tri.right},
                   {"naturality_identity", nat},
                   {"unit_isomorphism_iff_complete", eta_iso == fcc},
                   {"completion_idempotent", idem}};
  out["unit_isomorphism"] = eta_iso;
  out["finitarily_compatibly_complete"] = fcc;
  return ok ? exit_ok : exit_property_failure;
}

inline int check_hom(const json &doc, bool dualize, const Limits &limits, json &out)
{
  auto m = io::parse_morphism(doc);
  if (m.between_algebras) {
    const AlgebraMap &h = *m.hom;
    HomReport r = hom_check(h);
    if (dualize) {
      if (!r.is_hom())
        throw InputError("check-hom: not a homomorphism, so it has no dual");
      out = io::emit_morphism(F_morphism(h, limits));
      return exit_ok;
    }
    out = report("check-hom", r.is_hom());
    out["homomorphism"] = r.is_hom();
    out["embedding"] = r.is_embedding();
    out["isomorphism"] = r.is_iso();
    out["injective"] = r.injective;
    out["surjective"] = r.surjective;
    out["proper"] = r.is_hom() && is_proper_hom(h);
    out["violations"] = r.violations;
    return r.is_hom() ? exit_ok : exit_property_failure;
  }
  CheckReport r = morphism_report(**m.source_space, **m.target_space, m.point_map);
  if (dualize) {
    if (!r.ok())
      throw InputError("check-hom: not a morphism of spaces (" + r.first_failure() + ")");
    out = io::emit_morphism(G_morphism(SpaceMorphism{*m.source_space, *m.target_space, m.point_map}));
    return exit_ok;
  }
  out = report("check-hom", r.ok());
  out["checks"] = check_items(r);
  return r.ok() ? exit_ok : exit_property_failure;
}

inline int check_op(const json &doc, const std::string &op_arg, bool relation, std::istream &in,
                    const Limits &limits, json &out)
{
  AlgebraPtr A = valid_algebra_from(doc);
  std::string name = op_arg;
  OpTable table;
  if (const OpTable *t = A->extra(op_arg)) {
    table = *t;
  } else if (op_arg == "meet") {
    table = OpTable::tabulate(2, A->size(), [&](auto a) { return A->meet(a[0], a[1]); });
  } else {
    if (op_arg != "-" && !std::filesystem::exists(op_arg))
      throw InputError("check-op: '" + op_arg + "' is neither an operation of the algebra nor a file");
    std::tie(name, table) = io::parse_operator(read_document(op_arg, in), *A);
  }
  OperatorClassification c = classify_operator(*A, table, name, limits);
  if (relation) {
    if (!c.is_compat_preserving_operator())
      throw InputError("check-op: '" + name + "' is not a compatibility preserving operator");
    Spectrum FA = F_object(A, limits);
    out = io::emit_relation(relation_from_operator(FA, table, name, limits), *FA.space);
    return exit_ok;
  }
  out = report("check-op", c.is_compat_preserving_operator());
  out["operation"] = name;
  out["arity"] = table.arity();
  out["classification"] = classification(c);
  return c.is_compat_preserving_operator() ? exit_ok : exit_property_failure;
}

inline json classify_ops(const json &doc, const Limits &limits)
{
  auto P = io::parse_pfalgebra(doc);
  std::vector<PfOp> ops;
  for (PfOp op : all_pf_ops)
    if (op != PfOp::Difference && op != PfOp::Restrict)
      ops.push_back(op);
  json out = report("classify-op", true);
  json rows = json::array();
  for (const auto &r : classify_concrete_ops(P.algebra, ops, limits)) {
    json row = {{"operation", std::string(pf_op_name(r.op))}, {"defined", r.defined}, {"extended", r.extended}};
    if (r.defined) {
      row["algebra_size"] = r.algebra_size;
      row["classification"] = classification(r.cls);
    } else {
      row["note"] = r.note;
    }
    rows.push_back(row);
  }
  out["operations"] = rows;
  out["not_implemented"] = json::array({"update"});
  return out;
}

inline json fixture_document(const fixtures::Fixture &f)
{
  if (f.concrete) {
    io::NamedPFAlgebra P{f.name, *f.concrete, f.algebra->names(), {}};
    json d = io::emit_pfalgebra(P);
    return d;
  }
  return io::emit_algebra(*f.algebra, f.name);
}

inline json catalog(const std::string &only, bool abstract)
{
  json docs = json::array();
  auto all = fixtures::catalog();
  std::sort(all.begin(), all.end(), [](const auto &a, const auto &b) { return a.name < b.name; });
  for (const auto &f : all) {
    if (!only.empty() && f.name != only)
      continue;
    json d = abstract ? io::emit_algebra(*f.algebra, f.name) : fixture_document(f);
    if (!only.empty())
      return d;
    docs.push_back({{"name", f.name}, {"description", f.description}, {"document", d}});
  }
  if (!only.empty())
    throw InputError("catalog: no fixture named '" + only + "'");
  return {{"kind", "catalog"}, {"version", io::document_version}, {"fixtures", docs}};
}

inline void error_out(std::ostream &err, const std::string &kind, const std::string &message,
                      const std::string *path = nullptr)
{
  json e = {{"kind", kind}, {"message", message}};
  if (path)
    e["path"] = *path;
  err << json{{"error", e}}.dump() << "\n";
}

} // namespace detail

/// Runs one command; `args` excludes the program name.
inline int run_cli(const std::vector<std::string> &args, std::istream &in, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Finite difference-restriction algebras and their dual etale spaces", "dra"};
  app.require_subcommand(1);
  std::string file, op_name, fixture_name;
  std::vector<std::string> with_ops;
  bool dualize = false, relation = false, abstract = false;

  auto *validate = app.add_subcommand("validate", "Check the axioms of an algebra or the conditions on a space");
  validate->add_option("file", file, "Document path, or - for stdin")->required();
  auto *filters = app.add_subcommand("filters", "Maximal filters, their classes and the hat table");
  filters->add_option("algebra", file)->required();
  auto *dualize_cmd = app.add_subcommand("dualize", "Dual space of an algebra, or dual algebra of a space");
  dualize_cmd->add_option("document", file)->required();
  auto *complete_cmd = app.add_subcommand("complete", "Finitary compatible completion");
  complete_cmd->add_option("algebra", file)->required();
  complete_cmd->add_option("--with-op", with_ops, "Extra operations to carry into the completion");
  auto *roundtrip = app.add_subcommand("roundtrip", "Triangle identities, naturality and idempotence");
  roundtrip->add_option("document", file)->required();
  auto *check_hom = app.add_subcommand("check-hom", "Homomorphism or space morphism report");
  check_hom->add_option("map", file)->required();
  check_hom->add_flag("--dualize", dualize, "Emit the dual morphism instead");
  auto *check_op = app.add_subcommand("check-op", "Operator classification of an extra operation");
  check_op->add_option("algebra", file)->required();
  check_op->add_option("op", op_name, "Operation name in the algebra, 'meet', or an operator document")->required();
  check_op->add_flag("--relation", relation, "Emit the dual relation instead");
  auto *classify = app.add_subcommand("classify-op", "Classify the concrete operations on an algebra of partial functions");
  classify->add_option("pfalgebra", file)->required();
  auto *catalog = app.add_subcommand("catalog", "Emit the built-in fixtures");
  catalog->add_option("--fixture", fixture_name, "Emit only this fixture's document");
  catalog->add_flag("--abstract", abstract, "Emit operation tables instead of partial functions");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError &e) {
    detail::error_out(err, "usage", e.what());
    return exit_input_error;
  }

  const Limits limits = Limits::from_environment();
  try {
    json result;
    int code = exit_ok;
    if (*catalog) {
      result = detail::catalog(fixture_name, abstract);
    } else {
      json doc = detail::read_document(file, in);
      if (*validate) {
        code = detail::validate(doc, result);
      } else if (*filters) {
        result = detail::filters_report(detail::valid_algebra_from(doc), limits);
      } else if (*dualize_cmd) {
        if (io::kind_of(doc) == "space") {
          auto S = io::parse_space(doc);
          result = io::emit_algebra(*G_object(S.space).algebra, S.name);
        } else {
          result = io::emit_space(*F_object(detail::valid_algebra_from(doc), limits).space);
        }
      } else if (*complete_cmd) {
        result = detail::completion_document(detail::valid_algebra_from(doc), with_ops, limits);
      } else if (*roundtrip) {
        code = detail::roundtrip(doc, limits, result);
      } else if (*check_hom) {
        code = detail::check_hom(doc, dualize, limits, result);
      } else if (*check_op) {
        code = detail::check_op(doc, op_name, relation, in, limits, result);
      } else if (*classify) {
        result = detail::classify_ops(doc, limits);
      }
    }
    out << result.dump(2) << "\n";
    return code;
  } catch (const io::DocumentError &e) {
    detail::error_out(err, "input", e.what(), &e.path());
    return exit_input_error;
  } catch (const InputError &e) {
    detail::error_out(err, "input", e.what());
    return exit_input_error;
  } catch (const SizeCapError &e) {
    detail::error_out(err, "size_cap", e.what());
    return exit_input_error;
  } catch (const std::exception &e) {
    detail::error_out(err, "internal", e.what());
    return exit_internal_error;
  }
}

} // namespace dra::cli

#endif // DRA_CLI_HPP
