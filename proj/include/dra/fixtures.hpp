#ifndef DRA_FIXTURES_HPP
#define DRA_FIXTURES_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dra/algebra.hpp"
#include "dra/pfun.hpp"

namespace dra::fixtures {

/// A built-in algebra together with the concrete algebra it was built from.
struct Fixture
{
  std::string name;
  std::string description;
  AlgebraPtr algebra;
  std::optional<ConcretePFAlgebra> concrete;
};

namespace detail {

inline PartialFunction pf(const CarrierPtr &c, std::vector<std::pair<std::size_t, std::size_t>> graph)
{
  return PartialFunction::from_pairs(c, graph);
}

/// Names follow `named` where given, the graph otherwise.
inline Fixture build(std::string name, std::string description, const ConcretePFAlgebra &P,
                     const std::map<PartialFunction, std::string> &named, std::vector<PfOp> extras = {})
{
  std::vector<std::string> names;
  for (const auto &f : P.elements()) {
    auto it = named.find(f);
    names.push_back(it != named.end() ? it->second : f.str());
  }
  return {std::move(name), std::move(description), share(from_concrete(P, extras, std::move(names))), P};
}

inline Fixture generated(std::string name, std::string description, std::size_t size,
                         std::vector<std::pair<std::string, PartialFunction>> seeds,
                         std::vector<PfOp> ops = {PfOp::Difference, PfOp::Restrict})
{
  (void)size;
  std::map<PartialFunction, std::string> named;
  std::vector<PartialFunction> fs;
  CarrierPtr c = seeds.empty() ? Carrier::make(size) : seeds.front().second.carrier_ptr();
  named.emplace(PartialFunction(c), "0");
  for (auto &[n, f] : seeds) {
    named[f] = n;
    fs.push_back(f);
  }
  return build(std::move(name), std::move(description), closure_generate(c, fs, ops), named);
}

} // namespace detail

inline Fixture A1()
{
  auto c = Carrier::make(1);
  return detail::generated("A1", "two elements on one point", 1, {{"e", detail::pf(c, {{0, 0}})}});
}

inline Fixture T1()
{
  auto c = Carrier::make(1);
  return detail::generated("T1", "the one-element algebra", 1, {{"0", PartialFunction(c)}});
}

inline Fixture A3c()
{
  auto c = Carrier::make(2);
  return detail::generated("A3c", "two disjoint partial identities", 2,
                           {{"a", detail::pf(c, {{0, 0}})}, {"b", detail::pf(c, {{1, 1}})}});
}

inline Fixture A3i()
{
  auto c = Carrier::make(2);
  return detail::generated("A3i", "two incompatible maps on one point", 2,
                           {{"f", detail::pf(c, {{0, 0}})}, {"g", detail::pf(c, {{0, 1}})}});
}

inline Fixture B4()
{
  auto c = Carrier::make(2);
  return detail::generated("B4", "the four-element Boolean algebra", 2,
                           {{"a", detail::pf(c, {{0, 0}})},
                            {"b", detail::pf(c, {{1, 1}})},
                            {"ab", detail::pf(c, {{0, 0}, {1, 1}})}});
}

inline Fixture A4f()
{
  auto c = Carrier::make(2);
  return detail::generated("A4f", "three singleton maps on two points", 2,
                           {{"f", detail::pf(c, {{0, 0}})},
                            {"g", detail::pf(c, {{0, 1}})},
                            {"h", detail::pf(c, {{1, 1}})}});
}

inline Fixture PF2()
{
  auto c = Carrier::make(2);
  return detail::build("PF2", "all partial functions on two points", ConcretePFAlgebra(c, enumerate_all_pfs(c)),
                       {});
}

/// Closed under converse; converse breaks compatibility here.
inline Fixture converse_witness()
{
  auto c = Carrier::make(2);
  return detail::generated("CONV", "injective maps closed under converse", 2,
                           {{"f", detail::pf(c, {{0, 0}})}, {"g", detail::pf(c, {{1, 0}})}},
                           {PfOp::Difference, PfOp::Restrict, PfOp::Converse});
}

/// A3c with rest(a, b) = a; violates Ax.4.
inline Fixture A3c_mutant()
{
  Fixture f = A3c();
  const FiniteAlgebra &A = *f.algebra;
  std::size_t a = *A.index_of("a"), b = *A.index_of("b");
  auto rest = A.rest_table().entries();
  rest[a * A.size() + b] = a;
  f.name = "A3c_mutant";
  f.description = "A3c with a corrupted restriction table";
  f.algebra = share(FiniteAlgebra(A.names(), A.minus_table(), OpTable(2, A.size(), rest), A.extras()));
  f.concrete.reset();
  return f;
}

/// The valid fixtures used for the duality checks.
inline std::vector<Fixture> abstract_fixtures() { return {T1(), A1(), A3c(), A3i(), B4(), A4f(), PF2()}; }

/// Fixtures carrying extra operations that preserve compatibility.
inline std::vector<Fixture> operator_fixtures()
{
  std::vector<Fixture> out;
  for (Fixture f : {A3c(), A3i(), B4(), A4f(), PF2()}) {
    f.algebra = share(f.algebra->with_extra("domain", concrete_table(*f.concrete, PfOp::Domain)));
    f.name += "+domain";
    out.push_back(std::move(f));
  }
  // Unary sections x ↦ s∘x and x ↦ x∘s.
  for (Fixture f : {PF2(), A4f()}) {
    if (!f.concrete->closed_under(PfOp::Compose))
      continue;
    const auto &P = *f.concrete;
    std::map<std::string, OpTable> ex;
    for (std::size_t s = 0; s < P.size(); ++s) {
      if (P.elements()[s].empty())
        continue;
      auto section = [&](bool left) {
        return OpTable::tabulate(1, P.size(), [&](std::span<const std::size_t> x) {
          const auto &g = P.elements()[x[0]];
          return *P.index_of(left ? pf_compose(P.elements()[s], g) : pf_compose(g, P.elements()[s]));
        });
      };
      ex["comp_l" + std::to_string(s)] = section(true);
      ex["comp_r" + std::to_string(s)] = section(false);
    }
    f.algebra = share(f.algebra->with_extras(std::move(ex)));
    f.name += "+sections";
    out.push_back(std::move(f));
  }
  return out;
}

/// All named fixtures, including the mutant.
inline std::vector<Fixture> catalog()
{
  auto out = abstract_fixtures();
  out.push_back(converse_witness());
  out.push_back(A3c_mutant());
  return out;
}

inline std::optional<Fixture> by_name(const std::string &name)
{
  for (auto &f : catalog())
    if (f.name == name)
      return f;
  return std::nullopt;
}

/// Maps each element of `from` to the same partial function in `to`.
inline AlgebraMap inclusion(const Fixture &from, const Fixture &to)
{
  std::vector<std::size_t> t;
  for (const auto &f : from.concrete->elements()) {
    PartialFunction g(to.concrete->carrier(), f.image());
    auto k = to.concrete->index_of(g);
    if (!k)
      throw InputError("inclusion: " + f.str() + " is not in " + to.name);
    t.push_back(*k);
  }
  return AlgebraMap(from.algebra, to.algebra, std::move(t));
}

inline AlgebraMap swap(const Fixture &f, const std::string &x, const std::string &y)
{
  AlgebraMap m = AlgebraMap::identity(f.algebra);
  std::size_t i = *f.algebra->index_of(x), j = *f.algebra->index_of(y);
  std::swap(m.table[i], m.table[j]);
  return m;
}

struct NamedHom
{
  std::string name;
  AlgebraMap map;
};

/// Identities, constant-bottom maps, inclusions and swaps between fixtures.
inline std::vector<NamedHom> fixture_homs()
{
  auto T = T1(), a3c = A3c(), a3i = A3i(), b4 = B4(), a4f = A4f(), a1 = A1(), pf2 = PF2();
  std::vector<NamedHom> out;
  for (const auto &f : abstract_fixtures())
    out.push_back({"id_" + f.name, AlgebraMap::identity(f.algebra)});
  out.push_back({"bot_A3c_A1", AlgebraMap::constant_bottom(a3c.algebra, a1.algebra)});
  out.push_back({"bot_B4_A3i", AlgebraMap::constant_bottom(b4.algebra, a3i.algebra)});
  // T1 lives on one point; its only element is the bottom.
  out.push_back({"T1_A3c", AlgebraMap::constant_bottom(T.algebra, a3c.algebra)});
  out.push_back({"A3c_B4", inclusion(a3c, b4)});
  out.push_back({"A3i_A4f", inclusion(a3i, a4f)});
  out.push_back({"A3c_A4f", inclusion(a3c, a4f)});
  out.push_back({"A4f_PF2", inclusion(a4f, pf2)});
  out.push_back({"swap_A3c", swap(a3c, "a", "b")});
  out.push_back({"swap_A3i", swap(a3i, "f", "g")});
  return out;
}

} // namespace dra::fixtures

#endif // DRA_FIXTURES_HPP
