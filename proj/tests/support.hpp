#ifndef DRA_TESTS_SUPPORT_HPP
#define DRA_TESTS_SUPPORT_HPP

#include <set>
#include <string>
#include <vector>

#include "dra/dra.hpp"
#include "oracle.hpp"

namespace support {

inline dra::PartialFunction to_pf(const dra::CarrierPtr &c, const oracle::Graph &g)
{
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (auto [x, y] : g)
    pairs.emplace_back(static_cast<std::size_t>(x), static_cast<std::size_t>(y));
  return dra::PartialFunction::from_pairs(c, pairs);
}

inline oracle::Graph to_graph(const dra::PartialFunction &f)
{
  oracle::Graph g;
  for (auto [x, y] : f.graph())
    g.emplace(static_cast<int>(x), static_cast<int>(y));
  return g;
}

inline std::set<oracle::Graph> graphs(const dra::ConcretePFAlgebra &P)
{
  std::set<oracle::Graph> s;
  for (const auto &f : P.elements())
    s.insert(to_graph(f));
  return s;
}

inline dra::FiniteAlgebra element_names_only(const dra::FiniteAlgebra &A) { return A.with_extras({}); }

} // namespace support

#endif // DRA_TESTS_SUPPORT_HPP
