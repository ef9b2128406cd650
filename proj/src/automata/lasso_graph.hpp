#pragma once

// Explicit labeled graphs with generalized Büchi marks and accepting-lasso
// search.  Every emptiness-style question in the library ends up here.

#include <cstddef>
#include <optional>
#include <vector>

#include "omegact/automata.hpp"

namespace omegact::detail
{
  struct Edge
  {
    Letter letter;
    std::size_t dst;
  };

  struct LassoGraph
  {
    std::vector<std::vector<Edge>> out;
    std::vector<unsigned> marks;
    std::vector<std::size_t> initial;

    std::size_t add_node(unsigned mark)
    {
      out.emplace_back();
      marks.push_back(mark);
      return out.size() - 1;
    }
    std::size_t size() const { return out.size(); }
  };

  struct LassoPath
  {
    std::vector<Letter> stem;
    std::vector<Letter> loop;
  };

  /// A path from an initial node into a cycle that visits, for every bit of
  /// `required`, a node carrying that bit.  Deterministic for a given graph.
  std::optional<LassoPath> find_accepting_lasso(const LassoGraph& g, unsigned required);

  LassoWord to_lasso(const LassoPath& p, const Alphabet& sigma);
}
