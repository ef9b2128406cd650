#pragma once

// Reference semantics computed by brute force, independent of the library's
// automata and matchers.

#include <string>
#include <vector>

#include "omegact/formula.hpp"

namespace omegact::testing
{
  using Letters = std::vector<std::string>;

  /// w[i, j) in L(f) for a finitary regex, by trying every split.
  inline bool matches(const Formula& f, const Letters& w, std::size_t i, std::size_t j)
  {
    switch (f.kind()) {
    case Kind::VarStar: return j == i + 1 && w[i] == f.name();
    case Kind::Join: return matches(f.left(), w, i, j) || matches(f.right(), w, i, j);
    case Kind::Prod:
      for (std::size_t k = i; k <= j; ++k)
        if (matches(f.left(), w, i, k) && matches(f.right(), w, k, j))
          return true;
      return false;
    case Kind::Star:
      if (i == j)
        return true;
      for (std::size_t k = i + 1; k <= j; ++k)
        if (matches(f.operand(), w, i, k) && matches(f, w, k, j))
          return true;
      return false;
    default: return false;
    }
  }

  inline bool matches(const Formula& f, const Letters& w) { return matches(f, w, 0, w.size()); }

  /// All words over `letters` of length min..max.
  inline std::vector<Letters> all_words(const Letters& letters, std::size_t min, std::size_t max)
  {
    std::vector<Letters> out;
    std::vector<Letters> layer{{}};
    for (std::size_t n = 0; n <= max; ++n) {
      if (n >= min)
        out.insert(out.end(), layer.begin(), layer.end());
      std::vector<Letters> next;
      for (const auto& w : layer)
        for (const auto& x : letters) {
          next.push_back(w);
          next.back().push_back(x);
        }
      layer.swap(next);
    }
    return out;
  }
}
