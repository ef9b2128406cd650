#pragma once

// Helpers over lasso words shared by the word prover and the sampled
// semantics.  Positions of u(v)^w are folded onto |u| + |v| canonical ones.

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "omegact/automata.hpp"
#include "omegact/error.hpp"
#include "omegact/sequent.hpp"

namespace omegact::detail
{
  inline std::size_t canon(const LassoWord& t, std::size_t p)
  {
    const std::size_t u = t.prefix().size();
    return p < u ? p : u + (p - u) % t.period().size();
  }

  /// The suffix of t from position k.
  LassoWord shift(const LassoWord& t, std::size_t k);

  /// Letters t[p, p + n).
  Word slice(const LassoWord& t, std::size_t p, std::size_t n);

  /// Names of a type-1/type-2 antecedent made of star variables.
  Word letters_of(const std::vector<Formula>& items);
  LassoWord lasso_of(const Antecedent& a);

  /// Lengths of the nonempty blocks starting at position p.  Every canonical
  /// end position reachable by some block must be represented.
  using BlockFn = std::function<std::vector<std::size_t>(std::size_t p)>;

  /// A cut of t into blocks accepted by `blocks` that is periodic from some
  /// point on: (prefix block lengths, period block lengths).  The period
  /// lengths sum to a multiple of |v|.
  std::optional<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>>
  periodic_cut(const LassoWord& t, const BlockFn& blocks);

  /// BlockFn for "t[p, p+n) in L(nfa), n >= 1", by subset simulation until
  /// a (subset, canonical position) pair repeats.
  BlockFn nfa_blocks(const LassoWord& t, const Nfa& nfa);
}
