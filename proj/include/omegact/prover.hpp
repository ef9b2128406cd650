#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "omegact/automata.hpp"
#include "omegact/proof.hpp"

namespace omegact
{
  struct Decision
  {
    bool provable = false;
    std::optional<LassoWord> counterexample;  // omega-sorted case
    std::optional<Word> finite_counterexample;  // star-sorted case
    std::size_t explored = 0;
  };

  /// alpha |- beta for omega-regular expressions, decided by language
  /// inclusion.  Both sides must have the same sort; star-sorted pairs go
  /// through finite automata.
  Decision decide_omega_regular(const OmegaRegex& alpha, const OmegaRegex& beta);

  class NotMember : public Error
  {
  public:
    using Error::Error;
  };

  /// The type-2 sequent whose antecedent spells out w letter by letter.
  Sequent word_sequent(const LassoWord& w, const Formula& beta);

  /// Right-rules-only certificate of word_sequent(w, beta).
  /// Throws NotMember when w is not in L(beta).
  ProofPtr prove_word_sequent(const LassoWord& w, const OmegaRegex& beta);

  /// Same for a finite word against a star-sorted expression (type 1).
  ProofPtr prove_finite_word_sequent(const Word& w, const OmegaRegex& f);

  struct SearchOptions
  {
    std::size_t schema_bound = default_schema_bound();
    /// Upper limit on the total period-block length of a periodic split,
    /// raised to the antecedent's period when that is longer.
    std::size_t max_period = 4;
    /// Left-rule steps inside one vdash derivation.
    std::size_t vdash_depth = 3;
    /// Hypothesis-set combinations tried per periodic split.
    std::size_t max_combinations = 256;
  };

  struct SearchResult
  {
    bool found = false;
    ProofPtr proof;
    std::size_t depth = 0;
    std::size_t explored = 0;  // distinct (sequent, depth) attempts

    /// `Found` or `NotFoundWithin(d)`.
    std::string str() const;
  };

  /// Depth-bounded backward proof search.  Failure is only relative to the
  /// bound.  Proofs through StarL list their instances 0..schema_bound.
  SearchResult bounded_search(const Sequent& s, std::size_t depth, const SearchOptions& opts = {});

  /// Several searches sharing one memo table; results are the same as
  /// with separate bounded_search calls.
  class SearchSession
  {
  public:
    explicit SearchSession(const SearchOptions& opts = {});
    ~SearchSession();
    SearchSession(const SearchSession&) = delete;
    SearchSession& operator=(const SearchSession&) = delete;

    SearchResult search(const Sequent& s, std::size_t depth);

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
  };

  /// Height of a certificate: nodes on the longest premise path, schema
  /// instances included, vdash derivations not.
  std::size_t proof_height(const ProofNode& p);

  // ---------------------------------------------------------------------
  // Sampled language semantics.

  /// Star-sorted variables denote finite sets of nonempty finite words.
  struct Interpretation
  {
    std::map<std::string, std::set<Word>> star;
  };

  /// p -> {p} for every star variable of the sequent.
  Interpretation singleton_interpretation(const Sequent& s);

  /// Searches lassos u(v)^w with |u|, |v| <= max_lasso over `letters` for a
  /// word denoted by the antecedent but not by the succedent.  Star-sorted
  /// values are cut at `max_len` letters; residuals quantify over the words
  /// and lassos of that size.  Types 2 and 3 only.
  std::optional<LassoWord> semantic_counter_witness(const Sequent& s, const Interpretation& interp,
                                                    const Alphabet& letters, std::size_t max_lasso = 3,
                                                    std::size_t max_len = 8);

  /// Type-1 analogue: a finite word in the antecedent's product but not in
  /// the succedent.
  std::optional<Word> finite_counter_witness(const Sequent& s, const Interpretation& interp, const Alphabet& letters,
                                             std::size_t max_len = 8);
}
