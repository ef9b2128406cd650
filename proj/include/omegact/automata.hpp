#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "omegact/formula.hpp"
#include "omegact/sequent.hpp"

namespace omegact
{
  using State = std::size_t;
  using Letter = std::size_t;
  /// Sorted, duplicate-free list of letter names; a letter is its index.
  using Alphabet = std::vector<std::string>;
  using Word = std::vector<std::string>;

  Alphabet unite(const Alphabet& a, const Alphabet& b);

  /// A formula of the omega-regular fragment: star-sorted variables,
  /// `.`, `|`, `*`, `^w`.
  class OmegaRegex
  {
  public:
    /// Throws Error when `f` uses residuals, meets or omega variables.
    explicit OmegaRegex(Formula f);

    /// Nullopt instead of throwing.
    static std::optional<OmegaRegex> from(const Formula& f);

    const Formula& formula() const { return f_; }
    Sort sort() const { return f_.sort(); }
    Alphabet alphabet() const;
    std::string str() const { return f_.str(); }

  private:
    Formula f_;
  };

  /// Transition structure shared by finite-word and Büchi automata.
  /// `marked` means final (Nfa) or accepting (BuchiAutomaton).
  class Automaton
  {
  public:
    explicit Automaton(Alphabet sigma = {});

    const Alphabet& alphabet() const { return sigma_; }
    std::size_t num_states() const { return initial_.size(); }
    std::size_t num_transitions() const;
    std::optional<Letter> letter(const std::string& name) const;

    State add_state(bool initial = false, bool marked = false);
    void add_transition(State src, Letter a, State dst);
    void set_initial(State q, bool on = true) { initial_.at(q) = on; }
    void set_marked(State q, bool on = true) { marked_.at(q) = on; }

    bool is_initial(State q) const { return initial_[q]; }
    bool is_marked(State q) const { return marked_[q]; }
    std::vector<State> initial_states() const;
    const std::vector<State>& successors(State q, Letter a) const { return delta_[q][a]; }

  protected:
    /// Copy of the automaton over a larger alphabet.
    void extend_alphabet_into(Automaton& out, const Alphabet& sigma) const;
    /// Keep only the listed states (renumbered in order).
    void restrict_into(Automaton& out, const std::vector<bool>& keep) const;

    Alphabet sigma_;
    std::vector<std::vector<std::vector<State>>> delta_;
    std::vector<bool> initial_;
    std::vector<bool> marked_;
  };

  class Nfa : public Automaton
  {
  public:
    using Automaton::Automaton;

    bool is_final(State q) const { return is_marked(q); }
    bool accepts(const Word& w) const;
    bool accepts_empty() const;
    Nfa over(const Alphabet& sigma) const;
    /// Drop states that are unreachable or cannot reach a final state.
    Nfa trimmed() const;
  };

  class BuchiAutomaton : public Automaton
  {
  public:
    using Automaton::Automaton;

    bool is_accepting(State q) const { return is_marked(q); }
    BuchiAutomaton over(const Alphabet& sigma) const;
    /// Drop states that are unreachable or from which no accepting cycle is reachable.
    BuchiAutomaton trimmed() const;
  };

  /// `buchi <#states> <alphabet>`, one `src letter dst` line per transition,
  /// then `init: ...` and `acc: ...`.
  std::string dump(const BuchiAutomaton& b);

  /// Thompson construction followed by epsilon removal and trimming.
  /// The alphabet is the regex's letters united with `extra`.
  Nfa regex_to_nfa(const OmegaRegex& e, const Alphabet& extra = {});

  /// Compositional: omega(F) loops back over the final states of an
  /// epsilon-free automaton for F, prod(F, W) concatenates, join unites.
  /// When some omega(F) has L(F) contained in {epsilon} the result for that
  /// subterm is empty; a note is appended to `notes` if given.
  BuchiAutomaton omega_regex_to_buchi(const OmegaRegex& e, const Alphabet& extra = {},
                                      std::vector<std::string>* notes = nullptr);

  struct ComplementResult
  {
    BuchiAutomaton automaton;
    std::size_t macrostates = 0;
    /// Size of the construction's full macrostate space for the input.
    long double theoretical_bound = 0;
  };

  /// Rank-based complementation (tight level rankings with a breakpoint).
  ComplementResult buchi_complement(const BuchiAutomaton& b);

  /// Nullopt when L(b) is empty, otherwise an accepted lasso.
  std::optional<LassoWord> buchi_emptiness(const BuchiAutomaton& b);

  /// Product automaton over the union of both alphabets.
  BuchiAutomaton buchi_intersection(const BuchiAutomaton& a, const BuchiAutomaton& b);

  struct InclusionResult
  {
    bool holds = false;
    std::optional<LassoWord> counterexample;  // in L(A) \ L(B)
    std::size_t explored = 0;                 // product states or monoid elements
  };

  /// L(a) subset of L(b), by emptiness of a x complement(b) built on the fly
  /// with the rank-based construction.  Alphabets are united first.
  InclusionResult buchi_inclusion(const BuchiAutomaton& a, const BuchiAutomaton& b);

  /// The same question answered through the transition-profile monoid
  /// (Ramsey-based); shares no code with the rank-based route.
  InclusionResult buchi_inclusion_ramsey(const BuchiAutomaton& a, const BuchiAutomaton& b);

  bool up_word_in_buchi(const LassoWord& w, const BuchiAutomaton& b);

  /// Automaton-free membership by structural recursion over the expression,
  /// tracking positions modulo the lasso's loop.
  bool up_word_in_omega_regex(const LassoWord& w, const OmegaRegex& e);

  /// Nullopt when L(a) is contained in L(b); otherwise a word in L(a) \ L(b).
  std::optional<Word> nfa_inclusion(const Nfa& a, const Nfa& b);
}
