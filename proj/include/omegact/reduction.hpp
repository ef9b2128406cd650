#pragma once

// Context-free grammars, their categorial type lexicons and the totality
// sequent built from a family of grammars.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "omegact/automata.hpp"
#include "omegact/prover.hpp"
#include "omegact/sequent.hpp"

namespace omegact
{
  struct Production
  {
    std::string lhs;
    std::vector<std::string> rhs;  // empty for an epsilon rule

    friend bool operator==(const Production&, const Production&) = default;
    friend auto operator<=>(const Production&, const Production&) = default;
  };

  struct Cfg
  {
    std::vector<std::string> nonterminals;  // start symbol first
    Alphabet terminals;
    std::vector<Production> productions;
    std::string start;

    bool is_terminal(const std::string& sym) const;
    std::vector<const Production*> rules_of(const std::string& nt) const;
    /// One line per nonterminal in the input format.
    std::string str() const;
  };

  /// Lines `A -> x y | z`.  Terminals are lowercase letters, nonterminals
  /// start with an uppercase letter and may continue with digits, `_` or
  /// `'`.  Symbols may be written without spaces (`aSb`).  `eps`, `ε` or an
  /// empty alternative is the empty word.  Blank lines and `#` comments are
  /// skipped.  The first left side is the start symbol.
  Cfg parse_cfg(std::string_view text, const Alphabet& terminals = {"a", "b"});

  /// Checks the declared-symbol invariants; throws Error.
  void validate(const Cfg& g);

  /// Nonterminals deriving the empty word.
  std::vector<std::string> nullable(const Cfg& g);

  /// Equivalent grammar whose rules are A -> c, A -> c B or A -> c B C.
  /// Throws Error when the empty word is in L(g).
  Cfg to_gnf(const Cfg& g);

  bool is_gnf2(const Cfg& g);

  bool cyk_membership(const Cfg& g, const Word& w);

  struct TypeLexicon
  {
    std::size_t index = 0;
    std::map<std::string, std::vector<Formula>> types;  // terminal -> T(c)
    Formula start = Formula::var("s");

    const std::vector<Formula>& of(const std::string& terminal) const;
  };

  /// Variable of nonterminal `nt` in the lexicon of grammar `index`.
  std::string lexicon_var(const std::string& nt, std::size_t index);

  /// A -> c gives A, A -> c B gives A/B, A -> c B C gives (A/C)/B, all
  /// assigned to c.  Throws Error on input that is not in 2-GNF.
  TypeLexicon cfg_to_lambek(const Cfg& g, std::size_t index);

  /// p, p/q or (p/q)/r with p, q, r variables.
  bool is_lexicon_shape(const Formula& f);

  struct EncodingDisagreement
  {
    Word word;
    bool in_grammar = false;
    bool provable = false;
  };

  struct EncodingReport
  {
    std::size_t words = 0;  // words checked
    std::vector<EncodingDisagreement> disagreements;  // by length, then lexicographic

    bool ok() const { return disagreements.empty(); }
    std::string str() const;
  };

  /// Compares cyk_membership(g, w) with provability of T(w_1), ..., T(w_n) |- s
  /// for some type choice, for every word over g's terminals with
  /// 1 <= |w| <= max_len.  The empty word is skipped: no type sequence
  /// encodes it.
  EncodingReport verify_encoding(const Cfg& g, std::size_t max_len);

  /// Same, with a given lexicon (which may be broken on purpose).
  EncodingReport verify_lexicon(const Cfg& g, const TypeLexicon& lex, std::size_t max_len);

  /// Provability of the type sequent for w under some choice of types.
  bool lexicon_accepts(const TypeLexicon& lex, const Word& w, const SearchOptions& opts = {});

  /// ( /\_{i,j} T_ij(a) \/ /\_{i,j} T_ij(b) )^w |- \/_i ( s_{2i-1} . s_{2i}^w ).
  /// Conjunctions run over grammars in order and then over each lexicon
  /// list in order; all binary connectives nest to the right.
  Sequent build_totality_sequent(const std::vector<Cfg>& grammars);

  struct CfOmegaWitness
  {
    std::size_t head = 0;             // |w[0, n_0)|
    std::vector<std::size_t> stem;    // segment lengths before the loop
    std::vector<std::size_t> loop;    // segment lengths repeated forever

    std::string str() const;
  };

  /// Semi-decision of w in L(head) . L(loop)^w with every segment boundary
  /// of the witness at most `bound`.  The repeated part starts and ends at
  /// positions past the prefix that agree modulo the period.  Nullopt means
  /// Unknown.  Every segment of a witness passed cyk_membership.
  std::optional<CfOmegaWitness> up_word_in_cf_omega(const LassoWord& w, const Cfg& head, const Cfg& loop,
                                                    std::size_t bound);
}
