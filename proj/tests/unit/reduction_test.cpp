#include <doctest.h>

#include <algorithm>
#include <set>

#include "omegact/error.hpp"
#include "omegact/parse.hpp"
#include "omegact/reduction.hpp"
#include "support/generators.hpp"

using namespace omegact;
using namespace omegact::testing;

namespace
{
  Word w(const std::string& s)
  {
    Word out;
    for (char c : s)
      out.push_back(std::string(1, c));
    return out;
  }

  std::set<std::string> type_strs(const TypeLexicon& lex, const std::string& c)
  {
    std::set<std::string> out;
    for (const Formula& f : lex.of(c))
      out.insert(f.str());
    return out;
  }

  std::vector<Word> all_words(std::size_t max_len)
  {
    std::vector<Word> out{Word{}};
    for (std::size_t i = 0; i < out.size(); ++i)
      if (out[i].size() < max_len)
        for (const char* c : {"a", "b"}) {
          Word x = out[i];
          x.push_back(c);
          out.push_back(x);
        }
    return out;
  }

  /// Nonterminals S, A, B; bodies of length 1 are terminals, so there are no
  /// unit or epsilon rules.
  Cfg random_cfg(Rng& rng)
  {
    const std::vector<std::string> nts = {"S", "A", "B"};
    const std::vector<std::string> syms = {"a", "b", "S", "A", "B"};
    Cfg g;
    g.nonterminals = nts;
    g.terminals = {"a", "b"};
    g.start = "S";
    for (const auto& nt : nts) {
      const std::size_t k = 1 + pick(rng, 3);
      for (std::size_t i = 0; i < k; ++i) {
        Production p{nt, {}};
        const std::size_t len = 1 + pick(rng, 3);
        for (std::size_t j = 0; j < len; ++j)
          p.rhs.push_back(len == 1 ? syms[pick(rng, 2)] : syms[pick(rng, syms.size())]);
        g.productions.push_back(p);
      }
    }
    return g;
  }

  /// Words of length <= max_len with a leftmost derivation of <= steps rules.
  std::set<Word> derivable(const Cfg& g, std::size_t max_len, std::size_t steps)
  {
    std::set<Word> out;
    std::set<Word> seen;
    std::vector<Word> layer{{g.start}};
    for (std::size_t d = 0; d <= steps && !layer.empty(); ++d) {
      std::vector<Word> next;
      for (const Word& f : layer) {
        auto it = std::find_if(f.begin(), f.end(), [&](const std::string& s) { return !g.is_terminal(s); });
        if (it == f.end()) {
          out.insert(f);
          continue;
        }
        const std::size_t at = static_cast<std::size_t>(it - f.begin());
        for (const Production* p : g.rules_of(*it)) {
          Word x(f.begin(), f.begin() + static_cast<long>(at));
          x.insert(x.end(), p->rhs.begin(), p->rhs.end());
          x.insert(x.end(), f.begin() + static_cast<long>(at) + 1, f.end());
          if (x.size() <= max_len && seen.insert(x).second)
            next.push_back(x);
        }
      }
      layer.swap(next);
    }
    return out;
  }

  void collect(const Formula& f, std::set<std::string>& vars)
  {
    std::set<std::string> omega;
    f.collect_vars(vars, omega);
  }
}

TEST_CASE("parse_cfg: examples")
{
  const Cfg g = parse_cfg("S -> a S b | a b");
  CHECK(g.start == "S");
  CHECK(g.productions.size() == 2);
  CHECK(g.productions[0].rhs == Word{"a", "S", "b"});

  const Cfg h = parse_cfg("S -> a | b");
  CHECK(h.terminals == Alphabet{"a", "b"});
  CHECK(h.productions.size() == 2);

  const Cfg packed = parse_cfg("# comment\nS -> aSb | ab\n\nS -> X1\nX1 -> a | eps");
  CHECK(packed.productions.size() == 5);
  CHECK(packed.productions[0].rhs == Word{"a", "S", "b"});
  CHECK(packed.productions.back().rhs.empty());
  CHECK(packed.nonterminals == std::vector<std::string>{"S", "X1"});

  CHECK_THROWS_WITH_AS(parse_cfg("S -> a X"), doctest::Contains("X"), Error);
  CHECK_THROWS_AS(parse_cfg(""), Error);
  CHECK_THROWS_AS(parse_cfg("# only a comment\n"), Error);
  CHECK_THROWS_AS(parse_cfg("S -> a c"), Error);
  CHECK_THROWS_AS(parse_cfg("S a b"), Error);
  CHECK_THROWS_AS(parse_cfg("a -> b"), Error);
}

TEST_CASE("to_gnf: examples")
{
  const Cfg g = to_gnf(parse_cfg("S -> a S b | a b"));
  CHECK(g.str() == "S -> a B | a S B\nB -> b\n");
  CHECK(is_gnf2(g));

  const Cfg one = to_gnf(parse_cfg("S -> a"));
  CHECK(one.str() == "S -> a\n");

  CHECK_THROWS_WITH_AS(to_gnf(parse_cfg("S -> eps")), doctest::Contains("empty word"), Error);
  CHECK_THROWS_AS(to_gnf(parse_cfg("S -> a S | A\nA -> eps")), Error);

  // Left recursion, nullable helpers and long bodies.
  for (const char* text : {"S -> S a | b", "S -> a X\nX -> b X | eps", "S -> a S b S | a b S | a S b | a b",
                           "S -> S S | a | b S a", "S -> A B A B\nA -> a | A A\nB -> b"}) {
    CAPTURE(text);
    const Cfg src = parse_cfg(text);
    const Cfg gnf = to_gnf(src);
    CHECK(is_gnf2(gnf));
    for (const Word& x : all_words(7))
      CHECK(cyk_membership(src, x) == cyk_membership(gnf, x));
  }
}

TEST_CASE("to_gnf: random grammars keep their language")
{
  Rng rng(41);
  for (int i = 0; i < 30; ++i) {
    const Cfg g = random_cfg(rng);
    CAPTURE(g.str());
    const Cfg gnf = to_gnf(g);
    CHECK(is_gnf2(gnf));
    for (const Word& x : all_words(8))
      CHECK(cyk_membership(g, x) == cyk_membership(gnf, x));
  }
}

TEST_CASE("cyk: examples")
{
  const Cfg g = parse_cfg("S -> a S b | a b");
  CHECK(cyk_membership(g, w("aabb")));
  CHECK_FALSE(cyk_membership(g, w("abab")));
  CHECK_FALSE(cyk_membership(g, {}));
  CHECK(cyk_membership(parse_cfg("S -> a S | eps"), {}));
  CHECK(cyk_membership(parse_cfg("S -> a S | eps"), w("aaa")));
  CHECK_FALSE(cyk_membership(parse_cfg("S -> a S | eps"), w("ab")));
}

TEST_CASE("cyk: agrees with derivation enumeration")
{
  Rng rng(7);
  for (int i = 0; i < 40; ++i) {
    const Cfg g = random_cfg(rng);
    CAPTURE(g.str());
    const std::set<Word> lang = derivable(g, 5, 10);
    for (const Word& x : all_words(5))
      CHECK(cyk_membership(g, x) == (lang.count(x) > 0));
  }
}

TEST_CASE("cfg_to_lambek: examples and shapes")
{
  const TypeLexicon lex = cfg_to_lambek(to_gnf(parse_cfg("S -> a S b | a b")), 1);
  CHECK(type_strs(lex, "a") == std::set<std::string>{"S_1 / B_1", "S_1 / B_1 / S_1"});
  CHECK(type_strs(lex, "b") == std::set<std::string>{"B_1"});
  CHECK(lex.start == Formula::var("S_1"));

  const TypeLexicon one = cfg_to_lambek(to_gnf(parse_cfg("S -> a")), 1);
  CHECK(type_strs(one, "a") == std::set<std::string>{"S_1"});
  CHECK(one.of("b").empty());

  const TypeLexicon l1 = cfg_to_lambek(to_gnf(parse_cfg("S -> a S | b")), 1);
  const TypeLexicon l2 = cfg_to_lambek(to_gnf(parse_cfg("S -> b S | a")), 2);
  std::set<std::string> v1, v2;
  for (const auto& [c, ts] : l1.types)
    for (const Formula& t : ts)
      collect(t, v1);
  for (const auto& [c, ts] : l2.types)
    for (const Formula& t : ts)
      collect(t, v2);
  CHECK(v1.count("S_1"));
  CHECK(v2.count("S_2"));
  for (const auto& x : v1)
    CHECK_FALSE(v2.count(x));

  CHECK_THROWS_AS(cfg_to_lambek(parse_cfg("S -> S a | b"), 1), Error);

  Rng rng(9);
  for (int i = 0; i < 30; ++i) {
    const TypeLexicon l = cfg_to_lambek(to_gnf(random_cfg(rng)), 3);
    for (const auto& [c, ts] : l.types)
      for (const Formula& t : ts) {
        CAPTURE(t.str());
        CHECK(is_lexicon_shape(t));
      }
  }
  CHECK_FALSE(is_lexicon_shape(parse_formula("p / (q / r)")));
  CHECK_FALSE(is_lexicon_shape(parse_formula("p . q")));
  CHECK(is_lexicon_shape(parse_formula("(p / q) / r")));
}

TEST_CASE("verify_encoding: examples")
{
  const Cfg g = parse_cfg("S -> a S b | a b");
  const EncodingReport r = verify_encoding(g, 6);
  CHECK(r.words == 126);
  CHECK_MESSAGE(r.ok(), r.str());
  const TypeLexicon lex = cfg_to_lambek(to_gnf(g), 1);
  CHECK(lexicon_accepts(lex, w("ab")));
  CHECK(lexicon_accepts(lex, w("aabb")));
  CHECK_FALSE(lexicon_accepts(lex, w("ba")));
  CHECK_FALSE(lexicon_accepts(lex, w("aab")));

  const Cfg a = parse_cfg("S -> a");
  const EncodingReport ra = verify_encoding(a, 2);
  CHECK(ra.words == 6);
  CHECK(ra.ok());
  CHECK(lexicon_accepts(cfg_to_lambek(to_gnf(a), 1), w("a")));

  // Dropping a type breaks the encoding.
  TypeLexicon broken = lex;
  auto& ta = broken.types["a"];
  ta.erase(std::find(ta.begin(), ta.end(), parse_formula("S_1 / B_1")));
  const EncodingReport rb = verify_lexicon(g, broken, 4);
  REQUIRE_FALSE(rb.ok());
  CHECK(rb.disagreements[0].word == w("ab"));
  CHECK(rb.disagreements[0].in_grammar);
  CHECK_FALSE(rb.disagreements[0].provable);
  CHECK(rb.str().find("ab: grammar yes, types no") != std::string::npos);

  CHECK_THROWS_AS(verify_encoding(g, 0), Error);
}

TEST_CASE("verify_encoding: grammar suite")
{
  for (const char* text : {"S -> a S | b S | a", "S -> a b | b a | a a b", "S -> a S b S | a b S | a S b | a b",
                           "S -> S a | b", "S -> a X\nX -> b X | eps"}) {
    CAPTURE(text);
    const EncodingReport r = verify_encoding(parse_cfg(text), 5);
    CHECK_MESSAGE(r.ok(), r.str());
  }
}

TEST_CASE("build_totality_sequent")
{
  const Sequent s = build_totality_sequent({parse_cfg("S -> a"), parse_cfg("T -> b")});
  CHECK(s.str() == "(S_1 | T_2)^w |- S_1 . T_2^w");
  CHECK(parse_sequent(s.str()) == s);
  REQUIRE(s.antecedent().items().size() == 1);
  CHECK(s.antecedent().items()[0].kind() == Kind::Omega);

  const Sequent big = build_totality_sequent({parse_cfg("S -> a S | b"), parse_cfg("S -> a S b | a b"),
                                              parse_cfg("S -> b | a"), parse_cfg("S -> b S | a")});
  CHECK(parse_sequent(big.str()) == big);
  const Formula& body = big.antecedent().items()[0].operand();
  REQUIRE(body.kind() == Kind::Join);
  // Meets nest to the right, grammar-major.
  CHECK(body.left().left() == parse_formula("S_1 / S_1"));
  CHECK(big.succedent() == parse_formula("S_1 . S_2^w | S_3 . S_4^w"));
  std::set<std::string> vars, omega;
  big.antecedent().items()[0].collect_vars(vars, omega);
  for (const auto& v : vars)
    CHECK((v.ends_with("_1") || v.ends_with("_2") || v.ends_with("_3") || v.ends_with("_4")));

  CHECK_THROWS_AS(build_totality_sequent({}), Error);
  CHECK_THROWS_AS(build_totality_sequent({parse_cfg("S -> a")}), Error);
  CHECK_THROWS_AS(build_totality_sequent({parse_cfg("S -> a | eps"), parse_cfg("T -> b")}), Error);
  CHECK_THROWS_AS(build_totality_sequent({parse_cfg("S -> a"), parse_cfg("T -> a")}), Error);
}

TEST_CASE("up_word_in_cf_omega: examples")
{
  const Cfg sa = parse_cfg("S -> a");
  const Cfg tb = parse_cfg("T -> b");
  auto yes = up_word_in_cf_omega(LassoWord({"a"}, {"b"}), sa, tb, 10);
  REQUIRE(yes);
  CHECK(yes->head == 1);
  CHECK(yes->stem.empty());
  CHECK(yes->loop == std::vector<std::size_t>{1});

  for (std::size_t bound : {1, 5, 20})
    CHECK_FALSE(up_word_in_cf_omega(LassoWord({}, {"a"}), sa, tb, bound));

  auto ab = up_word_in_cf_omega(LassoWord({"a", "b"}, {"a", "b"}), parse_cfg("S -> a b"), parse_cfg("T -> a b"), 8);
  REQUIRE(ab);
  CHECK(ab->head == 2);
  CHECK(ab->loop == std::vector<std::size_t>{2});

  CHECK_THROWS_AS(up_word_in_cf_omega(LassoWord({}, {"a"}), parse_cfg("S -> a | eps"), tb, 4), Error);
}

TEST_CASE("up_word_in_cf_omega: witnesses re-verify")
{
  Rng rng(19);
  int yes = 0;
  for (int i = 0; i < 60; ++i) {
    const Cfg head = random_cfg(rng);
    const Cfg loop = random_cfg(rng);
    const LassoWord t = random_lasso(rng, 3, 3);
    auto r = up_word_in_cf_omega(t, head, loop, 12);
    if (!r)
      continue;
    ++yes;
    auto seg = [&](std::size_t from, std::size_t len) {
      Word x;
      for (std::size_t k = 0; k < len; ++k)
        x.push_back(t.at(from + k));
      return x;
    };
    CHECK(cyk_membership(head, seg(0, r->head)));
    std::size_t pos = r->head;
    for (std::size_t len : r->stem) {
      CHECK(cyk_membership(loop, seg(pos, len)));
      pos += len;
    }
    CHECK(pos >= t.prefix().size());
    const std::size_t start = pos;
    REQUIRE_FALSE(r->loop.empty());
    for (std::size_t len : r->loop) {
      CHECK(cyk_membership(loop, seg(pos, len)));
      pos += len;
    }
    CHECK((pos - start) % t.period().size() == 0);
    CHECK(pos <= 12);
  }
  CHECK(yes > 0);
}
