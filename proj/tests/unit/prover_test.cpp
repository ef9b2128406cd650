#include <doctest.h>

#include "omegact/error.hpp"
#include "omegact/parse.hpp"
#include "omegact/prover.hpp"
#include "support/generators.hpp"

using namespace omegact;
using namespace omegact::testing;

namespace
{
  OmegaRegex rx(const char* text) { return OmegaRegex(parse_formula(text)); }

  Grade verdict(const ProofPtr& p) { return check_proof(*p).grade; }

  /// Star-sorted formulas over a, b without star and without omega operands,
  /// so that sampled semantics at a modest cut is exact.
  Formula random_lambek(Rng& rng, int depth)
  {
    if (depth <= 0 || pick(rng, 3) == 0)
      return Formula::var(pick(rng, 2) ? "a" : "b");
    auto sub = [&] { return random_lambek(rng, depth - 1); };
    switch (pick(rng, 5)) {
    case 0: return Formula::prod(sub(), sub());
    case 1: return Formula::under(sub(), sub());
    case 2: return Formula::over(sub(), sub());
    case 3: return Formula::join(sub(), sub());
    default: return Formula::meet(sub(), sub());
    }
  }

  Interpretation random_interpretation(Rng& rng, const std::vector<std::string>& vars, std::size_t words,
                                       std::size_t max_word)
  {
    Interpretation i;
    for (const auto& x : vars) {
      auto& l = i.star[x];
      const std::size_t n = 1 + pick(rng, words);
      while (l.size() < n)
        l.insert(random_word(rng, 1, max_word, {"0", "1"}));
    }
    return i;
  }
}

TEST_CASE("decide: rotation of a period is provable")
{
  const Decision d = decide_omega_regular(rx("(a . b)^w"), rx("a . (b . a)^w"));
  CHECK(d.provable);
  CHECK_FALSE(d.counterexample);
  CHECK(decide_omega_regular(rx("a . (b . a)^w"), rx("(a . b)^w")).provable);
}

TEST_CASE("decide: a^w |- b^w fails with a^w as witness")
{
  const Decision d = decide_omega_regular(rx("a^w"), rx("b^w"));
  CHECK_FALSE(d.provable);
  REQUIRE(d.counterexample);
  CHECK(d.counterexample->prefix().empty());
  CHECK(d.counterexample->period() == Word{"a"});
}

TEST_CASE("decide: star-sorted pairs use finite words")
{
  CHECK(decide_omega_regular(rx("a . a*"), rx("a*")).provable);
  const Decision d = decide_omega_regular(rx("a*"), rx("a . a*"));
  CHECK_FALSE(d.provable);
  REQUIRE(d.finite_counterexample);
  CHECK(d.finite_counterexample->empty());
  CHECK_THROWS_AS(decide_omega_regular(rx("a*"), rx("a^w")), SortError);
}

TEST_CASE("decide: reflexive and verdicts agree with the alternative complement")
{
  Rng rng(11);
  for (int i = 0; i < 40; ++i) {
    const OmegaRegex a(random_regex(rng, Sort::Omega, 1 + static_cast<int>(pick(rng, 4))));
    const OmegaRegex b(random_regex(rng, Sort::Omega, 1 + static_cast<int>(pick(rng, 4))));
    CAPTURE(a.str());
    CAPTURE(b.str());
    CHECK(decide_omega_regular(a, a).provable);
    const Decision d = decide_omega_regular(a, b);
    const Alphabet sigma = unite(a.alphabet(), b.alphabet());
    const auto alt = buchi_inclusion_ramsey(omega_regex_to_buchi(a, sigma), omega_regex_to_buchi(b, sigma));
    CHECK(d.provable == alt.holds);
    if (!d.provable) {
      REQUIRE(d.counterexample);
      CHECK(up_word_in_omega_regex(*d.counterexample, a));
      CHECK_FALSE(up_word_in_omega_regex(*d.counterexample, b));
    }
  }
}

TEST_CASE("word certificates: examples")
{
  const LassoWord w({"a"}, {"b", "a"});
  const ProofPtr p = prove_word_sequent(w, rx("(a . b)^w"));
  CHECK(p->conclusion.str() == "{a, b} |- (a . b)^w");
  CHECK(verdict(p) == Grade::FullyChecked);

  const ProofPtr q = prove_word_sequent(LassoWord({"b"}, {"a"}), rx("b . a^w | b^w"));
  CHECK(q->rule == Rule::JoinR);
  CHECK(verdict(q) == Grade::FullyChecked);

  CHECK_THROWS_AS(prove_word_sequent(LassoWord({}, {"b"}), rx("a^w")), NotMember);
  CHECK_THROWS_AS(prove_word_sequent(LassoWord({}, {"a"}), rx("a*")), SortError);

  const ProofPtr f = prove_finite_word_sequent({"a", "b", "a"}, rx("(a . b)* . a"));
  CHECK(verdict(f) == Grade::FullyChecked);
  CHECK_THROWS_AS(prove_finite_word_sequent({"b"}, rx("a*")), NotMember);
}

TEST_CASE("word certificates: members of random expressions check")
{
  Rng rng(5);
  int members = 0;
  for (int i = 0; i < 300 && members < 40; ++i) {
    const OmegaRegex beta(random_regex(rng, Sort::Omega, 1 + static_cast<int>(pick(rng, 3))));
    const LassoWord w = random_lasso(rng, 3, 3);
    CAPTURE(beta.str());
    CAPTURE(w.str());
    if (!up_word_in_omega_regex(w, beta)) {
      CHECK_THROWS_AS(prove_word_sequent(w, beta), NotMember);
      continue;
    }
    ++members;
    const ProofPtr p = prove_word_sequent(w, beta);
    const Verdict r = check_proof(*p);
    CHECK_MESSAGE(r.grade == Grade::FullyChecked, r.str());
  }
  CHECK(members == 40);
}

TEST_CASE("search: examples")
{
  SUBCASE("axiom")
  {
    const SearchResult r = bounded_search(parse_sequent("p |- p"), 1);
    REQUIRE(r.found);
    CHECK(r.proof->rule == Rule::Ax);
    CHECK(r.str() == "Found");
  }
  SUBCASE("prefix shift")
  {
    const SearchResult r = bounded_search(parse_sequent("(q . p/q)^w |- q . p^w"), 8);
    REQUIRE(r.found);
    CHECK(verdict(r.proof) == Grade::FullyChecked);
  }
  SUBCASE("omega residual")
  {
    const SearchResult r = bounded_search(parse_sequent("p, p |- p^w / p^w"), 8);
    REQUIRE(r.found);
    CHECK(verdict(r.proof) == Grade::FullyChecked);
  }
  SUBCASE("star on the left gives a schema certificate")
  {
    const SearchResult r = bounded_search(parse_sequent("a*, a* |- a*"), 8);
    REQUIRE(r.found);
    CHECK(verdict(r.proof) == Grade::SchemaChecked);
  }
  SUBCASE("finite cut into single blocks")
  {
    const SearchResult r = bounded_search(parse_sequent("a, a, a, a, a |- a*"), 4);
    REQUIRE(r.found);
    CHECK(verdict(r.proof) == Grade::FullyChecked);
  }
  SUBCASE("counterexample sequent is out of reach")
  {
    const SearchResult r = bounded_search(parse_sequent("q . (q \\ (p . q))^w |- p^w"), 12);
    CHECK_FALSE(r.found);
    CHECK(r.str() == "NotFoundWithin(12)");
  }
  SUBCASE("depth zero finds nothing")
  {
    CHECK_FALSE(bounded_search(parse_sequent("p |- p"), 0).found);
  }
}

TEST_CASE("search: found proofs check, are sound for inclusion, and stay found deeper")
{
  Rng rng(23);
  SearchOptions o;
  o.max_period = 2;
  o.max_combinations = 32;
  int found = 0;
  for (int i = 0; i < 30; ++i) {
    const Formula a = random_regex(rng, Sort::Omega, 1 + static_cast<int>(pick(rng, 2)));
    const Formula b = pick(rng, 2) ? a : random_regex(rng, Sort::Omega, 1 + static_cast<int>(pick(rng, 2)));
    const Sequent s(Antecedent::finite({a}), b);
    CAPTURE(s.str());
    const SearchResult r = bounded_search(s, 3, o);
    if (!r.found)
      continue;
    ++found;
    CHECK(verdict(r.proof) != Grade::Rejected);
    CHECK(decide_omega_regular(OmegaRegex(a), OmegaRegex(b)).provable);
    CHECK(bounded_search(s, 4, o).found);
  }
  CHECK(found > 0);
}

TEST_CASE("search: type-1 proofs have no sampled counter-witness")
{
  Rng rng(3);
  int found = 0;
  for (int i = 0; i < 60; ++i) {
    std::vector<Formula> items;
    const std::size_t n = 1 + pick(rng, 2);
    for (std::size_t k = 0; k < n; ++k)
      items.push_back(random_lambek(rng, 2));
    const Sequent s(Antecedent::finite(items), random_lambek(rng, 2));
    CAPTURE(s.str());
    const SearchResult r = bounded_search(s, 5);
    if (!r.found)
      continue;
    ++found;
    CHECK(verdict(r.proof) == Grade::FullyChecked);
    for (int k = 0; k < 3; ++k) {
      const Interpretation interp = random_interpretation(rng, {"a", "b"}, 2, 1);
      CHECK_FALSE(finite_counter_witness(s, interp, {"0", "1"}, 10));
    }
  }
  CHECK(found > 5);
}

TEST_CASE("semantics: sampled witnesses")
{
  SUBCASE("false inclusion has a witness")
  {
    const Sequent s = parse_sequent("a^w |- b^w");
    const auto w = semantic_counter_witness(s, singleton_interpretation(s), {"a", "b"});
    REQUIRE(w);
    CHECK(w->str() == "(a)^w");
  }
  SUBCASE("type 2 antecedent")
  {
    const Sequent s = parse_sequent("a, {b} |- a . b^w");
    CHECK_FALSE(semantic_counter_witness(s, singleton_interpretation(s), {"a", "b"}));
    const Sequent t = parse_sequent("a, {b} |- b^w");
    CHECK(semantic_counter_witness(t, singleton_interpretation(t), {"a", "b"}));
  }
  SUBCASE("finite residual")
  {
    const Sequent s = parse_sequent("a, a \\ b |- b");
    CHECK_FALSE(finite_counter_witness(s, singleton_interpretation(s), {"a", "b"}));
    const Sequent t = parse_sequent("a \\ b, a |- b");
    Interpretation i;
    i.star["a"] = {{"0"}};
    i.star["b"] = {{"0", "1"}};
    const auto w = finite_counter_witness(t, i, {"0", "1"});
    REQUIRE(w);
    CHECK(*w == Word{"1", "0"});
  }
  SUBCASE("counterexample sequent holds on samples")
  {
    const Sequent s = parse_sequent("q . (q \\ (p . q))^w |- p^w");
    CHECK_FALSE(semantic_counter_witness(s, singleton_interpretation(s), {"p", "q"}));
    Rng rng(17);
    for (int k = 0; k < 5; ++k) {
      const Interpretation i = random_interpretation(rng, {"p", "q"}, 3, 2);
      CHECK_FALSE(semantic_counter_witness(s, i, {"0", "1"}, 3, 6));
    }
  }
  SUBCASE("omega variables have no sampled meaning")
  {
    const Sequent s = parse_sequent("$xa |- $xa");
    CHECK_THROWS_AS(semantic_counter_witness(s, {}, {"a"}), Error);
  }
}
