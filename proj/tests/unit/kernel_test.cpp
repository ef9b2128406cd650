#include <doctest.h>

#include <fstream>
#include <sstream>

#include "omegact/error.hpp"
#include "omegact/parse.hpp"
#include "omegact/proof.hpp"
#include "support/certificate_mutations.hpp"
#include "support/generators.hpp"

using namespace omegact;
using namespace omegact::testing;

namespace
{
  std::string read_cert(const std::string& name)
  {
    std::ifstream in(std::string(OMEGACT_CERT_DIR) + "/" + name);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  std::size_t occurrences(const std::string& text, const std::string& what)
  {
    std::size_t n = 0;
    for (auto i = text.find(what); i != std::string::npos; i = text.find(what, i + 1))
      ++n;
    return n;
  }

  Sequent seq(const char* text) { return parse_sequent(text); }

  VdashDerivation vdash(std::vector<const char*> hyps, const char* root)
  {
    VdashDerivation d;
    for (const char* h : hyps)
      d.hyps.push_back(parse_sequence_pattern(h));
    d.root = parse_certificate(root);
    return d;
  }

  /// Copy of the tree with the n-th node (preorder, premises only) retagged.
  ProofPtr retag(const ProofPtr& p, std::size_t& n, Rule r)
  {
    auto copy = std::make_shared<ProofNode>(*p);
    if (n-- == 0) {
      copy->rule = r;
      return copy;
    }
    for (Premise& pr : copy->premises)
      pr.node = retag(pr.node, n, r);
    return copy;
  }

  std::size_t tree_size(const ProofNode& p)
  {
    std::size_t n = 1;
    for (const Premise& pr : p.premises)
      n += tree_size(*pr.node);
    return n;
  }

  /// Random derivation of delta |- z by ProdL / JoinL / MeetL; its leaves
  /// become the hypotheses.
  ProofPtr random_left(Rng& rng, const std::vector<Formula>& delta, int depth, std::vector<SequencePattern>& hyps)
  {
    const Formula z = Formula::var("z");
    const Sequent s(Antecedent::finite(delta), z);
    std::vector<std::size_t> spots;
    for (std::size_t i = 0; i < delta.size(); ++i) {
      const Kind k = delta[i].kind();
      if (k == Kind::Prod || k == Kind::Join || k == Kind::Meet)
        spots.push_back(i);
    }
    if (depth == 0 || spots.empty()) {
      const SequencePattern h = SequencePattern::of(s.antecedent());
      if (std::find(hyps.begin(), hyps.end(), h) == hyps.end())
        hyps.push_back(h);
      return make_node(Rule::Hyp, s);
    }
    const std::size_t k = spots[pick(rng, spots.size())];
    const Kind kind = delta[k].kind();
    RuleArgs args;
    args.at = k;
    Aux aux;
    aux.at = Index::of(k);
    Rule r = kind == Kind::Prod ? Rule::ProdL : kind == Kind::Join ? Rule::JoinL : Rule::MeetL;
    if (r == Rule::MeetL) {
      args.choice = aux.choice = 1 + pick(rng, 2);
    }
    std::vector<ProofPtr> premises;
    for (const Sequent& p : apply_rule_backward(s, r, args).premises)
      premises.push_back(random_left(rng, p.antecedent().items(), depth - 1, hyps));
    return make_node(r, s, std::move(premises), aux);
  }

  Formula random_star_formula(Rng& rng, int depth)
  {
    for (;;) {
      Formula f = random_formula(rng, Sort::Star, depth);
      if (!f.mentions("z"))
        return f;
    }
  }
}

TEST_CASE("kernel: example certificates are fully checked")
{
  for (const char* name : {"omega-prefix-shift.cert", "omega-residual.cert"}) {
    CAPTURE(name);
    const ProofPtr p = parse_certificate(read_cert(name));
    const Verdict v = check_proof(*p);
    CHECK_MESSAGE(v.grade == Grade::FullyChecked, v.str());
    CHECK(v.exit_code() == 0);
  }
  CHECK(parse_certificate(read_cert("omega-prefix-shift.cert"))->conclusion.instantiate({})
        == seq("(q . p/q)^w |- q . p^w"));
  CHECK(parse_certificate(read_cert("omega-residual.cert"))->conclusion.instantiate({}) == seq("p, p |- p^w / p^w"));
}

TEST_CASE("kernel: single-node mutations of the example certificates are rejected")
{
  for (const auto& [name, muts] : {std::pair{"omega-prefix-shift.cert", &kShiftMutations},
                                   std::pair{"omega-residual.cert", &kResidualMutations}}) {
    const std::string text = read_cert(name);
    REQUIRE(muts->size() == 10);
    for (const Mutation& m : *muts) {
      CAPTURE(name);
      CAPTURE(m.to);
      REQUIRE(occurrences(text, m.from) >= 1);
      std::string bad = text;
      bad.replace(bad.find(m.from), m.from.size(), m.to);
      const Verdict v = check_proof(*parse_certificate(bad));
      CHECK_MESSAGE(v.grade == Grade::Rejected, v.str());
      CHECK(v.exit_code() == 1);
    }
  }
}

TEST_CASE("kernel: altered axiom leaf is a rule mismatch at the leaf")
{
  std::string text = read_cert("omega-residual.cert");
  const std::string leaf = "\"p |- p\"";
  text.replace(text.find(leaf), leaf.size(), "\"p |- q\"");
  const Verdict v = check_proof(*parse_certificate(text));
  REQUIRE(v.grade == Grade::Rejected);
  CAPTURE(v.str());
  CHECK(v.reason.find("rule mismatch") == 0);
  CHECK(v.path == "/0/0/0");
  CHECK(v.str().find("Rejected at /0/0/0") == 0);
}

TEST_CASE("check_vdash: examples")
{
  SUBCASE("join on the left")
  {
    const auto d = vdash({"a", "b"}, R"((rule JoinL (seq "a | b |- x") (at 0)
                                          (premises (rule Hyp (seq "a |- x")) (rule Hyp (seq "b |- x")))))");
    CHECK(check_vdash(d).grade == Grade::FullyChecked);
  }
  SUBCASE("a sequence derives itself")
  {
    const auto d = vdash({"a . b, c"}, R"((rule Hyp (seq "a . b, c |- x")))");
    CHECK(check_vdash(d).grade == Grade::FullyChecked);
  }
  SUBCASE("star against the schema-indexed family")
  {
    const auto d = vdash({"[a]^n"}, R"((rule StarL (seq "a* |- x") (at 0)
                                         (schema n (rule Hyp (seq "[a]^n |- x")))))");
    const Verdict v = check_vdash(d, 6);
    CHECK(v.grade == Grade::SchemaChecked);
    CHECK(v.bound == 6);
    CHECK(v.str() == "SchemaChecked(6)");
    CHECK(v.exit_code() == 2);
  }
  SUBCASE("right rule")
  {
    const auto d = vdash({"a", "b"}, R"((rule ProdR (seq "a, b |- x") (split 1)
                                          (premises (rule Hyp (seq "a |- x")) (rule Hyp (seq "b |- x")))))");
    const Verdict v = check_vdash(d);
    REQUIRE(v.grade == Grade::Rejected);
    CHECK(v.reason.find("right rule") != std::string::npos);
  }
  SUBCASE("unused hypothesis")
  {
    const auto d = vdash({"a", "b", "c"}, R"((rule JoinL (seq "a | b |- x") (at 0)
                                               (premises (rule Hyp (seq "a |- x")) (rule Hyp (seq "b |- x")))))");
    const Verdict v = check_vdash(d);
    REQUIRE(v.grade == Grade::Rejected);
    CHECK(v.reason.find("unused hypothesis") != std::string::npos);
  }
  SUBCASE("x not fresh")
  {
    const auto d = vdash({"x . a"}, R"((rule Hyp (seq "x . a |- x")))");
    const Verdict v = check_vdash(d);
    REQUIRE(v.grade == Grade::Rejected);
    CHECK(v.reason.find("x not fresh") != std::string::npos);
    const auto d2 = vdash({"a", "x"}, R"((rule JoinL (seq "a | b |- x") (at 0)
                                           (premises (rule Hyp (seq "a |- x")) (rule Hyp (seq "b |- x")))))");
    CHECK(check_vdash(d2).reason.find("x not fresh") != std::string::npos);
  }
  SUBCASE("malformed step")
  {
    const auto d = vdash({"a", "b"}, R"((rule JoinL (seq "a | b |- x") (at 0)
                                          (premises (rule Hyp (seq "a |- x")))))");
    CHECK(check_vdash(d).reason.find("rule mismatch") != std::string::npos);
  }
}

TEST_CASE("apply_rule_backward: examples")
{
  RuleArgs none;
  auto b = apply_rule_backward(seq("q^w |- p^w"), Rule::OmegaL, none);
  REQUIRE(b.premises.size() == 1);
  CHECK(b.premises[0] == seq("{q} |- p^w"));
  CHECK(b.premises[0].str() == "{q} |- p^w");

  RuleArgs split;
  split.split = 1;
  b = apply_rule_backward(seq("a, {b} |- a . c^w"), Rule::ProdR, split);
  REQUIRE(b.premises.size() == 2);
  CHECK(b.premises[0] == seq("a |- a"));
  CHECK(b.premises[1] == seq("{b} |- c^w"));
  split.split = 2;
  CHECK_THROWS_AS(apply_rule_backward(seq("a |- a . c"), Rule::ProdR, split), RuleError);

  RuleArgs at0;
  at0.at = 0;
  b = apply_rule_backward(seq("a*, b |- c"), Rule::StarL, at0);
  CHECK(b.premises.empty());
  REQUIRE(b.family);
  CHECK(*b.family == parse_sequent_pattern("[a]^n, b |- c"));
  CHECK(b.family->instantiate({{"n", 0}}) == seq("b |- c"));
  CHECK(b.family->instantiate({{"n", 3}}) == seq("a, a, a, b |- c"));

  // Inapplicable instances.
  CHECK_THROWS_AS(apply_rule_backward(seq("p |- q"), Rule::Ax, none), RuleError);
  CHECK_THROWS_AS(apply_rule_backward(seq("a*, b |- c"), Rule::ProdL, at0), RuleError);
  RuleArgs at5;
  at5.at = 5;
  CHECK_THROWS_AS(apply_rule_backward(seq("a*, b |- c"), Rule::StarL, at5), RuleError);
}

TEST_CASE("apply_rule_backward: periodic rules")
{
  RuleArgs ps;
  ps.psplit = std::make_pair(std::vector<std::size_t>{1}, std::vector<std::size_t>{2});
  auto b = apply_rule_backward(seq("c, {a, b} |- (a . b | c)^w"), Rule::OmegaR, ps);
  REQUIRE(b.premises.size() == 2);
  CHECK(b.premises[0] == seq("c |- a . b | c"));
  CHECK(b.premises[1] == seq("a, b |- a . b | c"));

  // Distinct blocks only, in first-occurrence order.
  ps.psplit = std::make_pair(std::vector<std::size_t>{1, 1}, std::vector<std::size_t>{1});
  b = apply_rule_backward(seq("{p} |- p^w"), Rule::OmegaR, ps);
  REQUIRE(b.premises.size() == 1);

  // Period length 3 does not fit a period of length 2.
  ps.psplit = std::make_pair(std::vector<std::size_t>{}, std::vector<std::size_t>{3});
  CHECK_THROWS_WITH_AS(apply_rule_backward(seq("{a, b} |- (a . b)^w"), Rule::OmegaR, ps), doctest::Contains("periodic"),
                       RuleError);

  // LOmega with a two-element choice at a prefix block.
  RuleArgs lw;
  lw.psplit = std::make_pair(std::vector<std::size_t>{1}, std::vector<std::size_t>{1});
  const Formula a = parse_formula("a"), bb = parse_formula("b"), c = parse_formula("c");
  lw.choices = {{{a}, {bb}}, {{c}}};
  b = apply_rule_backward(seq("a | b, {c} |- e^w"), Rule::LOmega, lw);
  REQUIRE(b.premises.size() == 2);
  CHECK(b.premises[0] == seq("a, {c} |- e^w"));
  CHECK(b.premises[1] == seq("b, {c} |- e^w"));
  // A non-singleton choice inside the period is unsupported.
  lw.choices = {{{a}}, {{c}, {a}}};
  CHECK_THROWS_WITH_AS(apply_rule_backward(seq("a | b, {c} |- e^w"), Rule::LOmega, lw),
                       doctest::Contains("choice set unsupported"), RuleError);
}

TEST_CASE("invert: examples")
{
  auto r = invert(seq("a . b |- c"));
  REQUIRE(r.leaves.size() == 1);
  CHECK(r.leaves[0].instantiate({}) == seq("a, b |- c"));
  CHECK_FALSE(r.lazy);

  r = invert(seq("(a|b)^w |- c^w"));
  REQUIRE(r.leaves.size() == 1);
  CHECK(r.leaves[0].instantiate({}) == seq("{a | b} |- c^w"));
  CHECK(r.lazy);

  r = invert(seq("p |- p"));
  REQUIRE(r.leaves.size() == 1);
  CHECK(r.leaves[0].instantiate({}) == seq("p |- p"));

  r = invert(seq("a | b, c* |- d & (e \\ f)"));
  REQUIRE(r.leaves.size() == 4);
  CHECK(r.leaves[0].str() == "a, [c]^n1 |- d");
  CHECK(r.leaves[1].str() == "e, a, [c]^n1 |- f");
  CHECK(r.leaves[3].str() == "e, b, [c]^n2 |- f");
  CHECK(r.leaves[3].instantiate({{"n2", 2}}) == seq("e, b, c, c |- f"));

  r = invert(seq("a |- q^w / r^w"));
  REQUIRE(r.leaves.size() == 1);
  CHECK(r.leaves[0].instantiate({}) == seq("a, {r} |- q^w"));
  CHECK_FALSE(r.lazy);
}

TEST_CASE("property: backward application reassembled with stub premises passes the node check")
{
  Rng rng(11);
  const std::vector<Rule> rules = {Rule::Ax,     Rule::ProdL,  Rule::UnderL, Rule::OverL, Rule::MeetL, Rule::JoinL,
                                   Rule::StarL,  Rule::OmegaL, Rule::LOmega, Rule::OmegaR, Rule::OverR, Rule::UnderR,
                                   Rule::ProdR,  Rule::MeetR,  Rule::JoinR,  Rule::StarR};
  std::map<Rule, std::size_t> applied;
  for (int iter = 0; iter < 400; ++iter) {
    // Antecedent type chosen at random; formulas small.
    std::vector<Formula> items;
    const std::size_t n = 1 + pick(rng, 3);
    for (std::size_t i = 0; i < n; ++i)
      items.push_back(random_star_formula(rng, 2));
    const int type = static_cast<int>(pick(rng, 3));
    Antecedent ant;
    Formula succ = random_star_formula(rng, 2);
    if (type == 1) {
      const std::size_t cut = pick(rng, n);
      ant = Antecedent::periodic(UpSequence({items.begin(), items.begin() + static_cast<long>(cut)},
                                            {items.begin() + static_cast<long>(cut), items.end()}));
      succ = random_formula(rng, Sort::Omega, 2);
    } else if (type == 2) {
      items.push_back(random_formula(rng, Sort::Omega, 2));
      ant = Antecedent::finite(items);
      succ = random_formula(rng, Sort::Omega, 2);
    } else {
      ant = Antecedent::finite(items);
      if (pick(rng, 4) == 0)
        succ = items[0];
    }
    const Sequent s(ant, succ);

    for (Rule r : rules) {
      std::vector<RuleArgs> trials;
      for (std::size_t k = 0; k < 4; ++k)
        for (std::size_t l = 0; l < 3; ++l)
          for (std::size_t c = 1; c <= 2; ++c) {
            RuleArgs a;
            a.at = k;
            a.span = l;
            a.split = k;
            a.choice = c;
            a.span_rest = l == 2;
            a.blocks = std::vector<std::size_t>(k, l + 1);
            a.psplit = std::make_pair(std::vector<std::size_t>(c - 1, l + 1), std::vector<std::size_t>{k + 1});
            trials.push_back(a);
          }
      for (const RuleArgs& a : trials) {
        Backward b;
        try {
          b = apply_rule_backward(s, r, a);
        } catch (const Error&) {
          continue;
        }
        auto node = std::make_shared<ProofNode>(r, SequentPattern::of(s));
        const std::vector<std::size_t> none;
        // Only the fields this rule reads go into the certificate.
        switch (r) {
        case Rule::ProdL:
        case Rule::JoinL:
        case Rule::StarL: node->aux.at = Index::of(*a.at); break;
        case Rule::MeetL:
          node->aux.at = Index::of(*a.at);
          node->aux.choice = a.choice;
          break;
        case Rule::UnderL: node->aux.at = Index::of(*a.at); node->aux.span = Index::of(*a.span); break;
        case Rule::OverL:
          node->aux.at = Index::of(*a.at);
          if (a.span_rest)
            node->aux.span_rest = true;
          else
            node->aux.span = Index::of(*a.span);
          break;
        case Rule::ProdR: node->aux.split = Index::of(*a.split); break;
        case Rule::JoinR: node->aux.choice = a.choice; break;
        case Rule::StarR: node->aux.blocks = plain_lengths(*a.blocks); break;
        case Rule::OmegaR:
        case Rule::LOmega:
          node->aux.psplit = PeriodicSplit{plain_lengths(a.psplit->first), plain_lengths(a.psplit->second)};
          break;
        default: break;
        }
        if (r == Rule::LOmega)
          for (const auto& block : b.blocks) {
            VdashDerivation d;
            d.hyps.push_back(SequencePattern::of(Antecedent::finite(block)));
            d.root = make_node(Rule::Hyp, Sequent(Antecedent::finite(block), Formula::var("z")));
            node->aux.vdash.push_back(d);
          }
        for (const Sequent& p : b.premises)
          node->premises.push_back({make_node(Rule::Ax, p), std::nullopt});
        if (b.family)
          node->schema = Schema{a.param, std::make_shared<ProofNode>(Rule::Ax, *b.family), {}};
        const Verdict v = check_step(*node, 3);
        CAPTURE(s.str());
        const std::string tag = rule_name(r);
        CAPTURE(tag);
        CHECK_MESSAGE(v.accepted(), v.str());
        ++applied[r];
        // Dropping a premise breaks the instance.
        if (!node->premises.empty()) {
          node->premises.pop_back();
          CHECK(check_step(*node, 3).grade == Grade::Rejected);
        }
      }
    }
  }
  for (Rule r : rules) {
    const std::string tag = rule_name(r);
    CAPTURE(tag);
    CHECK(applied[r] > 0);
  }
}

TEST_CASE("property: omega left / omega right duality")
{
  Rng rng(5);
  for (int i = 0; i < 20; ++i) {
    const Formula a = random_star_formula(rng, 3);
    const Formula aw = Formula::omega(a);
    const Sequent root(Antecedent::finite({aw}), aw);
    const Sequent mid(Antecedent::periodic(UpSequence({}, {a})), aw);
    Aux ps;
    ps.psplit = PeriodicSplit{{}, plain_lengths({1})};
    const ProofPtr ax = make_node(Rule::Ax, Sequent(Antecedent::finite({a}), a));
    const ProofPtr p = make_node(Rule::OmegaL, root, {make_node(Rule::OmegaR, mid, {ax}, ps)});
    const Verdict v = check_proof(*p);
    CAPTURE(a.str());
    CHECK_MESSAGE(v.grade == Grade::FullyChecked, v.str());
    CHECK(print_certificate(*parse_certificate(print_certificate(*p))) == print_certificate(*p));
  }
}

TEST_CASE("property: verdicts and the schema bound")
{
  for (const char* name : {"omega-prefix-shift.cert", "omega-residual.cert"}) {
    const ProofPtr p = parse_certificate(read_cert(name));
    for (std::size_t k = 0; k <= 12; ++k)
      CHECK(check_proof(*p, k).grade == Grade::FullyChecked);
  }

  const auto star = vdash({"[a]^n"}, R"((rule StarL (seq "a* |- x") (at 0) (schema n (rule Hyp (seq "[a]^n |- x")))))");
  for (std::size_t k = 0; k <= 10; ++k) {
    const Verdict v = check_vdash(star, k);
    CHECK(v.grade == Grade::SchemaChecked);
    CHECK(v.bound == k);
  }

  // Instances listed up to 4 only: passing at K implies passing below K.
  const auto listed = vdash({"[a]^n"}, R"((rule StarL (seq "a* |- x") (at 0)
    (schema n (instances (rule Hyp (seq "|- x")) (rule Hyp (seq "a |- x")) (rule Hyp (seq "a, a |- x"))
                         (rule Hyp (seq "a, a, a |- x")) (rule Hyp (seq "a, a, a, a |- x"))))))");
  std::optional<std::size_t> first_fail;
  for (std::size_t k = 0; k <= 8; ++k) {
    const bool ok = check_vdash(listed, k).accepted();
    if (!ok && !first_fail)
      first_fail = k;
    if (first_fail)
      CHECK_FALSE(ok);
  }
  CHECK(first_fail == 5u);
}

TEST_CASE("property: vdash derivations with one right rule are rejected")
{
  Rng rng(23);
  const std::vector<Rule> right = {Rule::OverR, Rule::UnderR, Rule::ProdR, Rule::MeetR,
                                   Rule::JoinR, Rule::StarR,  Rule::OmegaR};
  std::size_t valid = 0;
  for (int iter = 0; iter < 150; ++iter) {
    std::vector<Formula> delta;
    const std::size_t n = 1 + pick(rng, 3);
    for (std::size_t i = 0; i < n; ++i)
      delta.push_back(random_star_formula(rng, 3));
    VdashDerivation d;
    d.root = random_left(rng, delta, 3, d.hyps);
    const Verdict ok = check_vdash(d);
    CAPTURE(print_certificate(*d.root));
    REQUIRE_MESSAGE(ok.accepted(), ok.str());
    ++valid;

    std::size_t at = pick(rng, tree_size(*d.root));
    VdashDerivation bad = d;
    bad.root = retag(d.root, at, right[pick(rng, right.size())]);
    const Verdict v = check_vdash(bad);
    REQUIRE(v.grade == Grade::Rejected);
    CHECK(v.reason.find("right rule used") == 0);
  }
  CHECK(valid == 150);
}

TEST_CASE("certificate text: round trip and errors")
{
  for (const char* name : {"omega-prefix-shift.cert", "omega-residual.cert"}) {
    const std::string printed = print_certificate(*parse_certificate(read_cert(name)));
    CHECK(print_certificate(*parse_certificate(printed)) == printed);
  }

  const std::string rich = R"((rule StarR (seq "a, b \\ c, a |- (a | b \\ c)*") (blocks (repeat 1 1 1) 1)
    (premises (repeat 2 (rule JoinR (seq "a |- a | b \\ c") (choice 1) (premises (rule Ax (seq "a |- a")))))
              (rule Ax (seq "b \\ c |- a | b \\ c")))))";
  const ProofPtr p = parse_certificate(rich);
  REQUIRE(p->aux.blocks);
  CHECK(p->aux.blocks->size() == 2);
  CHECK(p->premises.at(0).repeat == Index::of(2));
  CHECK(p->conclusion.instantiate({}) == seq("a, b \\ c, a |- (a | b \\ c)*"));
  const std::string printed = print_certificate(*p);
  CHECK(printed.find("\\\\") != std::string::npos);
  CHECK(print_certificate(*parse_certificate(printed)) == printed);

  CHECK_THROWS_AS(parse_certificate("(rule Ax (seq \"p |- p\")"), ParseError);
  CHECK_THROWS_AS(parse_certificate("(rule Nope (seq \"p |- p\"))"), ParseError);
  CHECK_THROWS_AS(parse_certificate("(rule Ax (seq \"p |- \"))"), ParseError);
  CHECK_THROWS_AS(parse_certificate("(rule Ax (seq \"p |- p\")) extra"), ParseError);
  CHECK_THROWS_AS(parse_certificate("(rule Ax (seq \"p |- p\") (bogus 1))"), ParseError);
  try {
    parse_certificate("(rule Ax (seq \"p |- p\") (at x!))");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 28);
  }

  CHECK(Index::parse("1+2n").eval({{"n", 3}}) == 7);
  CHECK(Index::parse("1+2n").str() == "1+2n");
  CHECK(Index::parse("n").str() == "n");
  CHECK_THROWS_AS(Index::parse("n").eval({}), Error);
}
