#include <algorithm>
#include <array>
#include <cctype>

#include "omegact/proof.hpp"

namespace omegact
{
  namespace
  {
    constexpr std::array<std::pair<Rule, const char*>, 17> kNames{{
      {Rule::Ax, "Ax"},         {Rule::Hyp, "Hyp"},       {Rule::ProdL, "ProdL"},   {Rule::UnderL, "UnderL"},
      {Rule::OverL, "OverL"},   {Rule::MeetL, "MeetL"},   {Rule::JoinL, "JoinL"},   {Rule::StarL, "StarL"},
      {Rule::OmegaL, "OmegaL"}, {Rule::LOmega, "LOmega"}, {Rule::OmegaR, "OmegaR"}, {Rule::OverR, "OverR"},
      {Rule::UnderR, "UnderR"}, {Rule::ProdR, "ProdR"},   {Rule::MeetR, "MeetR"},   {Rule::JoinR, "JoinR"},
      {Rule::StarR, "StarR"},
    }};
  }

  const char* rule_name(Rule r)
  {
    for (const auto& [rule, name] : kNames)
      if (rule == r)
        return name;
    return "?";
  }

  std::optional<Rule> rule_from_name(const std::string& name)
  {
    for (const auto& [rule, n] : kNames)
      if (name == n)
        return rule;
    return std::nullopt;
  }

  bool is_left_rule(Rule r)
  {
    switch (r) {
    case Rule::ProdL:
    case Rule::UnderL:
    case Rule::OverL:
    case Rule::MeetL:
    case Rule::JoinL:
    case Rule::StarL:
    case Rule::OmegaL: return true;
    default: return false;
    }
  }

  // --- Index ------------------------------------------------------------

  Index Index::parse(const std::string& text)
  {
    Index out;
    std::size_t i = 0;
    auto bad = [&] { return Error("bad index expression '" + text + "'"); };
    if (text.empty())
      throw bad();
    while (i < text.size()) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
        ++j;
      long coef = j > i ? std::stol(text.substr(i, j - i)) : 1;
      std::size_t k = j;
      while (k < text.size() && (std::isalnum(static_cast<unsigned char>(text[k])) || text[k] == '_'))
        ++k;
      if (k == i)
        throw bad();
      if (k > j)
        out.terms.push_back({text.substr(j, k - j), coef});
      else
        out.base += coef;
      i = k;
      if (i < text.size()) {
        if (text[i] != '+' || i + 1 == text.size())
          throw bad();
        ++i;
      }
    }
    return out;
  }

  std::size_t Index::eval(const Bindings& env) const
  {
    long v = base;
    for (const auto& [param, coef] : terms) {
      auto it = env.find(param);
      if (it == env.end())
        throw Error("unbound schema parameter " + param);
      v += coef * static_cast<long>(it->second);
    }
    if (v < 0)
      throw Error("negative index " + str());
    return static_cast<std::size_t>(v);
  }

  std::string Index::str() const
  {
    std::string out;
    if (base != 0 || terms.empty())
      out = std::to_string(base);
    for (const auto& [param, coef] : terms) {
      if (!out.empty())
        out += '+';
      if (coef != 1)
        out += std::to_string(coef);
      out += param;
    }
    return out;
  }

  std::vector<std::size_t> expand(const std::vector<LengthItem>& items, const Bindings& env)
  {
    std::vector<std::size_t> out;
    for (const LengthItem& it : items) {
      const std::size_t times = it.repeat ? it.repeat->eval(env) : 1;
      for (std::size_t t = 0; t < times; ++t)
        for (const Index& l : it.lengths)
          out.push_back(l.eval(env));
    }
    return out;
  }

  std::vector<LengthItem> plain_lengths(const std::vector<std::size_t>& lengths)
  {
    std::vector<LengthItem> out;
    for (std::size_t l : lengths)
      out.push_back({{Index::of(l)}, std::nullopt});
    return out;
  }

  ProofPtr make_node(Rule r, const Sequent& conclusion, std::vector<ProofPtr> premises, Aux aux)
  {
    auto n = std::make_shared<ProofNode>(r, SequentPattern::of(conclusion));
    n->aux = std::move(aux);
    for (auto& p : premises)
      n->premises.push_back({std::move(p), std::nullopt});
    return n;
  }

  // --- Backward application -----------------------------------------------

  namespace
  {
    std::size_t need(const std::optional<std::size_t>& v, const char* what, Rule r)
    {
      if (!v)
        throw RuleError(std::string(rule_name(r)) + " needs " + what);
      return *v;
    }

    const Formula& principal(const Sequent& s, std::size_t k, Kind kind, Rule r)
    {
      const Antecedent& a = s.antecedent();
      if (!a.has(k))
        throw RuleError(std::string(rule_name(r)) + ": no antecedent position " + std::to_string(k));
      const Formula& f = a.at(k);
      if (f.kind() != kind)
        throw RuleError(std::string(rule_name(r)) + ": position " + std::to_string(k) + " holds " + f.str());
      return f;
    }

    Sequent with_ant(const Antecedent& a, const Formula& succ)
    {
      try {
        return Sequent(a, succ);
      } catch (const SortError& e) {
        throw RuleError(e.what());
      }
    }

    std::vector<Formula> finite_block(const Antecedent& a, std::size_t from, std::size_t len, Rule r)
    {
      std::vector<Formula> out;
      for (std::size_t i = from; i < from + len; ++i) {
        if (!a.has(i))
          throw RuleError(std::string(rule_name(r)) + ": block runs past the antecedent");
        if (a.at(i).sort() != Sort::Star)
          throw RuleError(std::string(rule_name(r)) + ": block contains the omega tail");
        out.push_back(a.at(i));
      }
      return out;
    }

    /// Pattern of `a` with position k replaced by the group [body]^param.
    SequencePattern group_at(const Antecedent& a, std::size_t k, const Formula& body, const std::string& param)
    {
      SequencePattern p;
      std::size_t len = 0;
      if (a.infinite()) {
        const std::size_t u = a.up().prefix().size(), v = a.up().period().size();
        len = k < u ? u : u + v * ((k + 1 - u + v - 1) / v);
        p.period = a.up().period();
      } else {
        len = a.length();
      }
      for (std::size_t i = 0; i < len; ++i) {
        if (i == k)
          p.items.push_back({{body}, param});
        else
          p.items.push_back({{a.at(i)}, {}});
      }
      return p;
    }
  }

  std::vector<std::vector<Formula>> split_blocks(const Antecedent& a, const std::vector<std::size_t>& prefix,
                                                 const std::vector<std::size_t>& period)
  {
    if (!a.infinite())
      throw RuleError("a periodic split needs a type-2 antecedent");
    std::size_t s = 0, l = 0;
    for (std::size_t x : prefix)
      s += x;
    for (std::size_t x : period) {
      if (x == 0)
        throw RuleError("split not periodic: empty period block");
      l += x;
    }
    if (l == 0)
      throw RuleError("split not periodic: no period blocks");
    const std::size_t u = a.up().prefix().size(), v = a.up().period().size();
    const std::size_t m = std::max(s, u);
    for (std::size_t i = s; i < m + v; ++i)
      if (!(a.at(i) == a.at(i + l)))
        throw RuleError("split not periodic: position " + std::to_string(i) + " differs from position "
                        + std::to_string(i + l));
    std::vector<std::vector<Formula>> out;
    std::size_t pos = 0;
    for (const auto* lens : {&prefix, &period})
      for (std::size_t x : *lens) {
        out.emplace_back();
        for (std::size_t i = 0; i < x; ++i)
          out.back().push_back(a.at(pos++));
      }
    return out;
  }

  Backward apply_rule_backward(const Sequent& s, Rule r, const RuleArgs& args)
  {
    const Antecedent& a = s.antecedent();
    const Formula& e = s.succedent();
    Backward out;
    auto push = [&](const Antecedent& ant, const Formula& succ) { out.premises.push_back(with_ant(ant, succ)); };
    auto require_succ = [&](Kind k) {
      if (e.kind() != k)
        throw RuleError(std::string(rule_name(r)) + ": succedent is " + e.str());
    };

    switch (r) {
    case Rule::Ax: {
      if (a.infinite() || a.length() != 1 || !(a.at(0) == e))
        throw RuleError("not an axiom: " + s.str());
      return out;
    }
    case Rule::Hyp: throw RuleError("Hyp is only meaningful inside a vdash derivation");
    case Rule::ProdL: {
      const std::size_t k = need(args.at, "a principal position", r);
      const Formula& f = principal(s, k, Kind::Prod, r);
      const std::vector<Formula> repl{f.left(), f.right()};
      push(a.splice(k, 1, repl), e);
      return out;
    }
    case Rule::UnderL: {
      const std::size_t k = need(args.at, "a principal position", r);
      const std::size_t l = need(args.span, "a span", r);
      const Formula& f = principal(s, k, Kind::Under, r);
      if (l > k)
        throw RuleError("UnderL: span " + std::to_string(l) + " exceeds the items before position " + std::to_string(k));
      std::vector<Formula> pi = finite_block(a, k - l, l, r);
      const std::vector<Formula> repl{f.right()};
      push(a.splice(k - l, l + 1, repl), e);
      push(Antecedent::finite(std::move(pi)), f.left());
      return out;
    }
    case Rule::OverL: {
      const std::size_t k = need(args.at, "a principal position", r);
      const Formula& f = principal(s, k, Kind::Over, r);
      const Formula& num = f.left();
      const Formula& den = f.right();
      if (den.sort() == Sort::Omega) {
        if (!args.span_rest)
          throw RuleError("OverL: an omega denominator takes the rest of the antecedent");
        std::vector<Formula> front = a.take(k);
        front.push_back(num);
        push(Antecedent::finite(std::move(front)), e);
        push(a.drop(k + 1), den);
        return out;
      }
      if (args.span_rest)
        throw RuleError("OverL: a star denominator needs a finite span");
      const std::size_t l = need(args.span, "a span", r);
      std::vector<Formula> xi = finite_block(a, k + 1, l, r);
      const std::vector<Formula> repl{num};
      push(a.splice(k, l + 1, repl), e);
      push(Antecedent::finite(std::move(xi)), den);
      return out;
    }
    case Rule::MeetL: {
      const std::size_t k = need(args.at, "a principal position", r);
      const std::size_t i = need(args.choice, "a choice", r);
      const Formula& f = principal(s, k, Kind::Meet, r);
      if (i != 1 && i != 2)
        throw RuleError("MeetL: choice must be 1 or 2");
      const std::vector<Formula> repl{i == 1 ? f.left() : f.right()};
      push(a.splice(k, 1, repl), e);
      return out;
    }
    case Rule::JoinL: {
      const std::size_t k = need(args.at, "a principal position", r);
      const Formula& f = principal(s, k, Kind::Join, r);
      for (const Formula* g : {&f.left(), &f.right()}) {
        const std::vector<Formula> repl{*g};
        push(a.splice(k, 1, repl), e);
      }
      return out;
    }
    case Rule::StarL: {
      const std::size_t k = need(args.at, "a principal position", r);
      const Formula& f = principal(s, k, Kind::Star, r);
      out.family = SequentPattern{group_at(a, k, f.operand(), args.param), e};
      return out;
    }
    case Rule::OmegaL: {
      if (a.type() != SequenceType::OmegaTail)
        throw RuleError("OmegaL needs a type-3 antecedent");
      const std::size_t k = a.length() - 1;
      const Formula& f = principal(s, k, Kind::Omega, r);
      std::vector<Formula> gamma(a.items().begin(), a.items().end() - 1);
      push(Antecedent::periodic(UpSequence(std::move(gamma), {f.operand()})), e);
      return out;
    }
    case Rule::LOmega:
    case Rule::OmegaR: {
      if (!args.psplit)
        throw RuleError(std::string(rule_name(r)) + " needs a periodic split");
      out.blocks = split_blocks(a, args.psplit->first, args.psplit->second);
      out.prefix_blocks = args.psplit->first.size();
      if (r == Rule::OmegaR) {
        require_succ(Kind::Omega);
        std::vector<std::vector<Formula>> seen;
        for (const auto& b : out.blocks)
          if (std::find(seen.begin(), seen.end(), b) == seen.end()) {
            seen.push_back(b);
            push(Antecedent::finite(b), e.operand());
          }
        return out;
      }
      std::vector<std::vector<std::vector<Formula>>> m = args.choices;
      if (m.empty())
        for (const auto& b : out.blocks)
          m.push_back({b});
      if (m.size() != out.blocks.size())
        throw RuleError("LOmega: one hypothesis set per block expected");
      std::vector<Formula> period;
      for (std::size_t i = out.prefix_blocks; i < m.size(); ++i) {
        if (m[i].size() != 1)
          throw RuleError("choice set unsupported: period block " + std::to_string(i - out.prefix_blocks)
                          + " has " + std::to_string(m[i].size()) + " hypotheses");
        period.insert(period.end(), m[i][0].begin(), m[i][0].end());
      }
      if (period.empty())
        throw RuleError("LOmega: the period blocks derive an empty sequence");
      // Lexicographic over the prefix blocks' choices, first block slowest.
      const std::size_t pb = out.prefix_blocks;
      bool done = std::any_of(m.begin(), m.begin() + static_cast<long>(pb), [](const auto& set) { return set.empty(); });
      std::vector<std::size_t> pick(pb, 0);
      while (!done) {
        std::vector<Formula> prefix;
        for (std::size_t i = 0; i < pb; ++i)
          prefix.insert(prefix.end(), m[i][pick[i]].begin(), m[i][pick[i]].end());
        Sequent p = with_ant(Antecedent::periodic(UpSequence(std::move(prefix), period)), e);
        if (std::find(out.premises.begin(), out.premises.end(), p) == out.premises.end())
          out.premises.push_back(p);
        done = true;
        for (std::size_t i = pb; i-- > 0;) {
          if (++pick[i] < m[i].size()) {
            done = false;
            break;
          }
          pick[i] = 0;
        }
      }
      return out;
    }
    case Rule::OverR: {
      require_succ(Kind::Over);
      if (a.type() != SequenceType::Finite)
        throw RuleError("OverR needs a type-1 antecedent");
      std::vector<Formula> xs = a.items();
      xs.push_back(e.right());
      push(Antecedent::finite(std::move(xs)), e.left());
      return out;
    }
    case Rule::UnderR: {
      require_succ(Kind::Under);
      const std::vector<Formula> front{e.left()};
      push(Antecedent::concat(front, a), e.right());
      return out;
    }
    case Rule::ProdR: {
      require_succ(Kind::Prod);
      const std::size_t k = need(args.split, "a split position", r);
      std::vector<Formula> gamma = finite_block(a, 0, k, r);
      push(Antecedent::finite(std::move(gamma)), e.left());
      if (!a.infinite() && k > a.length())
        throw RuleError("ProdR: split past the end");
      push(a.drop(k), e.right());
      return out;
    }
    case Rule::MeetR: {
      require_succ(Kind::Meet);
      push(a, e.left());
      push(a, e.right());
      return out;
    }
    case Rule::JoinR: {
      require_succ(Kind::Join);
      const std::size_t i = need(args.choice, "a choice", r);
      if (i != 1 && i != 2)
        throw RuleError("JoinR: choice must be 1 or 2");
      push(a, i == 1 ? e.left() : e.right());
      return out;
    }
    case Rule::StarR: {
      require_succ(Kind::Star);
      if (a.type() != SequenceType::Finite)
        throw RuleError("StarR needs a type-1 antecedent");
      if (!args.blocks)
        throw RuleError("StarR needs block lengths");
      std::size_t pos = 0;
      for (std::size_t l : *args.blocks) {
        push(Antecedent::finite(finite_block(a, pos, l, r)), e.operand());
        pos += l;
      }
      if (pos != a.length())
        throw RuleError("StarR: blocks cover " + std::to_string(pos) + " of " + std::to_string(a.length())
                        + " items");
      return out;
    }
    }
    throw RuleError("unknown rule");
  }

  // --- Inversion -----------------------------------------------------------

  namespace
  {
    bool invertible_left(const Formula& f)
    {
      switch (f.kind()) {
      case Kind::Join:
      case Kind::Prod:
      case Kind::Star:
      case Kind::Omega: return true;
      default: return false;
      }
    }

    bool invertible_right(const Formula& f)
    {
      switch (f.kind()) {
      case Kind::Meet:
      case Kind::Under:
      case Kind::Over: return true;
      default: return false;
      }
    }

    /// Expand a ground sequent; StarL introduces fresh parameters n1, n2, ...
    void saturate(const SequentPattern& p, std::vector<SequentPattern>& out, bool& lazy, std::size_t& fresh)
    {
      // Left rules at finite, ungrouped positions.
      const auto& items = p.antecedent.items;
      for (std::size_t i = 0; i < items.size(); ++i) {
        if (items[i].repeated())
          continue;
        const Formula& f = items[i].body[0];
        if (!invertible_left(f))
          continue;
        const bool last = i + 1 == items.size() && p.antecedent.period.empty();
        if (f.kind() == Kind::Omega && !last)
          continue;
        auto with = [&](std::vector<PatternItem> repl) {
          SequentPattern q = p;
          q.antecedent.items.erase(q.antecedent.items.begin() + static_cast<long>(i));
          q.antecedent.items.insert(q.antecedent.items.begin() + static_cast<long>(i), repl.begin(), repl.end());
          return q;
        };
        switch (f.kind()) {
        case Kind::Prod: saturate(with({{{f.left()}, {}}, {{f.right()}, {}}}), out, lazy, fresh); return;
        case Kind::Join:
          saturate(with({{{f.left()}, {}}}), out, lazy, fresh);
          saturate(with({{{f.right()}, {}}}), out, lazy, fresh);
          return;
        case Kind::Star:
          saturate(with({{{f.operand()}, "n" + std::to_string(++fresh)}}), out, lazy, fresh);
          return;
        case Kind::Omega: {
          SequentPattern q = p;
          q.antecedent.items.pop_back();
          q.antecedent.period = {f.operand()};
          saturate(q, out, lazy, fresh);
          return;
        }
        default: break;
        }
      }
      const Formula& e = p.succedent;
      if (invertible_right(e)) {
        SequentPattern q = p;
        switch (e.kind()) {
        case Kind::Meet:
          q.succedent = e.left();
          saturate(q, out, lazy, fresh);
          q.succedent = e.right();
          saturate(q, out, lazy, fresh);
          return;
        case Kind::Under:
          q.succedent = e.right();
          q.antecedent.items.insert(q.antecedent.items.begin(), PatternItem{{e.left()}, {}});
          saturate(q, out, lazy, fresh);
          return;
        case Kind::Over:
          if (!p.antecedent.period.empty())
            break;
          q.succedent = e.left();
          q.antecedent.items.push_back({{e.right()}, {}});
          saturate(q, out, lazy, fresh);
          return;
        default: break;
        }
      }
      for (const Formula& f : p.antecedent.period)
        if (invertible_left(f))
          lazy = true;
      out.push_back(p);
    }
  }

  Inversion invert(const Sequent& s)
  {
    Inversion r;
    std::size_t fresh = 0;
    saturate(SequentPattern::of(s), r.leaves, r.lazy, fresh);
    return r;
  }
}
