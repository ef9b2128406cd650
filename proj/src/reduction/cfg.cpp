// Grammar ingestion, normal forms and CYK.

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "omegact/error.hpp"
#include "omegact/reduction.hpp"

namespace omegact
{
  namespace
  {
    using Body = std::vector<std::string>;
    using Rules = std::map<std::string, std::set<Body>>;

    bool is_nonterminal_name(const std::string& s) { return !s.empty() && std::isupper(static_cast<unsigned char>(s[0])); }

    std::string trim(std::string_view s)
    {
      std::size_t a = 0, b = s.size();
      while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
        ++a;
      while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
        --b;
      return std::string(s.substr(a, b - a));
    }

    /// Splits one alternative into symbols; `aSb` is a, S, b.
    Body symbols(const std::string& alt, std::size_t line)
    {
      Body out;
      std::istringstream in(alt);
      std::string tok;
      while (in >> tok) {
        if (tok == "eps" || tok == "ε")
          continue;
        for (std::size_t i = 0; i < tok.size();) {
          const unsigned char c = static_cast<unsigned char>(tok[i]);
          if (std::islower(c)) {
            out.push_back(std::string(1, tok[i]));
            ++i;
          } else if (std::isupper(c)) {
            std::size_t j = i + 1;
            while (j < tok.size()
                   && (std::isdigit(static_cast<unsigned char>(tok[j])) || tok[j] == '_' || tok[j] == '\''))
              ++j;
            out.push_back(tok.substr(i, j - i));
            i = j;
          } else {
            throw ParseError("line " + std::to_string(line) + ": unexpected character '" + std::string(1, tok[i])
                               + "' in a rule body",
                             i);
          }
        }
      }
      return out;
    }

    /// Grammar from a rule map, start first, other nonterminals in `order`.
    Cfg assemble(const Rules& r, const std::string& start, const Alphabet& terminals,
                 const std::vector<std::string>& order)
    {
      Cfg g;
      g.start = start;
      g.terminals = terminals;
      g.nonterminals.push_back(start);
      for (const auto& nt : order)
        if (nt != start && r.count(nt))
          g.nonterminals.push_back(nt);
      for (const auto& nt : g.nonterminals)
        for (const Body& b : r.at(nt))
          g.productions.push_back({nt, b});
      return g;
    }

    std::string fresh(const std::string& base, const std::set<std::string>& used)
    {
      if (!used.count(base))
        return base;
      for (std::size_t n = 1;; ++n)
        if (!used.count(base + std::to_string(n)))
          return base + std::to_string(n);
    }

    /// Drop epsilon rules, unit rules and useless symbols.  The start
    /// symbol stays even when its language becomes empty.
    Rules clean(const Cfg& g)
    {
      const auto nulls = nullable(g);
      const std::set<std::string> null(nulls.begin(), nulls.end());
      Rules r;
      for (const auto& nt : g.nonterminals)
        r[nt];
      for (const auto& p : g.productions) {
        // Every way of erasing nullable occurrences.
        std::function<void(std::size_t, Body&)> go = [&](std::size_t i, Body& cur) {
          if (i == p.rhs.size()) {
            if (!cur.empty())
              r[p.lhs].insert(cur);
            return;
          }
          cur.push_back(p.rhs[i]);
          go(i + 1, cur);
          cur.pop_back();
          if (null.count(p.rhs[i]))
            go(i + 1, cur);
        };
        Body cur;
        go(0, cur);
      }

      auto unit = [&](const Body& b) { return b.size() == 1 && r.count(b[0]); };
      Rules out;
      for (const auto& [a, _] : r) {
        std::set<std::string> closure{a};
        std::vector<std::string> stack{a};
        while (!stack.empty()) {
          const std::string x = stack.back();
          stack.pop_back();
          for (const Body& b : r[x])
            if (unit(b) && closure.insert(b[0]).second)
              stack.push_back(b[0]);
        }
        auto& dst = out[a];
        for (const auto& x : closure)
          for (const Body& b : r[x])
            if (!unit(b))
              dst.insert(b);
      }

      // Generating, then reachable.
      std::set<std::string> gen;
      for (bool changed = true; changed;) {
        changed = false;
        for (const auto& [a, bodies] : out)
          if (!gen.count(a))
            for (const Body& b : bodies)
              if (std::all_of(b.begin(), b.end(), [&](const std::string& s) { return !out.count(s) || gen.count(s); })) {
                gen.insert(a);
                changed = true;
                break;
              }
      }
      for (auto& [a, bodies] : out)
        for (auto it = bodies.begin(); it != bodies.end();)
          if (std::any_of(it->begin(), it->end(), [&](const std::string& s) { return out.count(s) && !gen.count(s); }))
            it = bodies.erase(it);
          else
            ++it;
      std::set<std::string> reach{g.start};
      std::vector<std::string> stack{g.start};
      while (!stack.empty()) {
        const std::string x = stack.back();
        stack.pop_back();
        for (const Body& b : out[x])
          for (const auto& s : b)
            if (out.count(s) && reach.insert(s).second)
              stack.push_back(s);
      }
      for (auto it = out.begin(); it != out.end();)
        if (!reach.count(it->first))
          it = out.erase(it);
        else
          ++it;
      return out;
    }
  }

  bool Cfg::is_terminal(const std::string& sym) const
  {
    return std::find(terminals.begin(), terminals.end(), sym) != terminals.end();
  }

  std::vector<const Production*> Cfg::rules_of(const std::string& nt) const
  {
    std::vector<const Production*> out;
    for (const auto& p : productions)
      if (p.lhs == nt)
        out.push_back(&p);
    return out;
  }

  std::string Cfg::str() const
  {
    std::string out;
    for (const auto& nt : nonterminals) {
      const auto rs = rules_of(nt);
      if (rs.empty())
        continue;
      out += nt + " ->";
      for (std::size_t i = 0; i < rs.size(); ++i) {
        out += i ? " |" : "";
        if (rs[i]->rhs.empty())
          out += " eps";
        for (const auto& s : rs[i]->rhs)
          out += " " + s;
      }
      out += "\n";
    }
    return out;
  }

  Cfg parse_cfg(std::string_view text, const Alphabet& terminals)
  {
    Cfg g;
    g.terminals = terminals;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (auto h = line.find('#'); h != std::string::npos)
        line.erase(h);
      if (trim(line).empty())
        continue;
      const auto arrow = line.find("->");
      if (arrow == std::string::npos)
        throw ParseError("line " + std::to_string(lineno) + ": expected '->'", 0);
      const std::string lhs = trim(std::string_view(line).substr(0, arrow));
      const Body l = symbols(lhs, lineno);
      if (l.size() != 1 || !is_nonterminal_name(l[0]))
        throw ParseError("line " + std::to_string(lineno) + ": left side must be one nonterminal, got '" + lhs + "'", 0);
      if (g.start.empty())
        g.start = l[0];
      if (std::find(g.nonterminals.begin(), g.nonterminals.end(), l[0]) == g.nonterminals.end())
        g.nonterminals.push_back(l[0]);
      std::string rest = line.substr(arrow + 2);
      std::size_t from = 0;
      for (;;) {
        const auto bar = rest.find('|', from);
        g.productions.push_back({l[0], symbols(rest.substr(from, bar - from), lineno)});
        if (bar == std::string::npos)
          break;
        from = bar + 1;
      }
    }
    if (g.productions.empty())
      throw Error("empty grammar");
    validate(g);
    return g;
  }

  void validate(const Cfg& g)
  {
    const std::set<std::string> nts(g.nonterminals.begin(), g.nonterminals.end());
    if (!nts.count(g.start))
      throw Error("start symbol " + g.start + " is not declared");
    for (const auto& p : g.productions) {
      if (!nts.count(p.lhs))
        throw Error("undeclared nonterminal " + p.lhs);
      for (const auto& s : p.rhs)
        if (!nts.count(s) && !g.is_terminal(s))
          throw Error(is_nonterminal_name(s) ? "nonterminal " + s + " has no rule"
                                             : "terminal " + s + " is not in the alphabet");
    }
  }

  std::vector<std::string> nullable(const Cfg& g)
  {
    std::set<std::string> null;
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& p : g.productions)
        if (!null.count(p.lhs)
            && std::all_of(p.rhs.begin(), p.rhs.end(), [&](const std::string& s) { return null.count(s) > 0; })) {
          null.insert(p.lhs);
          changed = true;
        }
    }
    return {null.begin(), null.end()};
  }

  Cfg to_gnf(const Cfg& g)
  {
    validate(g);
    const auto nulls = nullable(g);
    if (std::find(nulls.begin(), nulls.end(), g.start) != nulls.end())
      throw Error("the empty word is in L(" + g.start
                  + "); lexicon types p, p/q, (p/q)/r cannot encode it, so the grammar is rejected");
    Rules r = clean(g);
    std::set<std::string> used(g.nonterminals.begin(), g.nonterminals.end());
    auto is_nt = [&](const std::string& s) { return r.count(s) > 0; };

    // Order: start first, then the input order.
    std::vector<std::string> order;
    for (const auto& nt : g.nonterminals)
      if (r.count(nt))
        order.push_back(nt);

    // Terminals after the head become nonterminals.
    std::map<std::string, std::string> wrap;
    for (const auto& nt : std::vector<std::string>(order)) {
      std::set<Body> bodies;
      for (Body b : r[nt]) {
        for (std::size_t i = 1; i < b.size(); ++i)
          if (!is_nt(b[i])) {
            auto it = wrap.find(b[i]);
            if (it == wrap.end()) {
              std::string name = b[i];
              name[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
              name = fresh(name, used);
              used.insert(name);
              it = wrap.emplace(b[i], name).first;
            }
            b[i] = it->second;
          }
        bodies.insert(b);
      }
      r[nt] = bodies;
    }
    for (const auto& [t, name] : wrap) {
      r[name] = {Body{t}};
      order.push_back(name);
    }

    // Left-corner elimination in the fixed order.
    std::vector<std::string> zs;
    for (std::size_t i = 0; i < order.size(); ++i) {
      const std::string& ai = order[i];
      for (std::size_t j = 0; j < i; ++j) {
        const std::string& aj = order[j];
        std::set<Body> next;
        for (const Body& b : r[ai]) {
          if (b[0] != aj) {
            next.insert(b);
            continue;
          }
          for (const Body& d : r[aj]) {
            Body nb = d;
            nb.insert(nb.end(), b.begin() + 1, b.end());
            next.insert(nb);
          }
        }
        r[ai] = next;
      }
      std::vector<Body> rec, base;
      for (const Body& b : r[ai])
        (b[0] == ai ? rec : base).push_back(b);
      if (rec.empty())
        continue;
      const std::string z = fresh("Z", used);
      used.insert(z);
      zs.push_back(z);
      std::set<Body> ai_rules, z_rules;
      for (Body b : base) {
        ai_rules.insert(b);
        b.push_back(z);
        ai_rules.insert(b);
      }
      for (const Body& b : rec) {
        Body alpha(b.begin() + 1, b.end());
        z_rules.insert(alpha);
        alpha.push_back(z);
        z_rules.insert(alpha);
      }
      r[ai] = ai_rules;
      r[z] = z_rules;
    }

    // Substitute heads until every rule starts with a terminal.
    auto done = [&](const std::string& nt) {
      return std::all_of(r[nt].begin(), r[nt].end(), [&](const Body& b) { return !is_nt(b[0]); });
    };
    for (bool changed = true; changed;) {
      changed = false;
      for (auto& [nt, bodies] : r) {
        std::set<Body> next;
        bool touched = false;
        for (const Body& b : bodies) {
          if (!is_nt(b[0]) || !done(b[0])) {
            next.insert(b);
            continue;
          }
          touched = true;
          for (const Body& d : r[b[0]]) {
            Body nb = d;
            nb.insert(nb.end(), b.begin() + 1, b.end());
            next.insert(nb);
          }
        }
        if (touched) {
          bodies = next;
          changed = true;
        }
      }
    }
    for (const auto& [nt, bodies] : r)
      for (const Body& b : bodies)
        if (is_nt(b[0]))
          throw Error("internal: Greibach conversion left " + nt + " with a nonterminal head");

    // Tails longer than two become one nonterminal per suffix.
    std::map<Body, std::string> tail;
    for (const auto& [nt, bodies] : r)
      for (const Body& b : bodies)
        for (std::size_t k = 1; k + 1 < b.size(); ++k)
          tail.emplace(Body(b.begin() + static_cast<long>(k), b.end()), "");
    for (auto& [seq, name] : tail) {
      name = fresh("N", used);
      used.insert(name);
    }
    auto ref = [&](const Body& seq, Body& out) {
      if (seq.size() == 1)
        out.push_back(seq[0]);
      else if (seq.size() > 1)
        out.push_back(tail.at(seq));
    };
    Rules out;
    for (const auto& [nt, bodies] : r)
      for (const Body& b : bodies) {
        if (b.size() <= 3) {
          out[nt].insert(b);
          continue;
        }
        Body nb{b[0]};
        ref(Body(b.begin() + 1, b.end()), nb);
        out[nt].insert(nb);
      }
    for (const auto& [seq, name] : tail) {
      // [B rest] -> d gamma [rest], where gamma is a tail of B's rules.
      const Body rest(seq.begin() + 1, seq.end());
      for (const Body& d : r.at(seq[0])) {
        Body nb{d[0]};
        ref(Body(d.begin() + 1, d.end()), nb);
        ref(rest, nb);
        out[name].insert(nb);
      }
    }
    for (auto& [nt, bodies] : out)
      for (const Body& b : bodies)
        if (b.size() > 3)
          throw Error("internal: tail compression produced " + nt + " with a long rule");
    for (const auto& z : zs)
      order.push_back(z);
    for (const auto& [seq, name] : tail)
      order.push_back(name);

    out[g.start];
    Cfg pre = assemble(out, g.start, g.terminals, order);
    Rules tidy = clean(pre);
    tidy[g.start];
    return assemble(tidy, g.start, g.terminals, pre.nonterminals);
  }

  bool is_gnf2(const Cfg& g)
  {
    const std::set<std::string> nts(g.nonterminals.begin(), g.nonterminals.end());
    for (const auto& p : g.productions) {
      if (p.rhs.empty() || p.rhs.size() > 3 || !g.is_terminal(p.rhs[0]))
        return false;
      for (std::size_t i = 1; i < p.rhs.size(); ++i)
        if (!nts.count(p.rhs[i]))
          return false;
    }
    return true;
  }

  bool cyk_membership(const Cfg& g, const Word& w)
  {
    validate(g);
    if (w.empty()) {
      const auto n = nullable(g);
      return std::find(n.begin(), n.end(), g.start) != n.end();
    }
    // Binary normal form over the cleaned rules.
    Rules r = clean(g);
    std::set<std::string> used;
    for (const auto& [nt, _] : r)
      used.insert(nt);
    struct Bin
    {
      std::string lhs, left, right;
    };
    std::vector<Bin> bins;
    std::map<std::string, std::set<std::string>> by_letter;  // c -> A with A -> c
    std::map<std::string, std::string> wrap;
    auto sym = [&](const std::string& s) {
      if (r.count(s))
        return s;
      auto it = wrap.find(s);
      if (it == wrap.end()) {
        const std::string name = fresh("T_" + s, used);
        used.insert(name);
        by_letter[s].insert(name);
        it = wrap.emplace(s, name).first;
      }
      return it->second;
    };
    for (const auto& [nt, bodies] : r)
      for (const Body& b : bodies) {
        if (b.size() == 1) {
          by_letter[b[0]].insert(nt);
          continue;
        }
        std::string lhs = nt;
        for (std::size_t i = 0; i + 2 < b.size(); ++i) {
          const std::string next = fresh("C", used);
          used.insert(next);
          bins.push_back({lhs, sym(b[i]), next});
          lhs = next;
        }
        bins.push_back({lhs, sym(b[b.size() - 2]), sym(b.back())});
      }

    const std::size_t n = w.size();
    std::vector<std::vector<std::set<std::string>>> t(n, std::vector<std::set<std::string>>(n + 1));
    for (std::size_t i = 0; i < n; ++i)
      if (auto it = by_letter.find(w[i]); it != by_letter.end())
        t[i][i + 1] = it->second;
    for (std::size_t len = 2; len <= n; ++len)
      for (std::size_t i = 0; i + len <= n; ++i)
        for (std::size_t k = i + 1; k < i + len; ++k)
          for (const Bin& b : bins)
            if (t[i][k].count(b.left) && t[k][i + len].count(b.right))
              t[i][i + len].insert(b.lhs);
    return t[0][n].count(g.start) > 0;
  }
}
