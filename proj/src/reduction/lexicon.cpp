// Categorial lexicons for 2-GNF grammars, the encoding check and the
// totality sequent.

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>

#include "omegact/error.hpp"
#include "omegact/reduction.hpp"

namespace omegact
{
  namespace
  {
    Formula fold_right(const std::vector<Formula>& xs, Formula (*op)(Formula, Formula))
    {
      Formula out = xs.back();
      for (std::size_t i = xs.size() - 1; i-- > 0;)
        out = op(xs[i], out);
      return out;
    }

    const Alphabet kReductionLetters = {"a", "b"};

    std::vector<Word> words_up_to(const Alphabet& letters, std::size_t max_len)
    {
      std::vector<Word> out;
      std::vector<Word> layer{Word{}};
      for (std::size_t n = 1; n <= max_len; ++n) {
        std::vector<Word> next;
        for (const Word& w : layer)
          for (const auto& c : letters) {
            Word x = w;
            x.push_back(c);
            next.push_back(std::move(x));
          }
        out.insert(out.end(), next.begin(), next.end());
        layer.swap(next);
      }
      return out;
    }

    /// Occurrences of each variable, signed by polarity.  A Lambek sequent
    /// whose counts do not cancel is unprovable, so such type choices can be
    /// skipped without changing the answer.
    void count(const Formula& f, int sign, std::map<std::string, int>& out)
    {
      switch (f.kind()) {
      case Kind::VarStar: out[f.name()] += sign; break;
      case Kind::Over:
        count(f.left(), sign, out);
        count(f.right(), -sign, out);
        break;
      case Kind::Under:
        count(f.left(), -sign, out);
        count(f.right(), sign, out);
        break;
      case Kind::Prod:
        count(f.left(), sign, out);
        count(f.right(), sign, out);
        break;
      default: throw Error("count check only covers products and residuals: " + f.str());
      }
    }

    std::string word_text(const Word& w)
    {
      std::string out;
      for (const auto& c : w)
        out += c;
      return out.empty() ? "eps" : out;
    }
  }

  const std::vector<Formula>& TypeLexicon::of(const std::string& terminal) const
  {
    static const std::vector<Formula> none;
    auto it = types.find(terminal);
    return it == types.end() ? none : it->second;
  }

  std::string lexicon_var(const std::string& nt, std::size_t index) { return nt + "_" + std::to_string(index); }

  TypeLexicon cfg_to_lambek(const Cfg& g, std::size_t index)
  {
    if (!is_gnf2(g))
      throw Error("cfg_to_lambek needs rules of the forms A -> c, A -> c B, A -> c B C");
    TypeLexicon lex;
    lex.index = index;
    lex.start = Formula::var(lexicon_var(g.start, index));
    for (const auto& c : g.terminals)
      lex.types[c];
    auto v = [&](const std::string& nt) { return Formula::var(lexicon_var(nt, index)); };
    for (const auto& p : g.productions) {
      Formula t = v(p.lhs);
      if (p.rhs.size() == 2)
        t = Formula::over(t, v(p.rhs[1]));
      else if (p.rhs.size() == 3)
        t = Formula::over(Formula::over(t, v(p.rhs[2])), v(p.rhs[1]));
      auto& list = lex.types[p.rhs[0]];
      if (std::find(list.begin(), list.end(), t) == list.end())
        list.push_back(t);
    }
    return lex;
  }

  bool is_lexicon_shape(const Formula& f)
  {
    auto var = [](const Formula& x) { return x.kind() == Kind::VarStar; };
    if (var(f))
      return true;
    if (f.kind() != Kind::Over || !var(f.right()))
      return false;
    const Formula& l = f.left();
    return var(l) || (l.kind() == Kind::Over && var(l.left()) && var(l.right()));
  }

  bool lexicon_accepts(const TypeLexicon& lex, const Word& w, const SearchOptions& opts)
  {
    if (w.empty())
      return false;
    std::vector<const std::vector<Formula>*> lists;
    for (const auto& c : w) {
      lists.push_back(&lex.of(c));
      if (lists.back()->empty())
        return false;
    }
    // Variable counts per type, as dense vectors.
    std::map<std::string, std::size_t> ids;
    std::vector<std::vector<std::vector<int>>> sig(w.size());
    auto vec = [&](const Formula& f, int sign) {
      std::map<std::string, int> m;
      count(f, sign, m);
      std::vector<int> v(ids.size());
      for (const auto& [x, n] : m) {
        auto it = ids.emplace(x, ids.size()).first;
        if (it->second >= v.size())
          v.resize(it->second + 1);
        v[it->second] += n;
      }
      return v;
    };
    const std::vector<int> goal = vec(lex.start, -1);
    for (std::size_t i = 0; i < w.size(); ++i)
      for (const Formula& t : *lists[i])
        sig[i].push_back(vec(t, 1));
    const std::size_t n = w.size();
    auto pad = [&](std::vector<int> v) {
      v.resize(ids.size(), 0);
      return v;
    };
    auto add = [](std::vector<int> a, const std::vector<int>& b) {
      for (std::size_t k = 0; k < b.size(); ++k)
        a[k] += b[k];
      return a;
    };
    // suffix[i]: count sums reachable by choices for positions i..n-1.
    std::vector<std::set<std::vector<int>>> suffix(n + 1);
    suffix[n].insert(pad({}));
    for (std::size_t i = n; i-- > 0;)
      for (const auto& t : sig[i])
        for (const auto& rest : suffix[i + 1])
          suffix[i].insert(add(rest, pad(t)));

    // Depth-first over balanced choices only, first types first.
    const std::size_t depth = 2 * n + 1;
    SearchSession session(opts);
    std::vector<std::size_t> pick(n, 0);
    std::function<bool(std::size_t, const std::vector<int>&)> go = [&](std::size_t i, const std::vector<int>& sum) {
      std::vector<int> need(sum.size());
      for (std::size_t k = 0; k < sum.size(); ++k)
        need[k] = -sum[k];
      if (!suffix[i].count(need))
        return false;
      if (i == n) {
        std::vector<Formula> items;
        for (std::size_t k = 0; k < n; ++k)
          items.push_back((*lists[k])[pick[k]]);
        return session.search(Sequent(Antecedent::finite(std::move(items)), lex.start), depth).found;
      }
      for (std::size_t j = 0; j < lists[i]->size(); ++j) {
        pick[i] = j;
        if (go(i + 1, add(sum, pad(sig[i][j]))))
          return true;
      }
      return false;
    };
    return go(0, pad(goal));
  }

  std::string EncodingReport::str() const
  {
    std::string out = std::to_string(words) + " words checked, " + std::to_string(disagreements.size())
                      + (disagreements.size() == 1 ? " disagreement\n" : " disagreements\n");
    for (const auto& d : disagreements)
      out += "  " + word_text(d.word) + ": grammar " + (d.in_grammar ? "yes" : "no") + ", types "
             + (d.provable ? "yes" : "no") + "\n";
    return out;
  }

  EncodingReport verify_lexicon(const Cfg& g, const TypeLexicon& lex, std::size_t max_len)
  {
    if (max_len == 0)
      throw Error("verify_encoding needs max_len >= 1");
    EncodingReport r;
    for (const Word& w : words_up_to(g.terminals, max_len)) {
      ++r.words;
      const bool in = cyk_membership(g, w);
      const bool pr = lexicon_accepts(lex, w);
      if (in != pr)
        r.disagreements.push_back({w, in, pr});
    }
    return r;
  }

  EncodingReport verify_encoding(const Cfg& g, std::size_t max_len)
  {
    return verify_lexicon(g, cfg_to_lambek(to_gnf(g), 1), max_len);
  }

  Sequent build_totality_sequent(const std::vector<Cfg>& grammars)
  {
    if (grammars.empty() || grammars.size() % 2 != 0)
      throw Error("the totality sequent needs 2n grammars with n >= 1, got " + std::to_string(grammars.size()));
    std::map<std::string, std::vector<Formula>> by_letter;
    std::vector<Formula> starts;
    for (std::size_t i = 0; i < grammars.size(); ++i) {
      for (const auto& c : grammars[i].terminals)
        if (std::find(kReductionLetters.begin(), kReductionLetters.end(), c) == kReductionLetters.end())
          throw Error("grammar " + std::to_string(i + 1) + " uses terminal " + c + " outside {a, b}");
      const TypeLexicon lex = cfg_to_lambek(to_gnf(grammars[i]), i + 1);
      for (const auto& c : kReductionLetters) {
        const auto& ts = lex.of(c);
        by_letter[c].insert(by_letter[c].end(), ts.begin(), ts.end());
      }
      starts.push_back(lex.start);
    }
    std::vector<Formula> letters;
    for (const auto& c : kReductionLetters) {
      if (by_letter[c].empty())
        throw Error("no grammar assigns a type to letter " + c);
      letters.push_back(fold_right(by_letter[c], &Formula::meet));
    }
    std::vector<Formula> disjuncts;
    for (std::size_t i = 0; i + 1 < starts.size(); i += 2)
      disjuncts.push_back(Formula::prod(starts[i], Formula::omega(starts[i + 1])));
    return Sequent(Antecedent::finite({Formula::omega(fold_right(letters, &Formula::join))}),
                   fold_right(disjuncts, &Formula::join));
  }

  std::string CfOmegaWitness::str() const
  {
    auto list = [](const std::vector<std::size_t>& xs) {
      std::string out = "[";
      for (std::size_t i = 0; i < xs.size(); ++i)
        out += (i ? " " : "") + std::to_string(xs[i]);
      return out + "]";
    };
    return "head " + std::to_string(head) + ", stem " + list(stem) + ", loop " + list(loop);
  }

  std::optional<CfOmegaWitness> up_word_in_cf_omega(const LassoWord& w, const Cfg& head, const Cfg& loop,
                                                    std::size_t bound)
  {
    for (const Cfg* g : {&head, &loop}) {
      const auto n = nullable(*g);
      if (std::find(n.begin(), n.end(), g->start) != n.end())
        throw Error("up_word_in_cf_omega needs grammars without the empty word");
    }
    auto slice = [&](std::size_t from, std::size_t to) {
      Word out;
      for (std::size_t i = from; i < to; ++i)
        out.push_back(w.at(i));
      return out;
    };
    std::map<std::pair<std::size_t, std::size_t>, bool> seg;
    auto edge = [&](std::size_t p, std::size_t q) {
      auto it = seg.find({p, q});
      if (it == seg.end())
        it = seg.emplace(std::make_pair(p, q), cyk_membership(loop, slice(p, q))).first;
      return it->second;
    };
    const std::size_t u = w.prefix().size();
    const std::size_t v = w.period().size();

    // parent[q]: previous boundary on a path from a head cut; heads have none.
    std::vector<std::optional<std::size_t>> parent(bound + 1);
    std::vector<bool> seen(bound + 1, false);
    std::deque<std::size_t> queue;
    for (std::size_t n0 = 1; n0 <= bound; ++n0)
      if (cyk_membership(head, slice(0, n0))) {
        seen[n0] = true;
        queue.push_back(n0);
      }
    std::vector<std::size_t> order;
    while (!queue.empty()) {
      const std::size_t p = queue.front();
      queue.pop_front();
      order.push_back(p);
      for (std::size_t q = p + 1; q <= bound; ++q)
        if (!seen[q] && edge(p, q)) {
          seen[q] = true;
          parent[q] = p;
          queue.push_back(q);
        }
    }

    for (std::size_t p : order) {
      if (p < u)
        continue;
      // Shortest loop from p back to its residue.
      std::vector<std::optional<std::size_t>> back(bound + 1);
      std::vector<bool> mark(bound + 1, false);
      std::deque<std::size_t> q2{p};
      mark[p] = true;
      std::optional<std::size_t> end;
      while (!q2.empty() && !end) {
        const std::size_t x = q2.front();
        q2.pop_front();
        for (std::size_t y = x + 1; y <= bound; ++y)
          if (!mark[y] && edge(x, y)) {
            mark[y] = true;
            back[y] = x;
            if ((y - p) % v == 0) {
              end = y;
              break;
            }
            q2.push_back(y);
          }
      }
      if (!end)
        continue;
      CfOmegaWitness out;
      for (std::size_t y = *end; y != p; y = *back[y])
        out.loop.insert(out.loop.begin(), y - *back[y]);
      std::size_t x = p;
      for (; parent[x]; x = *parent[x])
        out.stem.insert(out.stem.begin(), x - *parent[x]);
      out.head = x;
      return out;
    }
    return std::nullopt;
  }
}
