// Language semantics over finite interpretations, cut at a word length.
// Only used to sample for counter-witnesses; nothing here decides validity.

#include <algorithm>
#include <functional>
#include <map>

#include "lasso_util.hpp"
#include "omegact/prover.hpp"

namespace omegact
{
  namespace
  {
    using Lang = std::set<Word>;

    Word cat(const Word& a, const Word& b)
    {
      Word out = a;
      out.insert(out.end(), b.begin(), b.end());
      return out;
    }

    class Semantics
    {
    public:
      Semantics(const Interpretation& i, const Alphabet& letters, std::size_t max_lasso, std::size_t max_len)
        : interp_(i), letters_(letters), max_lasso_(max_lasso), max_len_(max_len)
      {
      }

      const Lang& star(const Formula& f)
      {
        auto it = cache_.find(f);
        if (it != cache_.end())
          return it->second;
        Lang out;
        switch (f.kind()) {
        case Kind::VarStar: {
          auto v = interp_.star.find(f.name());
          if (v != interp_.star.end())
            for (const Word& w : v->second)
              if (w.size() <= max_len_)
                out.insert(w);
          break;
        }
        case Kind::Prod:
          for (const Word& a : star(f.left()))
            for (const Word& b : star(f.right()))
              if (a.size() + b.size() <= max_len_)
                out.insert(cat(a, b));
          break;
        case Kind::Join:
          out = star(f.left());
          out.insert(star(f.right()).begin(), star(f.right()).end());
          break;
        case Kind::Meet:
          for (const Word& a : star(f.left()))
            if (star(f.right()).count(a))
              out.insert(a);
          break;
        case Kind::Star: {
          out.insert(Word{});
          std::vector<Word> frontier{Word{}};
          while (!frontier.empty()) {
            std::vector<Word> next;
            for (const Word& w : frontier)
              for (const Word& a : star(f.operand()))
                if (!a.empty() && w.size() + a.size() <= max_len_ && out.insert(cat(w, a)).second)
                  next.push_back(cat(w, a));
            frontier.swap(next);
          }
          break;
        }
        case Kind::Under:  // B \ A, exact on words short enough that every b.w is in range
          for (const Word& w : universe())
            if (w.size() + longest(star(f.left())) <= max_len_
                && all_of(star(f.left()), [&](const Word& b) { return star(f.right()).count(cat(b, w)) > 0; }))
              out.insert(w);
          break;
        case Kind::Over:
          if (f.right().sort() == Sort::Star) {
            for (const Word& w : universe())
              if (w.size() + longest(star(f.right())) <= max_len_
                  && all_of(star(f.right()), [&](const Word& b) { return star(f.left()).count(cat(w, b)) > 0; }))
                out.insert(w);
          } else {
            for (const Word& w : universe()) {
              bool ok = true;
              for (const LassoWord& t : lassos())
                if (omega(f.right(), t) && !omega(f.left(), LassoWord(cat(w, t.prefix()), t.period()))) {
                  ok = false;
                  break;
                }
              if (ok)
                out.insert(w);
            }
          }
          break;
        default: throw Error("not a star-sorted formula: " + f.str());
        }
        return cache_.emplace(f, std::move(out)).first->second;
      }

      bool omega(const Formula& f, const LassoWord& t)
      {
        switch (f.kind()) {
        case Kind::VarOmega: throw Error("omega-sorted variables have no sampled interpretation: " + f.str());
        case Kind::Prod:
          for (const Word& a : star(f.left()))
            if (detail::slice(t, 0, a.size()) == a && omega(f.right(), detail::shift(t, a.size())))
              return true;
          return false;
        case Kind::Join: return omega(f.left(), t) || omega(f.right(), t);
        case Kind::Meet: return omega(f.left(), t) && omega(f.right(), t);
        case Kind::Under:
          for (const Word& b : star(f.left()))
            if (!omega(f.right(), LassoWord(cat(b, t.prefix()), t.period())))
              return false;
          return true;
        case Kind::Omega: {
          const Lang& x = star(f.operand());
          return detail::periodic_cut(t, [&](std::size_t p) {
                   std::vector<std::size_t> lens;
                   for (const Word& a : x)
                     if (!a.empty() && detail::slice(t, p, a.size()) == a)
                       lens.push_back(a.size());
                   return lens;
                 })
            .has_value();
        }
        default: throw Error("not an omega-sorted formula: " + f.str());
        }
      }

      /// t in the product denoted by the antecedent.
      bool antecedent(const Antecedent& a, const LassoWord& t)
      {
        if (a.type() == SequenceType::OmegaTail) {
          const auto& items = a.items();
          std::function<bool(std::size_t, std::size_t)> go = [&](std::size_t i, std::size_t pos) {
            if (i + 1 == items.size())
              return omega(items[i], detail::shift(t, pos));
            for (const Word& w : star(items[i]))
              if (detail::slice(t, pos, w.size()) == w && go(i + 1, pos + w.size()))
                return true;
            return false;
          };
          return go(0, 0);
        }
        if (a.type() != SequenceType::Periodic)
          throw Error("a finite antecedent denotes finite words");
        // Nodes (canonical position in t, canonical index in the antecedent).
        const auto& pre = a.up().prefix();
        const auto& per = a.up().period();
        const std::size_t tn = t.prefix().size() + t.period().size();
        const std::size_t an = pre.size() + per.size();
        auto item = [&](std::size_t j) -> const Formula& { return j < pre.size() ? pre[j] : per[j - pre.size()]; };
        auto next_j = [&](std::size_t j) { return j + 1 < an ? j + 1 : pre.size(); };
        auto id = [&](std::size_t p, std::size_t j) { return p * an + j; };
        struct Edge
        {
          std::size_t to;
          bool consumes;
        };
        std::vector<std::vector<Edge>> g(tn * an);
        for (std::size_t p = 0; p < tn; ++p)
          for (std::size_t j = 0; j < an; ++j)
            for (const Word& w : star(item(j)))
              if (detail::slice(t, p, w.size()) == w)
                g[id(p, j)].push_back({id(detail::canon(t, p + w.size()), next_j(j)), !w.empty()});
        auto reach = [&](std::size_t from) {
          std::vector<bool> seen(g.size(), false);
          std::vector<std::size_t> stack{from};
          seen[from] = true;
          while (!stack.empty()) {
            const std::size_t x = stack.back();
            stack.pop_back();
            for (const Edge& e : g[x])
              if (!seen[e.to]) {
                seen[e.to] = true;
                stack.push_back(e.to);
              }
          }
          return seen;
        };
        const auto from_start = reach(id(0, 0));
        for (std::size_t x = 0; x < g.size(); ++x) {
          if (!from_start[x])
            continue;
          for (const Edge& e : g[x])
            if (e.consumes && reach(e.to)[x])
              return true;
        }
        return false;
      }

      const std::vector<Word>& universe()
      {
        if (universe_.empty()) {
          universe_.push_back({});
          for (std::size_t i = 0; i < universe_.size(); ++i)
            if (universe_[i].size() < max_len_)
              for (const auto& x : letters_)
                universe_.push_back(cat(universe_[i], {x}));
        }
        return universe_;
      }

      const std::vector<LassoWord>& lassos()
      {
        if (lassos_.empty()) {
          std::set<std::string> seen;
          for (const Word& u : universe())
            for (const Word& v : universe())
              if (u.size() <= max_lasso_ && !v.empty() && v.size() <= max_lasso_) {
                LassoWord t(u, v);
                if (seen.insert(t.str()).second)
                  lassos_.push_back(std::move(t));
              }
        }
        return lassos_;
      }

    private:
      static std::size_t longest(const Lang& l)
      {
        std::size_t n = 0;
        for (const Word& w : l)
          n = std::max(n, w.size());
        return n;
      }

      template <typename F>
      static bool all_of(const Lang& l, F f)
      {
        for (const Word& w : l)
          if (!f(w))
            return false;
        return true;
      }

      const Interpretation& interp_;
      Alphabet letters_;
      std::size_t max_lasso_, max_len_;
      std::map<Formula, Lang> cache_;
      std::vector<Word> universe_;
      std::vector<LassoWord> lassos_;
    };
  }

  Interpretation singleton_interpretation(const Sequent& s)
  {
    std::set<std::string> star, omega;
    for (const Formula& f : s.antecedent().items())
      f.collect_vars(star, omega);
    if (s.antecedent().infinite())
      for (const Formula& f : s.antecedent().up().period())
        f.collect_vars(star, omega);
    s.succedent().collect_vars(star, omega);
    Interpretation i;
    for (const auto& x : star)
      i.star[x] = {Word{x}};
    return i;
  }

  std::optional<LassoWord> semantic_counter_witness(const Sequent& s, const Interpretation& interp,
                                                    const Alphabet& letters, std::size_t max_lasso, std::size_t max_len)
  {
    if (s.type() == SequenceType::Finite)
      throw Error("semantic_counter_witness needs a type-2 or type-3 sequent");
    Semantics sem(interp, letters, max_lasso, max_len);
    for (const LassoWord& t : sem.lassos())
      if (sem.antecedent(s.antecedent(), t) && !sem.omega(s.succedent(), t))
        return t;
    return std::nullopt;
  }

  std::optional<Word> finite_counter_witness(const Sequent& s, const Interpretation& interp, const Alphabet& letters,
                                             std::size_t max_len)
  {
    if (s.type() != SequenceType::Finite)
      throw Error("finite_counter_witness needs a type-1 sequent");
    Semantics sem(interp, letters, 0, max_len);
    Lang prod{Word{}};
    for (const Formula& f : s.antecedent().items()) {
      Lang next;
      for (const Word& a : prod)
        for (const Word& b : sem.star(f))
          if (a.size() + b.size() <= max_len)
            next.insert(cat(a, b));
      prod.swap(next);
    }
    const Lang& rhs = sem.star(s.succedent());
    for (const Word& w : prod)
      if (!rhs.count(w))
        return w;
    return std::nullopt;
  }
}
