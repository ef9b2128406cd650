#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

#include "lasso_graph.hpp"
#include "omegact/automata.hpp"

namespace omegact
{
  bool up_word_in_buchi(const LassoWord& w, const BuchiAutomaton& b)
  {
    const std::size_t n = w.prefix().size() + w.period().size();
    std::vector<Letter> letters;
    for (std::size_t i = 0; i < n; ++i) {
      auto x = b.letter(w.at(i));
      if (!x)
        return false;
      letters.push_back(*x);
    }
    auto next = [&](std::size_t i) { return i + 1 < n ? i + 1 : w.prefix().size(); };

    // Node (q, i) is q reading position i.
    detail::LassoGraph g;
    for (State q = 0; q < b.num_states(); ++q)
      for (std::size_t i = 0; i < n; ++i)
        g.add_node(b.is_accepting(q) ? 1u : 0u);
    for (State q = 0; q < b.num_states(); ++q)
      for (std::size_t i = 0; i < n; ++i)
        for (State r : b.successors(q, letters[i]))
          g.out[q * n + i].push_back({letters[i], r * n + next(i)});
    for (State q : b.initial_states())
      g.initial.push_back(q * n);
    return detail::find_accepting_lasso(g, 1).has_value();
  }

  namespace
  {
    using Positions = std::vector<bool>;

    /// Positions of the lasso are 0 .. |u|+|v|-1; position |u|+|v| folds
    /// back to |u|.  For a finitary F, step(F)[i] is the set of positions
    /// reachable from i by reading a nonempty word of L(F).
    class LassoMatcher
    {
    public:
      explicit LassoMatcher(const LassoWord& w) : w_(w), n_(w.prefix().size() + w.period().size()) {}

      bool omega_from(const Formula& f, std::size_t i) { return omega(f)[i]; }

    private:
      std::size_t next(std::size_t i) const { return i + 1 < n_ ? i + 1 : w_.prefix().size(); }

      static bool nullable(const Formula& f)
      {
        switch (f.kind()) {
        case Kind::VarStar: return false;
        case Kind::Join: return nullable(f.left()) || nullable(f.right());
        case Kind::Prod: return nullable(f.left()) && nullable(f.right());
        case Kind::Star: return true;
        default: return false;
        }
      }

      /// step plus the empty move when F is nullable.
      Positions reach(const Formula& f, std::size_t i)
      {
        Positions out = step(f)[i];
        if (nullable(f))
          out[i] = true;
        return out;
      }

      const std::vector<Positions>& step(const Formula& f)
      {
        if (auto it = steps_.find(f); it != steps_.end())
          return it->second;
        std::vector<Positions> out(n_, Positions(n_, false));
        switch (f.kind()) {
        case Kind::VarStar:
          for (std::size_t i = 0; i < n_; ++i)
            if (w_.at(i) == f.name())
              out[i][next(i)] = true;
          break;
        case Kind::Join: {
          const auto l = step(f.left());
          const auto& r = step(f.right());
          for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
              out[i][j] = l[i][j] || r[i][j];
          break;
        }
        case Kind::Prod: {
          const auto l = step(f.left());
          const bool left_nullable = nullable(f.left());
          for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j < n_; ++j)
              if (l[i][j]) {
                Positions r = reach(f.right(), j);
                for (std::size_t k = 0; k < n_; ++k)
                  out[i][k] = out[i][k] || r[k];
              }
            if (left_nullable) {
              const Positions& r = step(f.right())[i];
              for (std::size_t k = 0; k < n_; ++k)
                out[i][k] = out[i][k] || r[k];
            }
          }
          break;
        }
        case Kind::Star: {
          // Transitive closure of the operand's step relation.
          const auto s = step(f.operand());
          for (std::size_t i = 0; i < n_; ++i) {
            std::deque<std::size_t> queue;
            for (std::size_t j = 0; j < n_; ++j)
              if (s[i][j]) {
                out[i][j] = true;
                queue.push_back(j);
              }
            while (!queue.empty()) {
              const std::size_t j = queue.front();
              queue.pop_front();
              for (std::size_t k = 0; k < n_; ++k)
                if (s[j][k] && !out[i][k]) {
                  out[i][k] = true;
                  queue.push_back(k);
                }
            }
          }
          break;
        }
        default: break;
        }
        return steps_.emplace(f, std::move(out)).first->second;
      }

      const Positions& omega(const Formula& f)
      {
        if (auto it = omegas_.find(f); it != omegas_.end())
          return it->second;
        Positions out(n_, false);
        switch (f.kind()) {
        case Kind::Omega: {
          // Positions from which the step graph reaches a cycle.
          const auto closure = step(Formula::star(f.operand()));
          Positions target(n_, false);
          for (std::size_t j = 0; j < n_; ++j)
            target[j] = closure[j][j];
          for (std::size_t i = 0; i < n_; ++i) {
            out[i] = target[i];
            for (std::size_t j = 0; j < n_ && !out[i]; ++j)
              out[i] = closure[i][j] && target[j];
          }
          break;
        }
        case Kind::Prod: {
          const Positions tail = omega(f.right());
          for (std::size_t i = 0; i < n_; ++i) {
            const Positions r = reach(f.left(), i);
            for (std::size_t j = 0; j < n_ && !out[i]; ++j)
              out[i] = r[j] && tail[j];
          }
          break;
        }
        case Kind::Join: {
          const Positions l = omega(f.left());
          const Positions& r = omega(f.right());
          for (std::size_t i = 0; i < n_; ++i)
            out[i] = l[i] || r[i];
          break;
        }
        default: break;
        }
        return omegas_.emplace(f, std::move(out)).first->second;
      }

      const LassoWord& w_;
      std::size_t n_;
      std::unordered_map<Formula, std::vector<Positions>> steps_;
      std::unordered_map<Formula, Positions> omegas_;
    };
  }

  bool up_word_in_omega_regex(const LassoWord& w, const OmegaRegex& e)
  {
    if (e.sort() != Sort::Omega)
      return false;
    LassoMatcher m(w);
    return m.omega_from(e.formula(), 0);
  }

  std::optional<Word> nfa_inclusion(const Nfa& a0, const Nfa& b0)
  {
    const Alphabet sigma = unite(a0.alphabet(), b0.alphabet());
    const Nfa a = a0.over(sigma), b = b0.over(sigma);
    using Node = std::pair<State, std::vector<bool>>;
    std::map<Node, std::pair<const Node*, Letter>> parent;
    std::deque<const Node*> queue;

    std::vector<bool> init(b.num_states(), false);
    for (State q : b.initial_states())
      init[q] = true;
    for (State p : a.initial_states()) {
      auto [it, fresh] = parent.emplace(Node{p, init}, std::make_pair(nullptr, Letter{0}));
      if (fresh)
        queue.push_back(&it->first);
    }
    while (!queue.empty()) {
      const Node* cur = queue.front();
      queue.pop_front();
      bool b_final = false;
      for (State q = 0; q < b.num_states(); ++q)
        b_final = b_final || (cur->second[q] && b.is_final(q));
      if (a.is_final(cur->first) && !b_final) {
        Word w;
        for (const Node* n = cur; parent.at(*n).first; n = parent.at(*n).first)
          w.push_back(sigma[parent.at(*n).second]);
        std::reverse(w.begin(), w.end());
        return w;
      }
      for (Letter x = 0; x < sigma.size(); ++x) {
        std::vector<bool> next(b.num_states(), false);
        for (State q = 0; q < b.num_states(); ++q)
          if (cur->second[q])
            for (State r : b.successors(q, x))
              next[r] = true;
        for (State p2 : a.successors(cur->first, x)) {
          auto [it, fresh] = parent.emplace(Node{p2, next}, std::make_pair(cur, x));
          if (fresh)
            queue.push_back(&it->first);
        }
      }
    }
    return std::nullopt;
  }
}
