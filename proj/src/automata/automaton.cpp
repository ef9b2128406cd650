#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "omegact/automata.hpp"
#include "omegact/error.hpp"

namespace omegact
{
  Alphabet unite(const Alphabet& a, const Alphabet& b)
  {
    Alphabet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
  }

  namespace
  {
    bool regular_fragment(const Formula& f)
    {
      switch (f.kind()) {
      case Kind::VarStar: return true;
      case Kind::Prod:
      case Kind::Join: return regular_fragment(f.left()) && regular_fragment(f.right());
      case Kind::Star:
      case Kind::Omega: return regular_fragment(f.operand());
      default: return false;
      }
    }
  }

  OmegaRegex::OmegaRegex(Formula f) : f_(std::move(f))
  {
    if (!regular_fragment(f_))
      throw Error("not an omega-regular expression: " + f_.str());
  }

  std::optional<OmegaRegex> OmegaRegex::from(const Formula& f)
  {
    if (!regular_fragment(f))
      return std::nullopt;
    return OmegaRegex(f);
  }

  Alphabet OmegaRegex::alphabet() const
  {
    std::set<std::string> star, omega;
    f_.collect_vars(star, omega);
    return Alphabet(star.begin(), star.end());
  }

  // ---------------------------------------------------------------------

  Automaton::Automaton(Alphabet sigma) : sigma_(std::move(sigma))
  {
    std::sort(sigma_.begin(), sigma_.end());
    sigma_.erase(std::unique(sigma_.begin(), sigma_.end()), sigma_.end());
  }

  std::size_t Automaton::num_transitions() const
  {
    std::size_t n = 0;
    for (const auto& row : delta_)
      for (const auto& succ : row)
        n += succ.size();
    return n;
  }

  std::optional<Letter> Automaton::letter(const std::string& name) const
  {
    auto it = std::lower_bound(sigma_.begin(), sigma_.end(), name);
    if (it == sigma_.end() || *it != name)
      return std::nullopt;
    return static_cast<Letter>(it - sigma_.begin());
  }

  State Automaton::add_state(bool initial, bool marked)
  {
    delta_.emplace_back(sigma_.size());
    initial_.push_back(initial);
    marked_.push_back(marked);
    return delta_.size() - 1;
  }

  void Automaton::add_transition(State src, Letter a, State dst)
  {
    if (src >= num_states() || dst >= num_states() || a >= sigma_.size())
      throw Error("transition out of range");
    auto& succ = delta_[src][a];
    auto it = std::lower_bound(succ.begin(), succ.end(), dst);
    if (it == succ.end() || *it != dst)
      succ.insert(it, dst);
  }

  std::vector<State> Automaton::initial_states() const
  {
    std::vector<State> out;
    for (State q = 0; q < num_states(); ++q)
      if (initial_[q])
        out.push_back(q);
    return out;
  }

  void Automaton::extend_alphabet_into(Automaton& out, const Alphabet& sigma) const
  {
    out = Automaton(unite(sigma_, sigma));
    for (State q = 0; q < num_states(); ++q)
      out.add_state(initial_[q], marked_[q]);
    for (State q = 0; q < num_states(); ++q)
      for (Letter a = 0; a < sigma_.size(); ++a)
        for (State r : delta_[q][a])
          out.add_transition(q, *out.letter(sigma_[a]), r);
  }

  void Automaton::restrict_into(Automaton& out, const std::vector<bool>& keep) const
  {
    out = Automaton(sigma_);
    std::vector<State> renum(num_states(), 0);
    for (State q = 0; q < num_states(); ++q)
      if (keep[q])
        renum[q] = out.add_state(initial_[q], marked_[q]);
    for (State q = 0; q < num_states(); ++q) {
      if (!keep[q])
        continue;
      for (Letter a = 0; a < sigma_.size(); ++a)
        for (State r : delta_[q][a])
          if (keep[r])
            out.add_transition(renum[q], a, renum[r]);
    }
  }

  namespace
  {
    std::vector<bool> forward_reach(const Automaton& m)
    {
      std::vector<bool> seen(m.num_states(), false);
      std::deque<State> queue;
      for (State q : m.initial_states()) {
        seen[q] = true;
        queue.push_back(q);
      }
      while (!queue.empty()) {
        State q = queue.front();
        queue.pop_front();
        for (Letter a = 0; a < m.alphabet().size(); ++a)
          for (State r : m.successors(q, a))
            if (!seen[r]) {
              seen[r] = true;
              queue.push_back(r);
            }
      }
      return seen;
    }

    /// States that can reach some state in `target` (targets included).
    std::vector<bool> backward_reach(const Automaton& m, const std::vector<bool>& target)
    {
      std::vector<std::vector<State>> pred(m.num_states());
      for (State q = 0; q < m.num_states(); ++q)
        for (Letter a = 0; a < m.alphabet().size(); ++a)
          for (State r : m.successors(q, a))
            pred[r].push_back(q);
      std::vector<bool> seen = target;
      std::deque<State> queue;
      for (State q = 0; q < m.num_states(); ++q)
        if (seen[q])
          queue.push_back(q);
      while (!queue.empty()) {
        State q = queue.front();
        queue.pop_front();
        for (State p : pred[q])
          if (!seen[p]) {
            seen[p] = true;
            queue.push_back(p);
          }
      }
      return seen;
    }

    /// Can q reach itself through at least one transition?
    bool on_cycle(const Automaton& m, State q)
    {
      std::vector<bool> seen(m.num_states(), false);
      std::deque<State> queue{q};
      while (!queue.empty()) {
        State p = queue.front();
        queue.pop_front();
        for (Letter a = 0; a < m.alphabet().size(); ++a)
          for (State r : m.successors(p, a)) {
            if (r == q)
              return true;
            if (!seen[r]) {
              seen[r] = true;
              queue.push_back(r);
            }
          }
      }
      return false;
    }
  }

  bool Nfa::accepts(const Word& w) const
  {
    std::vector<bool> cur(num_states(), false);
    for (State q : initial_states())
      cur[q] = true;
    for (const std::string& x : w) {
      auto a = letter(x);
      if (!a)
        return false;
      std::vector<bool> next(num_states(), false);
      for (State q = 0; q < num_states(); ++q)
        if (cur[q])
          for (State r : successors(q, *a))
            next[r] = true;
      cur.swap(next);
    }
    for (State q = 0; q < num_states(); ++q)
      if (cur[q] && is_final(q))
        return true;
    return false;
  }

  bool Nfa::accepts_empty() const
  {
    for (State q : initial_states())
      if (is_final(q))
        return true;
    return false;
  }

  Nfa Nfa::over(const Alphabet& sigma) const
  {
    Nfa out;
    extend_alphabet_into(out, sigma);
    return out;
  }

  Nfa Nfa::trimmed() const
  {
    std::vector<bool> keep = forward_reach(*this);
    std::vector<bool> finals(num_states(), false);
    for (State q = 0; q < num_states(); ++q)
      finals[q] = is_final(q);
    std::vector<bool> co = backward_reach(*this, finals);
    for (State q = 0; q < num_states(); ++q)
      keep[q] = keep[q] && co[q];
    Nfa out;
    restrict_into(out, keep);
    return out;
  }

  BuchiAutomaton BuchiAutomaton::over(const Alphabet& sigma) const
  {
    BuchiAutomaton out;
    extend_alphabet_into(out, sigma);
    return out;
  }

  BuchiAutomaton BuchiAutomaton::trimmed() const
  {
    std::vector<bool> keep = forward_reach(*this);
    std::vector<bool> good(num_states(), false);
    for (State q = 0; q < num_states(); ++q)
      good[q] = keep[q] && is_accepting(q) && on_cycle(*this, q);
    std::vector<bool> co = backward_reach(*this, good);
    for (State q = 0; q < num_states(); ++q)
      keep[q] = keep[q] && co[q];
    BuchiAutomaton out;
    restrict_into(out, keep);
    return out;
  }

  std::string dump(const BuchiAutomaton& b)
  {
    std::ostringstream os;
    os << "buchi " << b.num_states() << " {";
    for (std::size_t i = 0; i < b.alphabet().size(); ++i)
      os << (i ? " " : "") << b.alphabet()[i];
    os << "}\n";
    for (State q = 0; q < b.num_states(); ++q)
      for (Letter a = 0; a < b.alphabet().size(); ++a)
        for (State r : b.successors(q, a))
          os << q << ' ' << b.alphabet()[a] << ' ' << r << '\n';
    os << "init:";
    for (State q : b.initial_states())
      os << ' ' << q;
    os << "\nacc:";
    for (State q = 0; q < b.num_states(); ++q)
      if (b.is_accepting(q))
        os << ' ' << q;
    os << '\n';
    return os.str();
  }
}
