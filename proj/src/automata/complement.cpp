// Rank-based complementation with tight level rankings and a breakpoint
// set.  Macrostates:
//   waiting  S          a subset, the guess of the tight phase is pending
//   tight    (S, O, f)  f a tight ranking of S, O the breakpoint set
//   sink                no run survives; accepting with a self loop
// A tight macrostate accepts when O is empty.

#include <cmath>
#include <deque>
#include <map>

#include "lasso_graph.hpp"
#include "omegact/automata.hpp"

namespace omegact
{
  namespace
  {
    enum class Phase : int
    {
      Waiting = 0,
      Tight = 1,
      Sink = 2,
    };

    // code[q]: waiting: 0/1 membership; tight: -1 absent, else 2*rank + inO.
    struct Macro
    {
      Phase phase;
      std::vector<int> code;

      friend auto operator<=>(const Macro&, const Macro&) = default;
    };

    class Complementer
    {
    public:
      explicit Complementer(const BuchiAutomaton& b) : b_(b), n_(b.num_states())
      {
        std::vector<int> init(n_, 0);
        for (State q : b.initial_states())
          init[q] = 1;
        initial_ = intern(waiting_or_sink(init));
      }

      std::size_t initial() const { return initial_; }
      std::size_t size() const { return macros_.size(); }
      bool accepting(std::size_t id) const
      {
        const Macro& m = macros_[id];
        if (m.phase == Phase::Sink)
          return true;
        if (m.phase == Phase::Waiting)
          return false;
        for (int c : m.code)
          if (c >= 0 && (c & 1))
            return false;
        return true;
      }

      const std::vector<std::size_t>& successors(std::size_t id, Letter a)
      {
        if (succ_.size() <= id)
          succ_.resize(id + 1);
        auto& row = succ_[id];
        if (row.empty())
          row.resize(b_.alphabet().size());
        auto& cell = row[a];
        if (!cell)
          cell = expand(id, a);
        return *cell;
      }

    private:
      Macro waiting_or_sink(const std::vector<int>& member) const
      {
        for (int x : member)
          if (x)
            return {Phase::Waiting, member};
        return {Phase::Sink, {}};
      }

      std::size_t intern(Macro m)
      {
        auto [it, inserted] = ids_.emplace(std::move(m), macros_.size());
        if (inserted)
          macros_.push_back(it->first);
        return it->second;
      }

      /// All tight rankings f' of the states with bound[q] >= 0 such that
      /// f'(q) <= bound[q], accepting states get even ranks, odd ranks are
      /// exactly 1, 3, ..., r.
      void enumerate(const std::vector<int>& bound, int r, std::vector<std::vector<int>>& out) const
      {
        std::vector<State> dom;
        for (State q = 0; q < n_; ++q)
          if (bound[q] >= 0)
            dom.push_back(q);
        const int odd_needed = (r + 1) / 2;
        std::vector<int> used(static_cast<std::size_t>(r + 2), 0);
        std::vector<int> f(n_, -1);
        int missing = odd_needed;
        auto rec = [&](auto& self, std::size_t k) -> void {
          if (missing > static_cast<int>(dom.size() - k))
            return;
          if (k == dom.size()) {
            out.push_back(f);
            return;
          }
          const State q = dom[k];
          const bool acc = b_.is_accepting(q);
          for (int v = std::min(bound[q], r); v >= 0; --v) {
            if (acc && (v & 1))
              continue;
            f[q] = v;
            const bool fresh_odd = (v & 1) && used[v]++ == 0;
            if (!(v & 1))
              ++used[v];
            if (fresh_odd)
              --missing;
            self(self, k + 1);
            if (fresh_odd)
              ++missing;
            --used[v];
          }
          f[q] = -1;
        };
        rec(rec, 0);
      }

      std::vector<std::size_t> expand(std::size_t id, Letter a)
      {
        const Macro m = macros_[id];
        std::vector<std::size_t> out;
        if (m.phase == Phase::Sink) {
          out.push_back(id);
          return out;
        }
        // bound[q'] = min rank over predecessors (waiting: just membership).
        const int kInf = 1 << 20;
        std::vector<int> bound(n_, -1);
        for (State q = 0; q < n_; ++q) {
          const int c = m.code[q];
          const bool in = m.phase == Phase::Waiting ? c == 1 : c >= 0;
          if (!in)
            continue;
          const int rank = m.phase == Phase::Waiting ? kInf : c >> 1;
          for (State r : b_.successors(q, a))
            bound[r] = bound[r] < 0 ? rank : std::min(bound[r], rank);
        }
        std::vector<int> member(n_, 0);
        std::size_t size = 0, nonacc = 0;
        for (State q = 0; q < n_; ++q)
          if (bound[q] >= 0) {
            member[q] = 1;
            ++size;
            if (!b_.is_accepting(q))
              ++nonacc;
          }
        if (size == 0) {
          out.push_back(intern({Phase::Sink, {}}));
          return out;
        }

        std::vector<std::vector<int>> rankings;
        std::vector<bool> from_o(n_, false);
        bool reset = true;
        if (m.phase == Phase::Waiting) {
          out.push_back(intern({Phase::Waiting, member}));
          for (int r = 1; r <= 2 * static_cast<int>(nonacc) - 1; r += 2)
            enumerate(bound, r, rankings);
        } else {
          int r = 0;
          for (int c : m.code)
            if (c >= 0) {
              r = std::max(r, c >> 1);
              if (c & 1)
                reset = false;
            }
          if (!reset)
            for (State q = 0; q < n_; ++q)
              if (m.code[q] >= 0 && (m.code[q] & 1))
                for (State s : b_.successors(q, a))
                  from_o[s] = true;
          enumerate(bound, r, rankings);
        }
        for (const auto& f : rankings) {
          Macro t{Phase::Tight, std::vector<int>(n_, -1)};
          for (State q = 0; q < n_; ++q) {
            if (f[q] < 0)
              continue;
            // From waiting the breakpoint starts empty.
            const bool in_o = m.phase == Phase::Tight && !(f[q] & 1) && (reset || from_o[q]);
            t.code[q] = 2 * f[q] + (in_o ? 1 : 0);
          }
          out.push_back(intern(std::move(t)));
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
      }

      const BuchiAutomaton& b_;
      std::size_t n_;
      std::size_t initial_ = 0;
      std::map<Macro, std::size_t> ids_;
      std::vector<Macro> macros_;
      std::vector<std::vector<std::optional<std::vector<std::size_t>>>> succ_;
    };

    long double rank_bound(std::size_t n)
    {
      // Each state: absent, or ranked in [0, 2n) and possibly in O; plus the
      // waiting subsets and the sink.
      const long double k = static_cast<long double>(n);
      return std::pow(4 * k + 1, k) + std::pow(2.0L, k) + 1;
    }
  }

  ComplementResult buchi_complement(const BuchiAutomaton& b)
  {
    Complementer c(b);
    BuchiAutomaton out(b.alphabet());
    std::deque<std::size_t> queue{c.initial()};
    std::vector<State> id_state;
    auto state_of = [&](std::size_t id) {
      while (id_state.size() <= id)
        id_state.push_back(static_cast<State>(-1));
      if (id_state[id] == static_cast<State>(-1)) {
        id_state[id] = out.add_state(false, c.accepting(id));
        queue.push_back(id);
      }
      return id_state[id];
    };
    queue.clear();
    out.set_initial(state_of(c.initial()));
    while (!queue.empty()) {
      const std::size_t id = queue.front();
      queue.pop_front();
      for (Letter a = 0; a < b.alphabet().size(); ++a) {
        std::vector<std::size_t> succ = c.successors(id, a);
        for (std::size_t t : succ)
          out.add_transition(state_of(id), a, state_of(t));
      }
    }
    return {std::move(out), c.size(), rank_bound(b.num_states())};
  }

  std::optional<LassoWord> buchi_emptiness(const BuchiAutomaton& b)
  {
    detail::LassoGraph g;
    for (State q = 0; q < b.num_states(); ++q)
      g.add_node(b.is_accepting(q) ? 1u : 0u);
    for (State q = 0; q < b.num_states(); ++q)
      for (Letter a = 0; a < b.alphabet().size(); ++a)
        for (State r : b.successors(q, a))
          g.out[q].push_back({a, r});
    g.initial = b.initial_states();
    auto path = detail::find_accepting_lasso(g, 1);
    if (!path)
      return std::nullopt;
    return detail::to_lasso(*path, b.alphabet());
  }

  BuchiAutomaton buchi_intersection(const BuchiAutomaton& a0, const BuchiAutomaton& b0)
  {
    const Alphabet sigma = unite(a0.alphabet(), b0.alphabet());
    const BuchiAutomaton a = a0.over(sigma), b = b0.over(sigma);
    // (p, q, i): i = 0 waits for an accepting p, i = 1 for an accepting q.
    BuchiAutomaton out(sigma);
    std::map<std::tuple<State, State, int>, State> ids;
    std::deque<std::tuple<State, State, int>> queue;
    auto id = [&](State p, State q, int i) {
      auto [it, fresh] = ids.emplace(std::make_tuple(p, q, i), 0);
      if (fresh) {
        it->second = out.add_state(false, i == 1 && b.is_accepting(q));
        queue.push_back(it->first);
      }
      return it->second;
    };
    for (State p : a.initial_states())
      for (State q : b.initial_states())
        out.set_initial(id(p, q, 0));
    while (!queue.empty()) {
      auto [p, q, i] = queue.front();
      queue.pop_front();
      const State src = ids.at({p, q, i});
      const int j = i == 0 ? (a.is_accepting(p) ? 1 : 0) : (b.is_accepting(q) ? 0 : 1);
      for (Letter x = 0; x < sigma.size(); ++x)
        for (State p2 : a.successors(p, x))
          for (State q2 : b.successors(q, x))
            out.add_transition(src, x, id(p2, q2, j));
    }
    return out;
  }

  InclusionResult buchi_inclusion(const BuchiAutomaton& a0, const BuchiAutomaton& b0)
  {
    const Alphabet sigma = unite(a0.alphabet(), b0.alphabet());
    const BuchiAutomaton a = a0.over(sigma).trimmed();
    const BuchiAutomaton b = b0.over(sigma).trimmed();
    InclusionResult result;
    if (a.num_states() == 0) {
      result.holds = true;
      return result;
    }

    Complementer c(b);
    detail::LassoGraph g;
    std::map<std::pair<State, std::size_t>, std::size_t> ids;
    std::deque<std::pair<State, std::size_t>> queue;
    auto node = [&](State p, std::size_t m) {
      auto [it, fresh] = ids.emplace(std::make_pair(p, m), 0);
      if (fresh) {
        it->second = g.add_node((a.is_accepting(p) ? 1u : 0u) | (c.accepting(m) ? 2u : 0u));
        queue.push_back(it->first);
      }
      return it->second;
    };
    for (State p : a.initial_states())
      g.initial.push_back(node(p, c.initial()));
    while (!queue.empty()) {
      auto [p, m] = queue.front();
      queue.pop_front();
      const std::size_t src = ids.at({p, m});
      for (Letter x = 0; x < sigma.size(); ++x) {
        const auto& pa = a.successors(p, x);
        if (pa.empty())
          continue;
        const std::vector<std::size_t> mb = c.successors(m, x);
        for (State p2 : pa)
          for (std::size_t m2 : mb) {
            const std::size_t dst = node(p2, m2);
            g.out[src].push_back({x, dst});
          }
      }
    }
    result.explored = g.size();
    auto path = detail::find_accepting_lasso(g, 3);
    result.holds = !path;
    if (path)
      result.counterexample = detail::to_lasso(*path, sigma);
    return result;
  }
}
