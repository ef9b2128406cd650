#include "lasso_util.hpp"

#include <deque>
#include <map>
#include <set>

namespace omegact::detail
{
  LassoWord shift(const LassoWord& t, std::size_t k)
  {
    const auto& u = t.prefix();
    const auto& v = t.period();
    if (k <= u.size())
      return LassoWord({u.begin() + static_cast<long>(k), u.end()}, v);
    const std::size_t r = (k - u.size()) % v.size();
    std::vector<std::string> rot(v.begin() + static_cast<long>(r), v.end());
    rot.insert(rot.end(), v.begin(), v.begin() + static_cast<long>(r));
    return LassoWord({}, rot);
  }

  Word slice(const LassoWord& t, std::size_t p, std::size_t n)
  {
    Word out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
      out.push_back(t.at(p + i));
    return out;
  }

  Word letters_of(const std::vector<Formula>& items)
  {
    Word out;
    for (const Formula& f : items) {
      if (f.kind() != Kind::VarStar)
        throw Error("not a word: " + f.str());
      out.push_back(f.name());
    }
    return out;
  }

  LassoWord lasso_of(const Antecedent& a)
  {
    if (!a.infinite())
      throw Error("not an infinite word: " + a.str());
    return LassoWord(letters_of(a.up().prefix()), letters_of(a.up().period()));
  }

  std::optional<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>>
  periodic_cut(const LassoWord& t, const BlockFn& blocks)
  {
    const std::size_t u = t.prefix().size();
    const std::size_t n = u + t.period().size();
    // edges[p]: (target, length), first length per target.
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> edges(n);
    for (std::size_t p = 0; p < n; ++p) {
      std::set<std::size_t> seen;
      for (std::size_t len : blocks(p)) {
        const std::size_t q = canon(t, p + len);
        if (len > 0 && seen.insert(q).second)
          edges[p].push_back({q, len});
      }
    }
    auto bfs = [&](std::size_t from, std::size_t goal, bool nonempty)
      -> std::optional<std::vector<std::size_t>> {
      std::vector<std::optional<std::pair<std::size_t, std::size_t>>> parent(n);  // (prev, len)
      std::vector<bool> seen(n, false);
      std::deque<std::size_t> queue;
      if (nonempty) {
        for (auto [q, len] : edges[from])
          if (!seen[q]) {
            seen[q] = true;
            parent[q] = {from, len};
            queue.push_back(q);
          }
      } else {
        seen[from] = true;
        queue.push_back(from);
      }
      while (!queue.empty()) {
        const std::size_t p = queue.front();
        queue.pop_front();
        if (p == goal) {
          std::vector<std::size_t> lens;
          std::size_t cur = p;
          // Walk back; the first hop out of `from` ends the walk.
          while (parent[cur]) {
            lens.insert(lens.begin(), parent[cur]->second);
            const std::size_t prev = parent[cur]->first;
            if (prev == from)
              break;
            cur = prev;
          }
          return lens;
        }
        for (auto [q, len] : edges[p])
          if (!seen[q]) {
            seen[q] = true;
            parent[q] = {p, len};
            queue.push_back(q);
          }
      }
      return std::nullopt;
    };

    // Reachable from 0, in BFS order.
    std::vector<std::size_t> order{0};
    std::vector<bool> reach(n, false);
    reach[0] = true;
    for (std::size_t i = 0; i < order.size(); ++i)
      for (auto [q, len] : edges[order[i]])
        if (!reach[q]) {
          reach[q] = true;
          order.push_back(q);
        }
    for (std::size_t q : order) {
      if (q < u)
        continue;
      auto loop = bfs(q, q, true);
      if (!loop)
        continue;
      auto stem = bfs(0, q, false);
      return std::make_pair(std::move(*stem), std::move(*loop));
    }
    return std::nullopt;
  }

  BlockFn nfa_blocks(const LassoWord& t, const Nfa& nfa)
  {
    return [&t, &nfa](std::size_t p) {
      std::vector<std::size_t> out;
      std::set<std::pair<std::vector<bool>, std::size_t>> seen;
      std::vector<bool> cur(nfa.num_states(), false);
      for (State q : nfa.initial_states())
        cur[q] = true;
      for (std::size_t len = 1;; ++len) {
        const auto a = nfa.letter(t.at(p + len - 1));
        if (!a)
          break;
        std::vector<bool> next(nfa.num_states(), false);
        bool any = false, fin = false;
        for (State q = 0; q < nfa.num_states(); ++q)
          if (cur[q])
            for (State r : nfa.successors(q, *a)) {
              next[r] = true;
              any = true;
              fin = fin || nfa.is_final(r);
            }
        if (!any)
          break;
        if (!seen.insert({next, canon(t, p + len)}).second)
          break;
        if (fin)
          out.push_back(len);
        cur.swap(next);
      }
      return out;
    };
  }
}
