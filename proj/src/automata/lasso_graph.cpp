#include "lasso_graph.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace omegact::detail
{
  namespace
  {
    constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

    /// Iterative Tarjan; returns the SCC id of every node (kNone if unreached).
    std::vector<std::size_t> strongly_connected(const LassoGraph& g, std::size_t& count)
    {
      const std::size_t n = g.size();
      std::vector<std::size_t> index(n, kNone), low(n, 0), comp(n, kNone);
      std::vector<bool> on_stack(n, false);
      std::vector<std::size_t> stack;
      std::vector<std::pair<std::size_t, std::size_t>> call;  // node, next edge
      std::size_t next_index = 0;
      count = 0;

      for (std::size_t root : g.initial) {
        if (index[root] != kNone)
          continue;
        call.push_back({root, 0});
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
          auto& [v, ei] = call.back();
          if (ei < g.out[v].size()) {
            const std::size_t w = g.out[v][ei++].dst;
            if (index[w] == kNone) {
              index[w] = low[w] = next_index++;
              stack.push_back(w);
              on_stack[w] = true;
              call.push_back({w, 0});
            } else if (on_stack[w]) {
              low[v] = std::min(low[v], index[w]);
            }
            continue;
          }
          if (low[v] == index[v]) {
            std::size_t w;
            do {
              w = stack.back();
              stack.pop_back();
              on_stack[w] = false;
              comp[w] = count;
            } while (w != v);
            ++count;
          }
          const std::size_t done = v;
          call.pop_back();
          if (!call.empty())
            low[call.back().first] = std::min(low[call.back().first], low[done]);
        }
      }
      return comp;
    }

    /// Shortest path (by BFS, edges in stored order) from any source to a
    /// node satisfying `goal`, staying inside `allowed`.  When `nonempty`,
    /// sources themselves do not count as reached.
    template <typename Goal, typename Allowed>
    std::optional<std::pair<std::size_t, std::vector<Letter>>>
    bfs(const LassoGraph& g, const std::vector<std::size_t>& sources, Goal goal, Allowed allowed, bool nonempty)
    {
      std::vector<std::size_t> parent(g.size(), kNone);
      std::vector<Letter> via(g.size(), 0);
      std::vector<bool> seen(g.size(), false);
      std::deque<std::size_t> queue;
      if (!nonempty) {
        for (std::size_t s : sources) {
          if (goal(s))
            return std::make_pair(s, std::vector<Letter>{});
          if (!seen[s]) {
            seen[s] = true;
            queue.push_back(s);
          }
        }
      } else {
        // Expand the sources once without marking them, so that a source can
        // be reached again through a nonempty path.  First hops keep
        // parent == kNone; their letter is appended during reconstruction.
        for (std::size_t s : sources)
          for (const Edge& e : g.out[s]) {
            if (!allowed(e.dst) || seen[e.dst])
              continue;
            seen[e.dst] = true;
            via[e.dst] = e.letter;
            parent[e.dst] = kNone;
            if (goal(e.dst))
              return std::make_pair(e.dst, std::vector<Letter>{e.letter});
            queue.push_back(e.dst);
          }
      }
      while (!queue.empty()) {
        const std::size_t v = queue.front();
        queue.pop_front();
        for (const Edge& e : g.out[v]) {
          if (!allowed(e.dst) || seen[e.dst])
            continue;
          seen[e.dst] = true;
          parent[e.dst] = v;
          via[e.dst] = e.letter;
          if (goal(e.dst)) {
            std::vector<Letter> letters;
            std::size_t cur = e.dst;
            while (parent[cur] != kNone) {
              letters.push_back(via[cur]);
              cur = parent[cur];
            }
            if (nonempty)
              letters.push_back(via[cur]);  // the first hop out of a source
            std::reverse(letters.begin(), letters.end());
            return std::make_pair(e.dst, std::move(letters));
          }
          queue.push_back(e.dst);
        }
      }
      return std::nullopt;
    }
  }

  std::optional<LassoPath> find_accepting_lasso(const LassoGraph& g, unsigned required)
  {
    std::size_t count = 0;
    const std::vector<std::size_t> comp = strongly_connected(g, count);

    std::vector<unsigned> comp_marks(count, 0);
    std::vector<bool> nontrivial(count, false);
    std::vector<std::size_t> comp_size(count, 0);
    for (std::size_t v = 0; v < g.size(); ++v) {
      if (comp[v] == kNone)
        continue;
      comp_marks[comp[v]] |= g.marks[v];
      ++comp_size[comp[v]];
      for (const Edge& e : g.out[v])
        if (e.dst == v)
          nontrivial[comp[v]] = true;
    }
    std::optional<std::size_t> target;
    for (std::size_t c = 0; c < count && !target; ++c)
      if ((comp_size[c] > 1 || nontrivial[c]) && (comp_marks[c] & required) == required)
        target = c;
    if (!target)
      return std::nullopt;

    const std::size_t t = *target;
    auto in_comp = [&](std::size_t v) { return comp[v] == t; };
    auto anywhere = [](std::size_t) { return true; };

    LassoPath path;
    auto stem = bfs(g, g.initial, in_comp, anywhere, false);
    const std::size_t anchor = stem->first;
    path.stem = stem->second;

    std::size_t cur = anchor;
    for (unsigned bit = 1; bit != 0 && bit <= required; bit <<= 1) {
      if (!(required & bit))
        continue;
      auto leg = bfs(
        g, {cur}, [&](std::size_t v) { return in_comp(v) && (g.marks[v] & bit); }, in_comp, false);
      path.loop.insert(path.loop.end(), leg->second.begin(), leg->second.end());
      cur = leg->first;
    }
    if (cur == anchor && !path.loop.empty())
      return path;
    auto back = bfs(g, {cur}, [&](std::size_t v) { return v == anchor; }, in_comp, true);
    path.loop.insert(path.loop.end(), back->second.begin(), back->second.end());
    return path;
  }

  LassoWord to_lasso(const LassoPath& p, const Alphabet& sigma)
  {
    std::vector<std::string> u, v;
    for (Letter a : p.stem)
      u.push_back(sigma[a]);
    for (Letter a : p.loop)
      v.push_back(sigma[a]);
    return LassoWord(std::move(u), std::move(v));
  }
}
