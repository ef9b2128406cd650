// Inclusion through transition profiles.  A profile of a nonempty word w
// records, for every pair of states (p, q), whether w leads from p to q
// (1) and whether it can do so through an accepting state (2).  Profiles
// of A and B are kept side by side; the pair is a monoid element.

#include <algorithm>
#include <deque>
#include <map>

#include "omegact/automata.hpp"

namespace omegact
{
  namespace
  {
    using Profile = std::vector<unsigned char>;

    struct Layout
    {
      std::size_t na, nb;
      std::size_t size() const { return na * na + nb * nb; }
    };

    Profile letter_profile(const BuchiAutomaton& a, const BuchiAutomaton& b, const Layout& l, Letter x)
    {
      Profile out(l.size(), 0);
      auto fill = [&](const BuchiAutomaton& m, std::size_t n, std::size_t off) {
        for (State p = 0; p < n; ++p)
          for (State q : m.successors(p, x))
            out[off + p * n + q] = (m.is_accepting(p) || m.is_accepting(q)) ? 2 : 1;
      };
      fill(a, l.na, 0);
      fill(b, l.nb, l.na * l.na);
      return out;
    }

    Profile compose(const Profile& s, const Profile& t, const Layout& l)
    {
      Profile out(l.size(), 0);
      auto mul = [&](std::size_t n, std::size_t off) {
        for (std::size_t p = 0; p < n; ++p)
          for (std::size_t q = 0; q < n; ++q) {
            const unsigned char x = s[off + p * n + q];
            if (!x)
              continue;
            for (std::size_t r = 0; r < n; ++r) {
              const unsigned char y = t[off + q * n + r];
              if (!y)
                continue;
              unsigned char& z = out[off + p * n + r];
              z = std::max({z, x, y});
            }
          }
      };
      mul(l.na, 0);
      mul(l.nb, l.na * l.na);
      return out;
    }

    bool lasso_accepted(const BuchiAutomaton& m, std::size_t n, std::size_t off, const Profile& s, const Profile& t)
    {
      for (State i : m.initial_states())
        for (State q = 0; q < n; ++q)
          if (s[off + i * n + q] && t[off + q * n + q] == 2)
            return true;
      return false;
    }
  }

  InclusionResult buchi_inclusion_ramsey(const BuchiAutomaton& a0, const BuchiAutomaton& b0)
  {
    const Alphabet sigma = unite(a0.alphabet(), b0.alphabet());
    const BuchiAutomaton a = a0.over(sigma).trimmed();
    const BuchiAutomaton b = b0.over(sigma).trimmed();
    const Layout l{a.num_states(), b.num_states()};
    InclusionResult result;
    if (l.na == 0) {
      result.holds = true;
      return result;
    }

    std::vector<Profile> elems;
    std::vector<std::pair<std::size_t, Letter>> parent;  // (elem or npos, last letter)
    std::map<Profile, std::size_t> index;
    std::vector<Profile> letters;
    const std::size_t npos = static_cast<std::size_t>(-1);
    std::deque<std::size_t> queue;
    auto add = [&](Profile p, std::size_t from, Letter x) {
      auto [it, fresh] = index.emplace(std::move(p), elems.size());
      if (fresh) {
        elems.push_back(it->first);
        parent.push_back({from, x});
        queue.push_back(elems.size() - 1);
      }
    };
    for (Letter x = 0; x < sigma.size(); ++x) {
      letters.push_back(letter_profile(a, b, l, x));
      add(letters.back(), npos, x);
    }
    while (!queue.empty()) {
      const std::size_t e = queue.front();
      queue.pop_front();
      for (Letter x = 0; x < sigma.size(); ++x)
        add(compose(elems[e], letters[x], l), e, x);
    }
    result.explored = elems.size();

    auto word_of = [&](std::size_t e) {
      std::vector<std::string> w;
      for (std::size_t cur = e; cur != npos; cur = parent[cur].first)
        w.push_back(sigma[parent[cur].second]);
      std::reverse(w.begin(), w.end());
      return w;
    };

    // Shortest witnesses first: elements are discovered in BFS order.
    for (std::size_t t = 0; t < elems.size(); ++t) {
      if (compose(elems[t], elems[t], l) != elems[t])
        continue;
      for (std::size_t s = 0; s < elems.size(); ++s) {
        if (compose(elems[s], elems[t], l) != elems[s])
          continue;
        if (lasso_accepted(a, l.na, 0, elems[s], elems[t]) &&
            !lasso_accepted(b, l.nb, l.na * l.na, elems[s], elems[t])) {
          result.holds = false;
          result.counterexample = LassoWord(word_of(s), word_of(t));
          return result;
        }
      }
    }
    result.holds = true;
    return result;
  }
}
