#include <deque>

#include "omegact/automata.hpp"
#include "omegact/error.hpp"

namespace omegact
{
  namespace
  {
    constexpr Letter kEps = static_cast<Letter>(-1);

    struct ThompsonNfa
    {
      struct Arc
      {
        Letter letter;  // kEps for epsilon
        State dst;
      };
      std::vector<std::vector<Arc>> arcs;

      State fresh()
      {
        arcs.emplace_back();
        return arcs.size() - 1;
      }
      void link(State p, Letter a, State q) { arcs[p].push_back({a, q}); }
    };

    struct Fragment
    {
      State start;
      State accept;
    };

    Fragment thompson(ThompsonNfa& m, const Nfa& sigma_holder, const Formula& f)
    {
      switch (f.kind()) {
      case Kind::VarStar: {
        Fragment r{m.fresh(), m.fresh()};
        m.link(r.start, *sigma_holder.letter(f.name()), r.accept);
        return r;
      }
      case Kind::Prod: {
        Fragment a = thompson(m, sigma_holder, f.left());
        Fragment b = thompson(m, sigma_holder, f.right());
        m.link(a.accept, kEps, b.start);
        return {a.start, b.accept};
      }
      case Kind::Join: {
        Fragment a = thompson(m, sigma_holder, f.left());
        Fragment b = thompson(m, sigma_holder, f.right());
        Fragment r{m.fresh(), m.fresh()};
        m.link(r.start, kEps, a.start);
        m.link(r.start, kEps, b.start);
        m.link(a.accept, kEps, r.accept);
        m.link(b.accept, kEps, r.accept);
        return r;
      }
      case Kind::Star: {
        Fragment a = thompson(m, sigma_holder, f.operand());
        Fragment r{m.fresh(), m.fresh()};
        m.link(r.start, kEps, a.start);
        m.link(r.start, kEps, r.accept);
        m.link(a.accept, kEps, a.start);
        m.link(a.accept, kEps, r.accept);
        return r;
      }
      default: throw Error("unexpected node in a finitary regex: " + f.str());
      }
    }

    std::vector<bool> eps_closure(const ThompsonNfa& m, State q)
    {
      std::vector<bool> seen(m.arcs.size(), false);
      std::deque<State> queue{q};
      seen[q] = true;
      while (!queue.empty()) {
        State p = queue.front();
        queue.pop_front();
        for (const auto& arc : m.arcs[p])
          if (arc.letter == kEps && !seen[arc.dst]) {
            seen[arc.dst] = true;
            queue.push_back(arc.dst);
          }
      }
      return seen;
    }

    /// Copy `n` into `out` with offset; returns the offset.  Markings and
    /// initial flags are taken from the callbacks.
    template <typename Init, typename Mark>
    State embed(Automaton& out, const Automaton& n, Init init, Mark mark)
    {
      const State base = out.num_states();
      for (State q = 0; q < n.num_states(); ++q)
        out.add_state(init(q), mark(q));
      for (State q = 0; q < n.num_states(); ++q)
        for (Letter a = 0; a < n.alphabet().size(); ++a)
          for (State r : n.successors(q, a))
            out.add_transition(base + q, a, base + r);
      return base;
    }

    BuchiAutomaton build(const Formula& f, const Alphabet& sigma, std::vector<std::string>* notes)
    {
      switch (f.kind()) {
      case Kind::Omega: {
        Nfa n = regex_to_nfa(OmegaRegex(f.operand()), sigma);
        BuchiAutomaton out(sigma);
        if (n.num_transitions() == 0) {
          if (notes)
            notes->push_back("empty omega-language: " + f.str() + " iterates a language contained in {eps}");
          return out;
        }
        const State base = embed(out, n, [](State) { return false; }, [](State) { return false; });
        const State s0 = out.add_state(true, true);
        for (State p = 0; p < n.num_states(); ++p)
          for (Letter a = 0; a < sigma.size(); ++a)
            for (State r : n.successors(p, a))
              if (n.is_final(r))
                out.add_transition(base + p, a, s0);
        for (State i : n.initial_states())
          for (Letter a = 0; a < sigma.size(); ++a)
            for (State r : out.successors(base + i, a))
              out.add_transition(s0, a, r);
        return out;
      }
      case Kind::Prod: {
        Nfa n = regex_to_nfa(OmegaRegex(f.left()), sigma);
        BuchiAutomaton tail = build(f.right(), sigma, notes);
        BuchiAutomaton out(sigma);
        const State nb = embed(out, n, [&](State q) { return n.is_initial(q); }, [](State) { return false; });
        const bool eps = n.accepts_empty();
        const State tb = embed(
          out, tail, [&](State q) { return eps && tail.is_initial(q); },
          [&](State q) { return tail.is_accepting(q); });
        const std::vector<State> tail_init = tail.initial_states();
        for (State p = 0; p < n.num_states(); ++p)
          for (Letter a = 0; a < sigma.size(); ++a)
            for (State r : n.successors(p, a))
              if (n.is_final(r))
                for (State t : tail_init)
                  out.add_transition(nb + p, a, tb + t);
        return out;
      }
      case Kind::Join: {
        BuchiAutomaton l = build(f.left(), sigma, notes);
        BuchiAutomaton r = build(f.right(), sigma, notes);
        BuchiAutomaton out(sigma);
        embed(out, l, [&](State q) { return l.is_initial(q); }, [&](State q) { return l.is_accepting(q); });
        embed(out, r, [&](State q) { return r.is_initial(q); }, [&](State q) { return r.is_accepting(q); });
        return out;
      }
      default: throw Error("unexpected node in an omega-regex: " + f.str());
      }
    }
  }

  Nfa regex_to_nfa(const OmegaRegex& e, const Alphabet& extra)
  {
    if (e.sort() != Sort::Star)
      throw SortError("regex_to_nfa needs a star-sorted expression: " + e.str());
    Nfa letters(unite(e.alphabet(), extra));
    ThompsonNfa m;
    Fragment top = thompson(m, letters, e.formula());

    Nfa out(letters.alphabet());
    for (State q = 0; q < m.arcs.size(); ++q)
      out.add_state(q == top.start, false);
    for (State q = 0; q < m.arcs.size(); ++q) {
      std::vector<bool> cq = eps_closure(m, q);
      if (cq[top.accept])
        out.set_marked(q);
      for (State p = 0; p < m.arcs.size(); ++p) {
        if (!cq[p])
          continue;
        for (const auto& arc : m.arcs[p])
          if (arc.letter != kEps)
            out.add_transition(q, arc.letter, arc.dst);
      }
    }
    return out.trimmed();
  }

  BuchiAutomaton omega_regex_to_buchi(const OmegaRegex& e, const Alphabet& extra, std::vector<std::string>* notes)
  {
    if (e.sort() != Sort::Omega)
      throw SortError("omega_regex_to_buchi needs an omega-sorted expression: " + e.str());
    return build(e.formula(), unite(e.alphabet(), extra), notes).trimmed();
  }
}
