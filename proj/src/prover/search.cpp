// Depth-bounded backward proof search.
//
// Order at each sequent: axiom, one invertible step (committed), JoinR and
// MeetL choices, ProdR and StarR cuts, residual left rules, then periodic
// OmegaR and LOmega splits by increasing period length.  Results are
// memoized on the printed (normalized) sequent; a sequent met again on the
// current branch fails there.

#include <algorithm>
#include <limits>
#include <unordered_map>
#include <unordered_set>

#include "omegact/prover.hpp"

namespace omegact
{
  std::string SearchResult::str() const
  {
    return found ? "Found" : "NotFoundWithin(" + std::to_string(depth) + ")";
  }

  std::size_t proof_height(const ProofNode& p)
  {
    std::size_t h = 0;
    for (const Premise& pr : p.premises)
      h = std::max(h, proof_height(*pr.node));
    if (p.schema) {
      if (p.schema->body)
        h = std::max(h, proof_height(*p.schema->body));
      for (const ProofPtr& q : p.schema->instances)
        h = std::max(h, proof_height(*q));
    }
    return h + 1;
  }

  namespace
  {
    std::optional<Backward> backward(const Sequent& s, Rule r, const RuleArgs& args)
    {
      try {
        return apply_rule_backward(s, r, args);
      } catch (const Error&) {
        return std::nullopt;
      }
    }

    /// Left-rule derivation of a block |- x whose leaves are hypotheses.
    struct Decomp
    {
      ProofPtr root;
      std::vector<std::vector<Formula>> hyps;
    };

    class Searcher
    {
    public:
      explicit Searcher(const SearchOptions& o) : o_(o) {}

      std::size_t explored = 0;

      ProofPtr prove(const Sequent& s, std::size_t d)
      {
        if (d == 0) {
          cut_off_ = true;
          return nullptr;
        }
        const std::string key = s.str();
        if (auto it = memo_.find(key); it != memo_.end()) {
          if (it->second.proof && it->second.height <= d)
            return it->second.proof;
          if (it->second.failed >= d) {
            cut_off_ = cut_off_ || it->second.failed != kNever;
            return nullptr;
          }
        }
        if (!on_branch_.insert(key).second) {
          tainted_ = true;
          return nullptr;
        }
        ++explored;
        const bool outer = std::exchange(tainted_, false);
        const bool outer_cut = std::exchange(cut_off_, false);
        ProofPtr p = attempt(s, d);
        on_branch_.erase(key);
        Memo& m = memo_[key];
        if (p) {
          const std::size_t h = proof_height(*p);
          if (!m.proof || h < m.height) {
            m.proof = p;
            m.height = h;
          }
        } else if (!tainted_) {
          // A failure that never reached the depth limit holds at every depth.
          m.failed = cut_off_ ? std::max(m.failed, d) : kNever;
        }
        tainted_ = outer || tainted_;
        cut_off_ = outer_cut || cut_off_;
        return p;
      }

    private:
      static constexpr std::size_t kNever = std::numeric_limits<std::size_t>::max();

      struct Memo
      {
        std::size_t failed = 0;  // no proof of height <= failed
        ProofPtr proof;
        std::size_t height = 0;
      };

      /// Premises of one rule instance, all proved at depth d - 1.
      ProofPtr close(const Sequent& s, Rule r, const RuleArgs& args, Aux aux, std::size_t d)
      {
        auto b = backward(s, r, args);
        if (!b || b->family)
          return nullptr;
        std::vector<ProofPtr> premises;
        for (const Sequent& p : b->premises) {
          ProofPtr q = prove(p, d - 1);
          if (!q)
            return nullptr;
          premises.push_back(std::move(q));
        }
        return make_node(r, s, std::move(premises), std::move(aux));
      }

      /// Positions with a star-sorted formula.
      static std::size_t finite_items(const Antecedent& a)
      {
        const std::size_t n = a.items().size();
        return a.type() == SequenceType::OmegaTail ? n - 1 : n;
      }

      ProofPtr attempt(const Sequent& s, std::size_t d)
      {
        const Antecedent& a = s.antecedent();
        const Formula& e = s.succedent();
        const std::size_t fin = finite_items(a);

        if (!a.infinite() && a.length() == 1 && a.at(0) == e)
          return make_node(Rule::Ax, s);

        if (auto inv = invertible(s, d))
          return *inv;

        // JoinR, MeetL.
        if (e.kind() == Kind::Join)
          for (std::size_t c = 1; c <= 2; ++c) {
            RuleArgs args;
            Aux aux;
            args.choice = aux.choice = c;
            if (auto p = close(s, Rule::JoinR, args, aux, d))
              return p;
          }
        for (std::size_t i = 0; i < a.items().size(); ++i)
          if (a.items()[i].kind() == Kind::Meet)
            for (std::size_t c = 1; c <= 2; ++c) {
              RuleArgs args;
              Aux aux;
              args.at = i;
              aux.at = Index::of(i);
              args.choice = aux.choice = c;
              if (auto p = close(s, Rule::MeetL, args, aux, d))
                return p;
            }

        // ProdR, StarR.
        if (e.kind() == Kind::Prod) {
          const std::size_t top = a.infinite() ? a.up().prefix().size() + 2 * a.up().period().size() : fin;
          for (std::size_t k = 0; k <= top; ++k) {
            RuleArgs args;
            Aux aux;
            args.split = k;
            aux.split = Index::of(k);
            if (auto p = close(s, Rule::ProdR, args, aux, d))
              return p;
          }
        }
        if (e.kind() == Kind::Star && a.type() == SequenceType::Finite) {
          if (auto blocks = cut(a, 0, a.length(), e.operand(), d)) {
            RuleArgs args;
            Aux aux;
            args.blocks = *blocks;
            aux.blocks = plain_lengths(*blocks);
            if (auto p = close(s, Rule::StarR, args, aux, d))
              return p;
          }
        }

        // UnderL, OverL; an omega tail can only be an UnderL principal.
        for (std::size_t i = 0; i < a.items().size(); ++i) {
          const Formula& f = a.items()[i];
          if (f.kind() == Kind::Under)
            for (std::size_t l = 0; l <= i; ++l)
              if (auto p = residual(s, Rule::UnderL, i, l, false, d))
                return p;
          if (f.kind() == Kind::Over) {
            if (f.right().sort() == Sort::Omega) {
              if (auto p = residual(s, Rule::OverL, i, 0, true, d))
                return p;
            } else {
              for (std::size_t l = 0; i + 1 + l <= fin; ++l)
                if (auto p = residual(s, Rule::OverL, i, l, false, d))
                  return p;
            }
          }
        }

        if (a.infinite())
          return periodic(s, d);
        return nullptr;
      }

      /// Fewest nonempty blocks cutting positions [from, to) with every
      /// block |- f provable at depth d - 1.
      std::optional<std::vector<std::size_t>> cut(const Antecedent& a, std::size_t from, std::size_t to,
                                                  const Formula& f, std::size_t d)
      {
        std::vector<std::optional<std::size_t>> prev(to - from + 1);
        std::vector<bool> seen(to - from + 1, false);
        seen[0] = true;
        std::vector<std::size_t> queue{from};
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
          const std::size_t i = queue[qi];
          for (std::size_t j = i + 1; j <= to; ++j) {
            if (seen[j - from])
              continue;
            std::vector<Formula> block;
            for (std::size_t k = i; k < j; ++k)
              block.push_back(a.at(k));
            if (!prove(Sequent(Antecedent::finite(std::move(block)), f), d - 1))
              continue;
            seen[j - from] = true;
            prev[j - from] = i;
            queue.push_back(j);
          }
        }
        if (!seen[to - from])
          return std::nullopt;
        std::vector<std::size_t> lens;
        for (std::size_t j = to; j != from; j = *prev[j - from])
          lens.insert(lens.begin(), j - *prev[j - from]);
        return lens;
      }

      ProofPtr residual(const Sequent& s, Rule r, std::size_t at, std::size_t span, bool rest, std::size_t d)
      {
        RuleArgs args;
        Aux aux;
        args.at = at;
        aux.at = Index::of(at);
        if (rest) {
          args.span_rest = aux.span_rest = true;
        } else {
          args.span = span;
          aux.span = Index::of(span);
        }
        return close(s, r, args, aux, d);
      }

      /// One invertible step if any applies; nullopt when none does.
      std::optional<ProofPtr> invertible(const Sequent& s, std::size_t d)
      {
        const Antecedent& a = s.antecedent();
        const Formula& e = s.succedent();
        for (std::size_t i = 0; i < a.items().size(); ++i) {
          const Kind k = a.items()[i].kind();
          if (k != Kind::Prod && k != Kind::Join && k != Kind::Star)
            continue;
          RuleArgs args;
          Aux aux;
          args.at = i;
          aux.at = Index::of(i);
          if (k == Kind::Star)
            return star_left(s, args, aux, d);
          return close(s, k == Kind::Prod ? Rule::ProdL : Rule::JoinL, args, aux, d);
        }
        if (a.type() == SequenceType::OmegaTail && a.items().back().kind() == Kind::Omega)
          return close(s, Rule::OmegaL, {}, {}, d);
        if (e.kind() == Kind::Meet)
          return close(s, Rule::MeetR, {}, {}, d);
        if (e.kind() == Kind::Under)
          return close(s, Rule::UnderR, {}, {}, d);
        if (e.kind() == Kind::Over && a.type() == SequenceType::Finite)
          return close(s, Rule::OverR, {}, {}, d);
        return std::nullopt;
      }

      /// StarL with its instances 0..K listed.
      ProofPtr star_left(const Sequent& s, const RuleArgs& args, const Aux& aux, std::size_t d)
      {
        auto b = backward(s, Rule::StarL, args);
        if (!b)
          return nullptr;
        Schema sc{args.param, nullptr, {}};
        for (std::size_t n = 0; n <= o_.schema_bound; ++n) {
          ProofPtr q = prove(b->family->instantiate({{args.param, n}}), d - 1);
          if (!q)
            return nullptr;
          sc.instances.push_back(std::move(q));
        }
        auto node = std::make_shared<ProofNode>(Rule::StarL, SequentPattern::of(s));
        node->aux = aux;
        node->schema = std::move(sc);
        return node;
      }

      // --- periodic rules ---------------------------------------------------

      /// Candidate cut of a type-2 antecedent with a derivation per block.
      struct Tiling
      {
        std::vector<std::size_t> prefix, period;
        std::vector<const Decomp*> choice;
      };

      ProofPtr periodic(const Sequent& s, std::size_t d)
      {
        const Antecedent& a = s.antecedent();
        const std::size_t u = a.up().prefix().size();
        const std::size_t v = a.up().period().size();
        const std::size_t max_l = std::max(o_.max_period, v);
        for (std::size_t l = v; l <= max_l; l += v) {
          if (s.succedent().kind() == Kind::Omega)
            for (std::size_t start = u; start <= u + l; ++start) {
              const Formula& f = s.succedent().operand();
              auto pre = cut(a, 0, start, f, d);
              auto per = pre ? cut(a, start, start + l, f, d) : std::nullopt;
              if (!per || per->empty())
                continue;
              RuleArgs args;
              Aux aux;
              args.psplit = std::make_pair(*pre, *per);
              aux.psplit = PeriodicSplit{plain_lengths(*pre), plain_lengths(*per)};
              if (auto p = close(s, Rule::OmegaR, args, aux, d))
                return p;
            }
          for (std::size_t start = u; start <= u + l; ++start)
            for (const Tiling& t : tilings(a, start, l))
              if (auto p = left_omega(s, t, d))
                return p;
        }
        return nullptr;
      }

      ProofPtr left_omega(const Sequent& s, const Tiling& t, std::size_t d)
      {
        RuleArgs args;
        Aux aux;
        args.psplit = std::make_pair(t.prefix, t.period);
        aux.psplit = PeriodicSplit{plain_lengths(t.prefix), plain_lengths(t.period)};
        for (const Decomp* c : t.choice) {
          args.choices.push_back(c->hyps);
          VdashDerivation vd;
          for (const auto& h : c->hyps)
            vd.hyps.push_back(SequencePattern::of(Antecedent::finite(h)));
          vd.root = c->root;
          aux.vdash.push_back(std::move(vd));
        }
        return close(s, Rule::LOmega, args, aux, d);
      }

      /// Cuts of positions [0, start) and [start, start + l): every block is
      /// a single identity item or a segment with a nontrivial derivation;
      /// period blocks need a single hypothesis.  At least one block is
      /// nontrivial.
      const std::vector<Tiling>& tilings(const Antecedent& a, std::size_t start, std::size_t l)
      {
        const std::string key = a.str() + " @" + std::to_string(start) + "+" + std::to_string(l);
        auto it = tilings_.find(key);
        if (it != tilings_.end())
          return it->second;
        std::vector<Tiling> out;
        const std::size_t end = start + l;
        Tiling cur;
        bool any = false;
        auto rec = [&](auto& self, std::size_t i) -> void {
          if (out.size() >= o_.max_combinations)
            return;
          if (i == end) {
            if (any)
              out.push_back(cur);
            return;
          }
          const bool in_period = i >= start;
          auto& lens = in_period ? cur.period : cur.prefix;
          const std::size_t limit = in_period ? end : start;
          for (std::size_t j = i + 1; j <= limit; ++j) {
            std::vector<Formula> block;
            for (std::size_t k = i; k < j; ++k)
              block.push_back(a.at(k));
            const auto& options = decompositions(block);
            for (const Decomp& dc : options) {
              const bool trivial = dc.hyps.size() == 1 && dc.hyps[0] == block;
              if (trivial && j != i + 1)
                continue;
              if (in_period && dc.hyps.size() != 1)
                continue;
              const bool was = any;
              any = any || !trivial;
              lens.push_back(j - i);
              cur.choice.push_back(&dc);
              self(self, j);
              cur.choice.pop_back();
              lens.pop_back();
              any = was;
            }
          }
        };
        rec(rec, 0);
        return tilings_.emplace(key, std::move(out)).first->second;
      }

      const std::vector<Decomp>& decompositions(const std::vector<Formula>& block)
      {
        std::string key;
        for (const Formula& f : block)
          key += f.str() + " ,, ";
        auto it = decomp_.find(key);
        if (it != decomp_.end())
          return it->second;
        std::set<std::string> used, omega_vars;
        for (const Formula& f : block)
          f.collect_vars(used, omega_vars);
        std::string x = "x";
        for (std::size_t n = 1; used.count(x) || omega_vars.count(x); ++n)
          x = "x" + std::to_string(n);
        auto out = decompose(block, Formula::var(x), o_.vdash_depth);
        return decomp_.emplace(key, std::move(out)).first->second;
      }

      std::vector<Decomp> decompose(const std::vector<Formula>& block, const Formula& x, std::size_t depth)
      {
        const Sequent s(Antecedent::finite(block), x);
        std::vector<Decomp> out{{make_node(Rule::Hyp, s), {block}}};
        if (depth == 0)
          return out;
        auto add = [&](Decomp dc) {
          std::sort(dc.hyps.begin(), dc.hyps.end());
          dc.hyps.erase(std::unique(dc.hyps.begin(), dc.hyps.end()), dc.hyps.end());
          for (const Decomp& o : out)
            if (o.hyps == dc.hyps)
              return;
          if (out.size() < 16)
            out.push_back(std::move(dc));
        };
        for (std::size_t i = 0; i < block.size(); ++i) {
          const Formula& f = block[i];
          RuleArgs args;
          Aux aux;
          args.at = i;
          aux.at = Index::of(i);
          switch (f.kind()) {
          case Kind::Prod: {
            const auto b = backward(s, Rule::ProdL, args);
            for (const Decomp& sub : decompose(b->premises[0].antecedent().items(), x, depth - 1))
              add({make_node(Rule::ProdL, s, {sub.root}, aux), sub.hyps});
            break;
          }
          case Kind::Meet:
            for (std::size_t c = 1; c <= 2; ++c) {
              args.choice = aux.choice = c;
              const auto b = backward(s, Rule::MeetL, args);
              for (const Decomp& sub : decompose(b->premises[0].antecedent().items(), x, depth - 1))
                add({make_node(Rule::MeetL, s, {sub.root}, aux), sub.hyps});
            }
            break;
          case Kind::Join: {
            const auto b = backward(s, Rule::JoinL, args);
            const auto left = decompose(b->premises[0].antecedent().items(), x, depth - 1);
            const auto right = decompose(b->premises[1].antecedent().items(), x, depth - 1);
            for (const Decomp& l : left)
              for (const Decomp& r : right) {
                auto hyps = l.hyps;
                hyps.insert(hyps.end(), r.hyps.begin(), r.hyps.end());
                add({make_node(Rule::JoinL, s, {l.root, r.root}, aux), std::move(hyps)});
              }
            break;
          }
          case Kind::Under:
          case Kind::Over: {
            const bool under = f.kind() == Kind::Under;
            if (!under && f.right().sort() == Sort::Omega)
              break;
            const std::size_t room = under ? i : block.size() - 1 - i;
            for (std::size_t l = 0; l <= room; ++l) {
              args.span = l;
              aux.span = Index::of(l);
              const Rule r = under ? Rule::UnderL : Rule::OverL;
              const auto b = backward(s, r, args);
              if (!b)
                continue;
              ProofPtr side = left_only(b->premises[1], 3);
              if (!side)
                continue;
              for (const Decomp& sub : decompose(b->premises[0].antecedent().items(), x, depth - 1))
                add({make_node(r, s, {sub.root, side}, aux), sub.hyps});
            }
            break;
          }
          default: break;
          }
        }
        return out;
      }

      /// Proof by left rules and axioms only (side premises inside a vdash).
      ProofPtr left_only(const Sequent& s, std::size_t depth)
      {
        const Antecedent& a = s.antecedent();
        if (a.type() != SequenceType::Finite)
          return nullptr;
        if (a.length() == 1 && a.at(0) == s.succedent())
          return make_node(Rule::Ax, s);
        if (depth == 0)
          return nullptr;
        for (std::size_t i = 0; i < a.length(); ++i) {
          const Formula& f = a.at(i);
          RuleArgs args;
          Aux aux;
          args.at = i;
          aux.at = Index::of(i);
          std::vector<std::pair<RuleArgs, Aux>> tries;
          Rule r = Rule::Ax;
          switch (f.kind()) {
          case Kind::Prod: r = Rule::ProdL; tries.push_back({args, aux}); break;
          case Kind::Join: r = Rule::JoinL; tries.push_back({args, aux}); break;
          case Kind::Meet:
            r = Rule::MeetL;
            for (std::size_t c = 1; c <= 2; ++c) {
              args.choice = aux.choice = c;
              tries.push_back({args, aux});
            }
            break;
          case Kind::Under:
          case Kind::Over: {
            if (f.kind() == Kind::Over && f.right().sort() == Sort::Omega)
              break;
            r = f.kind() == Kind::Under ? Rule::UnderL : Rule::OverL;
            const std::size_t room = r == Rule::UnderL ? i : a.length() - 1 - i;
            for (std::size_t l = 0; l <= room; ++l) {
              args.span = l;
              aux.span = Index::of(l);
              tries.push_back({args, aux});
            }
            break;
          }
          default: break;
          }
          for (const auto& [ra, ax] : tries) {
            auto b = backward(s, r, ra);
            if (!b)
              continue;
            std::vector<ProofPtr> premises;
            for (const Sequent& p : b->premises) {
              ProofPtr q = left_only(p, depth - 1);
              if (!q)
                break;
              premises.push_back(std::move(q));
            }
            if (premises.size() == b->premises.size())
              return make_node(r, s, std::move(premises), ax);
          }
        }
        return nullptr;
      }

      SearchOptions o_;
      std::unordered_map<std::string, Memo> memo_;
      std::unordered_set<std::string> on_branch_;
      bool tainted_ = false;
      bool cut_off_ = false;  // some failure below depended on the depth
      std::unordered_map<std::string, std::vector<Decomp>> decomp_;
      std::unordered_map<std::string, std::vector<Tiling>> tilings_;
    };
  }

  struct SearchSession::Impl
  {
    explicit Impl(const SearchOptions& o) : searcher(o) {}
    Searcher searcher;
  };

  SearchSession::SearchSession(const SearchOptions& opts) : impl_(std::make_unique<Impl>(opts)) {}
  SearchSession::~SearchSession() = default;

  SearchResult SearchSession::search(const Sequent& s, std::size_t depth)
  {
    const std::size_t before = impl_->searcher.explored;
    SearchResult r;
    r.depth = depth;
    r.proof = impl_->searcher.prove(s, depth);
    r.found = r.proof != nullptr;
    r.explored = impl_->searcher.explored - before;
    return r;
  }

  SearchResult bounded_search(const Sequent& s, std::size_t depth, const SearchOptions& opts)
  {
    return SearchSession(opts).search(s, depth);
  }
}
