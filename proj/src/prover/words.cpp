// Decision procedure for omega-regular sequents and right-rules-only
// certificates for word sequents.

#include <map>

#include "lasso_util.hpp"
#include "omegact/prover.hpp"

namespace omegact
{
  Decision decide_omega_regular(const OmegaRegex& alpha, const OmegaRegex& beta)
  {
    if (alpha.sort() != beta.sort())
      throw SortError("decide_omega_regular: " + alpha.str() + " and " + beta.str() + " have different sorts");
    Decision d;
    const Alphabet sigma = unite(alpha.alphabet(), beta.alphabet());
    if (alpha.sort() == Sort::Star) {
      const Nfa a = regex_to_nfa(alpha, sigma);
      const Nfa b = regex_to_nfa(beta, sigma);
      d.finite_counterexample = nfa_inclusion(a, b);
      d.provable = !d.finite_counterexample;
      d.explored = a.num_states() + b.num_states();
      return d;
    }
    const InclusionResult r = buchi_inclusion(omega_regex_to_buchi(alpha, sigma), omega_regex_to_buchi(beta, sigma));
    d.provable = r.holds;
    d.counterexample = r.counterexample;
    d.explored = r.explored;
    return d;
  }

  Sequent word_sequent(const LassoWord& w, const Formula& beta)
  {
    std::vector<Formula> u, v;
    for (const auto& x : w.prefix())
      u.push_back(Formula::var(x));
    for (const auto& x : w.period())
      v.push_back(Formula::var(x));
    return Sequent(Antecedent::periodic(UpSequence(std::move(u), std::move(v))), beta);
  }

  namespace
  {
    std::vector<Formula> vars(const Word& w)
    {
      std::vector<Formula> out;
      for (const auto& x : w)
        out.push_back(Formula::var(x));
      return out;
    }

    class WordProver
    {
    public:
      ProofPtr finite(const Word& w, const Formula& f)
      {
        const Sequent s(Antecedent::finite(vars(w)), f);
        RuleArgs args;
        Aux aux;
        switch (f.kind()) {
        case Kind::VarStar: return make_node(Rule::Ax, s);
        case Kind::Join: {
          const std::size_t i = member(w, f.left()) ? 1 : 2;
          args.choice = aux.choice = i;
          return node(Rule::JoinR, s, args, aux);
        }
        case Kind::Prod: {
          for (std::size_t k = 0; k <= w.size(); ++k) {
            const Word a(w.begin(), w.begin() + static_cast<long>(k)), b(w.begin() + static_cast<long>(k), w.end());
            if (member(a, f.left()) && member(b, f.right())) {
              args.split = k;
              aux.split = Index::of(k);
              return node(Rule::ProdR, s, args, aux);
            }
          }
          break;
        }
        case Kind::Star: {
          // from[i]: start of the last nonempty block of a cut of w[0, i).
          std::vector<std::optional<std::size_t>> from(w.size() + 1);
          from[0] = 0;
          for (std::size_t i = 1; i <= w.size(); ++i)
            for (std::size_t j = 0; j < i && !from[i]; ++j)
              if (from[j] && member(Word(w.begin() + static_cast<long>(j), w.begin() + static_cast<long>(i)), f.operand()))
                from[i] = j;
          if (!from[w.size()])
            break;
          std::vector<std::size_t> lens;
          for (std::size_t i = w.size(); i > 0; i = *from[i])
            lens.insert(lens.begin(), i - *from[i]);
          args.blocks = lens;
          aux.blocks = plain_lengths(lens);
          return node(Rule::StarR, s, args, aux);
        }
        default: break;
        }
        throw NotMember(word_str(w) + " is not in " + f.str());
      }

      ProofPtr infinite(const LassoWord& t, const Formula& f)
      {
        const Sequent s = word_sequent(t, f);
        RuleArgs args;
        Aux aux;
        switch (f.kind()) {
        case Kind::Join: {
          const std::size_t i = up_word_in_omega_regex(t, OmegaRegex(f.left())) ? 1 : 2;
          args.choice = aux.choice = i;
          return node(Rule::JoinR, s, args, aux);
        }
        case Kind::Prod: {
          const Nfa& a = nfa(f.left());
          const OmegaRegex rest(f.right());
          auto split = [&](std::size_t k) {
            if (!up_word_in_omega_regex(detail::shift(t, k), rest))
              return false;
            args.split = k;
            aux.split = Index::of(k);
            return true;
          };
          bool ok = a.accepts_empty() && split(0);
          if (!ok)
            for (std::size_t len : detail::nfa_blocks(t, a)(0))
              if (split(len)) {
                ok = true;
                break;
              }
          if (ok)
            return node(Rule::ProdR, s, args, aux);
          break;
        }
        case Kind::Omega: {
          const auto cut = detail::periodic_cut(t, detail::nfa_blocks(t, nfa(f.operand())));
          if (!cut)
            break;
          args.psplit = *cut;
          aux.psplit = PeriodicSplit{plain_lengths(cut->first), plain_lengths(cut->second)};
          return node(Rule::OmegaR, s, args, aux);
        }
        default: break;
        }
        throw NotMember(t.str() + " is not in " + f.str());
      }

    private:
      /// Node for a right rule whose premises are word sequents again.
      ProofPtr node(Rule r, const Sequent& s, const RuleArgs& args, const Aux& aux)
      {
        std::vector<ProofPtr> premises;
        for (const Sequent& p : apply_rule_backward(s, r, args).premises) {
          if (p.antecedent().infinite())
            premises.push_back(infinite(detail::lasso_of(p.antecedent()), p.succedent()));
          else
            premises.push_back(finite(detail::letters_of(p.antecedent().items()), p.succedent()));
        }
        return make_node(r, s, std::move(premises), aux);
      }

      const Nfa& nfa(const Formula& f)
      {
        auto it = nfas_.find(f);
        if (it == nfas_.end())
          it = nfas_.emplace(f, regex_to_nfa(OmegaRegex(f))).first;
        return it->second;
      }

      bool member(const Word& w, const Formula& f) { return nfa(f).accepts(w); }

      std::map<Formula, Nfa> nfas_;
    };
  }

  ProofPtr prove_word_sequent(const LassoWord& w, const OmegaRegex& beta)
  {
    if (beta.sort() != Sort::Omega)
      throw SortError("prove_word_sequent needs an omega-sorted expression, got " + beta.str());
    if (!up_word_in_omega_regex(w, beta))
      throw NotMember(w.str() + " is not in " + beta.str());
    return WordProver().infinite(w, beta.formula());
  }

  ProofPtr prove_finite_word_sequent(const Word& w, const OmegaRegex& f)
  {
    if (f.sort() != Sort::Star)
      throw SortError("prove_finite_word_sequent needs a star-sorted expression, got " + f.str());
    return WordProver().finite(w, f.formula());
  }
}
