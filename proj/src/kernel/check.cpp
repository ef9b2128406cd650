#include <algorithm>
#include <cstdlib>
#include <set>
#include <utility>

#include "omegact/proof.hpp"

namespace omegact
{
  std::size_t default_schema_bound()
  {
    if (const char* v = std::getenv("OMEGACT_SCHEMA_BOUND")) {
      char* end = nullptr;
      const unsigned long k = std::strtoul(v, &end, 10);
      if (end != v && *end == '\0')
        return k;
    }
    return 8;
  }

  std::string Verdict::str() const
  {
    switch (grade) {
    case Grade::FullyChecked: return "FullyChecked";
    case Grade::SchemaChecked: return "SchemaChecked(" + std::to_string(bound) + ")";
    case Grade::Rejected: return "Rejected at " + (path.empty() ? std::string("/") : path) + ": " + reason;
    }
    return "?";
  }

  int Verdict::exit_code() const
  {
    switch (grade) {
    case Grade::FullyChecked: return 0;
    case Grade::Rejected: return 1;
    case Grade::SchemaChecked: return 2;
    }
    return 1;
  }

  namespace
  {
    struct Rejection
    {
      std::string reason;
      std::string path;
    };

    /// State shared by one vdash derivation.
    struct VdashScope
    {
      const std::vector<SequencePattern>* hyps;
      Formula x;
      std::vector<Antecedent> used;
    };

    class Checker
    {
    public:
      explicit Checker(std::size_t k, bool shallow = false) : k_(k), shallow_(shallow) {}

      bool schema_seen = false;

      void node(const ProofNode& p, const Bindings& env, const std::string& path, VdashScope* scope)
      {
        const Sequent s = ground(p.conclusion, env, path);
        if (scope && p.rule != Rule::Ax && p.rule != Rule::Hyp && !is_left_rule(p.rule))
          fail(path, std::string("right rule used in a vdash derivation: ") + rule_name(p.rule));
        if (scope && p.rule == Rule::OmegaL)
          fail(path, "OmegaL cannot occur in a vdash derivation of a type-1 block");

        if (p.rule == Rule::Hyp) {
          hyp(p, s, env, path, scope);
          return;
        }

        RuleArgs args = evaluate(p.aux, env, path);
        if (p.rule == Rule::StarL && p.schema)
          args.param = p.schema->param;
        if (p.rule == Rule::LOmega)
          args.choices = choices(p, s, env, path);

        Backward b;
        try {
          b = apply_rule_backward(s, p.rule, args);
        } catch (const Error& e) {
          fail(path, std::string("rule mismatch: ") + e.what());
        }

        if (p.rule == Rule::StarL) {
          star_family(p, b, env, path, scope);
          return;
        }
        if (p.schema)
          fail(path, "only StarL carries a schema");

        std::vector<std::pair<const ProofNode*, std::size_t>> prem;  // node, original slot
        for (std::size_t i = 0; i < p.premises.size(); ++i) {
          const Premise& pr = p.premises[i];
          if (!pr.node)
            fail(path, "empty premise");
          std::size_t times = 1;
          if (pr.repeat)
            times = eval(*pr.repeat, env, path);
          for (std::size_t t = 0; t < times; ++t)
            prem.push_back({pr.node.get(), i});
        }
        if (prem.size() != b.premises.size())
          fail(path, "rule mismatch: " + std::string(rule_name(p.rule)) + " needs " + std::to_string(b.premises.size())
                       + " premises, got " + std::to_string(prem.size()));
        for (std::size_t i = 0; i < prem.size(); ++i) {
          const std::string sub = path + "/" + std::to_string(prem[i].second);
          const Sequent got = ground(prem[i].first->conclusion, env, sub);
          if (!(got == b.premises[i]))
            fail(sub, "rule mismatch: premise should be " + b.premises[i].str() + ", got " + got.str());
        }
        // Repeated premises are the same subproof; check each slot once per env.
        if (shallow_)
          return;
        for (std::size_t i = 0; i < p.premises.size(); ++i)
          if (!p.premises[i].repeat || eval(*p.premises[i].repeat, env, path) > 0)
            node(*p.premises[i].node, env, path + "/" + std::to_string(i), scope);
      }

      void vdash(const VdashDerivation& d, const Bindings& env, const std::string& path, const Antecedent* block)
      {
        if (!d.root)
          fail(path, "vdash derivation without a root");
        const Sequent root = ground(d.root->conclusion, env, path);
        if (root.type() != SequenceType::Finite)
          fail(path, "vdash derivation must conclude a type-1 sequent");
        if (block && !(root.antecedent() == *block))
          fail(path, "vdash root " + root.str() + " does not derive the block " + block->str());
        const Formula& x = root.succedent();
        if (x.kind() != Kind::VarStar)
          fail(path, "vdash succedent must be a variable, got " + x.str());
        for (const Formula& f : root.antecedent().items())
          if (f.mentions(x.name()))
            fail(path, "x not fresh: " + x.name() + " occurs in the derived sequence");
        for (const SequencePattern& h : d.hyps) {
          for (const PatternItem& it : h.items)
            for (const Formula& f : it.body)
              if (f.mentions(x.name()))
                fail(path, "x not fresh: " + x.name() + " occurs in a hypothesis");
          if (!h.period.empty())
            fail(path, "hypotheses of a type-1 block must be finite");
        }

        VdashScope scope{&d.hyps, x, {}};
        const bool shallow = std::exchange(shallow_, false);
        node(*d.root, env, path, &scope);
        shallow_ = shallow;

        for (std::size_t i = 0; i < d.hyps.size(); ++i) {
          std::set<std::string> params;
          for (const PatternItem& it : d.hyps[i].items)
            if (it.repeated() && !env.count(it.param))
              params.insert(it.param);
          if (params.size() > 1)
            fail(path, "hypothesis " + d.hyps[i].str() + " has more than one free parameter");
          std::vector<Bindings> envs;
          if (params.empty()) {
            envs.push_back(env);
          } else {
            schema_seen = true;
            for (std::size_t n = 0; n <= k_; ++n) {
              Bindings e2 = env;
              e2[*params.begin()] = n;
              envs.push_back(std::move(e2));
            }
          }
          for (const Bindings& e2 : envs) {
            const Antecedent want = instantiate(d.hyps[i], e2, path);
            if (std::find(scope.used.begin(), scope.used.end(), want) == scope.used.end())
              fail(path, "unused hypothesis " + want.str() + " |- " + x.str());
          }
        }
      }

    private:
      [[noreturn]] void fail(const std::string& path, const std::string& reason) { throw Rejection{reason, path}; }

      std::size_t eval(const Index& i, const Bindings& env, const std::string& path)
      {
        try {
          return i.eval(env);
        } catch (const Error& e) {
          fail(path, e.what());
        }
      }

      Sequent ground(const SequentPattern& p, const Bindings& env, const std::string& path)
      {
        try {
          return p.instantiate(env);
        } catch (const Error& e) {
          fail(path, std::string("malformed conclusion: ") + e.what());
        }
      }

      Antecedent instantiate(const SequencePattern& p, const Bindings& env, const std::string& path)
      {
        try {
          return p.instantiate(env);
        } catch (const Error& e) {
          fail(path, std::string("malformed hypothesis: ") + e.what());
        }
      }

      RuleArgs evaluate(const Aux& aux, const Bindings& env, const std::string& path)
      {
        RuleArgs a;
        try {
          if (aux.at)
            a.at = aux.at->eval(env);
          a.choice = aux.choice;
          if (aux.span)
            a.span = aux.span->eval(env);
          a.span_rest = aux.span_rest;
          if (aux.split)
            a.split = aux.split->eval(env);
          if (aux.blocks)
            a.blocks = expand(*aux.blocks, env);
          if (aux.psplit)
            a.psplit = std::make_pair(expand(aux.psplit->prefix, env), expand(aux.psplit->period, env));
        } catch (const Error& e) {
          fail(path, e.what());
        }
        return a;
      }

      void hyp(const ProofNode& p, const Sequent& s, const Bindings& env, const std::string& path, VdashScope* scope)
      {
        if (!scope)
          fail(path, "hypothesis outside a vdash derivation");
        if (!p.premises.empty() || p.schema)
          fail(path, "a hypothesis has no premises");
        if (!(s.succedent() == scope->x))
          fail(path, "hypothesis must conclude the fresh variable " + scope->x.str());
        for (const SequencePattern& h : *scope->hyps) {
          // A free parameter ranges over n with n copies fitting in the leaf.
          std::string free;
          for (const PatternItem& it : h.items)
            if (it.repeated() && !env.count(it.param))
              free = it.param;
          const std::size_t top = free.empty() ? 0 : s.antecedent().length();
          for (std::size_t n = 0; n <= top; ++n) {
            Bindings e2 = env;
            if (!free.empty())
              e2[free] = n;
            Antecedent a;
            try {
              a = h.instantiate(e2);
            } catch (const Error&) {
              continue;
            }
            if (a == s.antecedent()) {
              scope->used.push_back(a);
              return;
            }
          }
        }
        fail(path, "not a hypothesis: " + s.str());
      }

      std::vector<std::vector<std::vector<Formula>>> choices(const ProofNode& p, const Sequent& s, const Bindings& env,
                                                            const std::string& path)
      {
        if (!p.aux.psplit)
          fail(path, "rule mismatch: LOmega needs a periodic split");
        RuleArgs split = evaluate(p.aux, env, path);
        std::vector<std::vector<Formula>> blocks;
        try {
          blocks = split_blocks(s.antecedent(), split.psplit->first, split.psplit->second);
        } catch (const Error& e) {
          fail(path, e.what());
        }
        if (p.aux.vdash.size() != blocks.size())
          fail(path, "LOmega needs one vdash derivation per block (" + std::to_string(blocks.size()) + "), got "
                       + std::to_string(p.aux.vdash.size()));
        std::vector<std::vector<std::vector<Formula>>> out;
        for (std::size_t i = 0; i < blocks.size(); ++i) {
          const std::string sub = path + "/vdash" + std::to_string(i);
          const Antecedent block = Antecedent::finite(blocks[i]);
          vdash(p.aux.vdash[i], env, sub, &block);
          std::vector<std::vector<Formula>> m;
          for (const SequencePattern& h : p.aux.vdash[i].hyps) {
            if (!h.ground() && std::any_of(h.items.begin(), h.items.end(), [&](const PatternItem& it) {
                  return it.repeated() && !env.count(it.param);
                }))
              fail(sub, "choice set unsupported: infinite hypothesis family " + h.str());
            m.push_back(instantiate(h, env, sub).items());
          }
          out.push_back(std::move(m));
        }
        return out;
      }

      void star_family(const ProofNode& p, const Backward& b, const Bindings& env, const std::string& path,
                       VdashScope* scope)
      {
        if (!p.schema)
          fail(path, "StarL needs a premise schema");
        if (!p.premises.empty())
          fail(path, "StarL premises are given by its schema");
        const Schema& sc = *p.schema;
        if (!sc.body && sc.instances.empty())
          fail(path, "empty schema");
        schema_seen = true;
        for (std::size_t n = 0; n <= k_; ++n) {
          Bindings e2 = env;
          e2[sc.param] = n;
          const Sequent want = ground(*b.family, e2, path);
          const std::string sub = path + "/n=" + std::to_string(n);
          if (sc.body) {
            const Sequent got = ground(sc.body->conclusion, e2, sub);
            if (!(got == want))
              fail(sub, "schema instance mismatch: expected " + want.str() + ", got " + got.str());
            if (!shallow_)
              node(*sc.body, e2, sub, scope);
          } else {
            if (n >= sc.instances.size())
              fail(sub, "schema instance missing");
            const Sequent got = ground(sc.instances[n]->conclusion, env, sub);
            if (!(got == want))
              fail(sub, "schema instance mismatch: expected " + want.str() + ", got " + got.str());
            if (!shallow_)
              node(*sc.instances[n], env, sub, scope);
          }
        }
      }

      std::size_t k_;
      bool shallow_;
    };

    Verdict finish(const Checker& c, std::size_t k)
    {
      Verdict v;
      if (c.schema_seen) {
        v.grade = Grade::SchemaChecked;
        v.bound = k;
      }
      return v;
    }
  }

  Verdict check_proof(const ProofNode& p, std::size_t schema_bound)
  {
    Checker c(schema_bound);
    try {
      c.node(p, {}, "", nullptr);
    } catch (const Rejection& r) {
      return {Grade::Rejected, 0, r.reason, r.path};
    }
    return finish(c, schema_bound);
  }

  Verdict check_step(const ProofNode& p, std::size_t schema_bound)
  {
    Checker c(schema_bound, true);
    try {
      c.node(p, {}, "", nullptr);
    } catch (const Rejection& r) {
      return {Grade::Rejected, 0, r.reason, r.path};
    }
    return finish(c, schema_bound);
  }

  Verdict check_vdash(const VdashDerivation& d, std::size_t schema_bound)
  {
    Checker c(schema_bound);
    try {
      c.vdash(d, {}, "", nullptr);
    } catch (const Rejection& r) {
      return {Grade::Rejected, 0, r.reason, r.path};
    }
    return finish(c, schema_bound);
  }
}
