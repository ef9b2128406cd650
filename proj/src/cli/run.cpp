#include "omegact/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <sstream>

#include "omegact/error.hpp"
#include "omegact/parse.hpp"
#include "omegact/proof.hpp"
#include "omegact/prover.hpp"
#include "omegact/reduction.hpp"

namespace omegact
{
  namespace
  {
    std::string slurp(const std::string& path)
    {
      std::ifstream in(path);
      if (!in)
        throw Error("cannot read " + path);
      std::stringstream ss;
      ss << in.rdbuf();
      return ss.str();
    }

    void dump(const std::string& path, const std::string& text)
    {
      std::ofstream f(path);
      if (!f)
        throw Error("cannot write " + path);
      f << text;
    }

    /// "abc" is three letters; with spaces or commas the pieces are names.
    Word read_word(const std::string& s)
    {
      if (s.empty() || s == "eps")
        return {};
      Word out;
      if (s.find_first_of(" ,") == std::string::npos) {
        for (char c : s)
          out.push_back(std::string(1, c));
        return out;
      }
      std::string tok;
      std::istringstream in(s);
      while (std::getline(in, tok, ',')) {
        std::istringstream parts(tok);
        std::string x;
        while (parts >> x)
          out.push_back(x);
      }
      return out;
    }

    OmegaRegex regex(const std::string& text)
    {
      const Formula f = parse_formula(text);
      auto r = OmegaRegex::from(f);
      if (!r)
        throw Error(f.str() + " is not an omega-regular expression (use var, ., |, *, ^w)");
      return *r;
    }

    /// alpha |- beta when both sides are omega-regular expressions.
    std::optional<std::pair<OmegaRegex, OmegaRegex>> regex_pair(const Sequent& s)
    {
      const Antecedent& a = s.antecedent();
      if (a.infinite() || a.items().size() != 1)
        return std::nullopt;
      auto l = OmegaRegex::from(a.items()[0]);
      auto r = OmegaRegex::from(s.succedent());
      if (!l || !r || l->sort() != r->sort())
        return std::nullopt;
      return std::make_pair(*l, *r);
    }

    /// u(v)^w |- beta with letters on the left and an expression on the right.
    std::optional<std::pair<LassoWord, OmegaRegex>> word_pair(const Sequent& s)
    {
      const Antecedent& a = s.antecedent();
      if (!a.infinite())
        return std::nullopt;
      auto r = OmegaRegex::from(s.succedent());
      if (!r)
        return std::nullopt;
      Word u, v;
      for (const Formula& f : a.up().prefix()) {
        if (f.kind() != Kind::VarStar)
          return std::nullopt;
        u.push_back(f.name());
      }
      for (const Formula& f : a.up().period()) {
        if (f.kind() != Kind::VarStar)
          return std::nullopt;
        v.push_back(f.name());
      }
      return std::make_pair(LassoWord(u, v), *r);
    }

    struct Prove
    {
      std::string sequent, output;
      std::size_t depth = 8;
    };

    int prove(const Prove& o, std::ostream& out)
    {
      const Sequent s = parse_sequent(o.sequent);
      auto emit = [&](const ProofNode& p) {
        const std::string text = print_certificate(p);
        if (o.output.empty()) {
          out << "certificate:\n" << text;
        } else {
          dump(o.output, text);
          out << "certificate: " << o.output << "\n";
        }
      };

      if (auto w = word_pair(s)) {
        if (!up_word_in_omega_regex(w->first, w->second)) {
          out << "not provable\nmethod: membership\ncounterexample: " << w->first.str() << "\n";
          return kNo;
        }
        out << "provable\nmethod: membership\n";
        emit(*prove_word_sequent(w->first, w->second));
        return kYes;
      }

      SearchOptions opts;
      if (auto pr = regex_pair(s)) {
        const Decision d = decide_omega_regular(pr->first, pr->second);
        if (!d.provable) {
          out << "not provable\nmethod: inclusion\ncounterexample: "
              << (d.counterexample ? d.counterexample->str() : "\"" + word_str(*d.finite_counterexample) + "\"") << "\n";
          return kNo;
        }
        out << "provable\nmethod: inclusion\n";
        const SearchResult r = bounded_search(s, o.depth, opts);
        if (r.found) {
          out << "check: " << check_proof(*r.proof).str() << "\n";
          emit(*r.proof);
        } else {
          out << "certificate: none within depth " << o.depth << "\n";
        }
        return kYes;
      }

      const SearchResult r = bounded_search(s, o.depth, opts);
      if (!r.found) {
        out << "unknown\nmethod: search\nresult: " << r.str() << "\nexplored: " << r.explored << "\n";
        return kUnknown;
      }
      const Verdict v = check_proof(*r.proof);
      out << (v.grade == Grade::FullyChecked ? "provable" : "provable up to the schema bound")
          << "\nmethod: search\nresult: Found\nexplored: " << r.explored << "\ncheck: " << v.str() << "\n";
      emit(*r.proof);
      return v.grade == Grade::FullyChecked ? kYes : kUnknown;
    }
  }

  int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
  {
    CLI::App app{"Omega-iteration action logic: inclusion, proof search and certificate checking", "omegact"};
    app.require_subcommand(1);
    std::function<int()> action;

    auto* parse = app.add_subcommand("parse", "Print the normalized form of a formula or sequent");
    std::string parse_text;
    bool as_sequent = false;
    parse->add_option("EXPR", parse_text, "formula text")->required();
    parse->add_flag("--sequent", as_sequent, "read a sequent instead of a formula");
    parse->callback([&] {
      action = [&] {
        out << (as_sequent ? parse_sequent(parse_text).str() : parse_formula(parse_text).str()) << "\n";
        return kYes;
      };
    });

    auto* include = app.add_subcommand("include", "Decide L(ALPHA) included in L(BETA)");
    std::string alpha, beta;
    include->add_option("ALPHA", alpha)->required();
    include->add_option("BETA", beta)->required();
    include->callback([&] {
      action = [&] {
        const Decision d = decide_omega_regular(regex(alpha), regex(beta));
        if (d.provable) {
          out << "HOLDS\nexplored: " << d.explored << "\n";
          return kYes;
        }
        out << "counterexample: "
            << (d.counterexample ? d.counterexample->str() : "\"" + word_str(*d.finite_counterexample) + "\"")
            << "\nexplored: " << d.explored << "\n";
        return kNo;
      };
    });

    auto* member = app.add_subcommand("member", "Is u(v)^w in L(EXPR)?");
    std::string mu, mv, mexpr;
    member->add_option("U", mu, "prefix letters, e.g. ab or \"x y\"; empty or eps for none")->required();
    member->add_option("V", mv, "period letters, nonempty")->required();
    member->add_option("EXPR", mexpr)->required();
    member->callback([&] {
      action = [&] {
        const Word v = read_word(mv);
        if (v.empty())
          throw Error("the period V must be nonempty");
        const LassoWord w(read_word(mu), v);
        const bool yes = up_word_in_omega_regex(w, regex(mexpr));
        out << (yes ? "member" : "not member") << "\nword: " << w.str() << "\n";
        return yes ? kYes : kNo;
      };
    });

    auto* prove_cmd = app.add_subcommand("prove", "Decide or search for a proof and write a certificate");
    Prove po;
    prove_cmd->add_option("SEQ", po.sequent)->required();
    prove_cmd->add_option("--depth", po.depth, "search depth")->default_val(8);
    prove_cmd->add_option("-o,--output", po.output, "certificate file (stdout when absent)");
    prove_cmd->callback([&] { action = [&] { return prove(po, out); }; });

    auto* check = app.add_subcommand("check", "Check a certificate file");
    std::string cert;
    std::size_t bound = 0;
    check->add_option("CERT", cert)->required();
    auto* bound_opt = check->add_option("--schema-bound", bound, "instances 0..K checked for schemas");
    check->callback([&] {
      action = [&] {
        const ProofPtr p = parse_certificate(slurp(cert));
        const Verdict v = check_proof(*p, bound_opt->count() ? bound : default_schema_bound());
        out << v.str() << "\nconclusion: " << p->conclusion.str() << "\n";
        return v.exit_code();
      };
    });

    auto* reduce = app.add_subcommand("reduce", "Build the totality sequent of grammar files G1 .. G2n");
    std::vector<std::string> grammars;
    std::string seq_out;
    reduce->add_option("GRAMMARS", grammars)->required();
    reduce->add_option("-o,--output", seq_out, "sequent file (stdout when absent)");
    reduce->callback([&] {
      action = [&] {
        std::vector<Cfg> gs;
        for (const auto& path : grammars)
          gs.push_back(parse_cfg(slurp(path)));
        const Sequent s = build_totality_sequent(gs);
        if (seq_out.empty()) {
          out << s.str() << "\n";
        } else {
          dump(seq_out, s.str() + "\n");
          out << "written: " << seq_out << "\n";
        }
        out << "grammars: " << gs.size() << "\n";
        return kYes;
      };
    });

    auto* verify = app.add_subcommand("verify-encoding", "Compare CYK with provability of the type sequents");
    std::string gpath;
    std::size_t max_len = 6;
    verify->add_option("G", gpath)->required();
    verify->add_option("--max-len", max_len)->default_val(6);
    verify->callback([&] {
      action = [&] {
        const EncodingReport r = verify_encoding(parse_cfg(slurp(gpath)), max_len);
        out << (r.ok() ? "agree" : "disagree") << "\n" << r.str();
        return r.ok() ? kYes : kNo;
      };
    });

    try {
      std::vector<std::string> rev(args.rbegin(), args.rend());
      app.parse(rev);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? kYes : kBadInput;
    }
    try {
      return action();
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return kBadInput;
    }
  }
}
