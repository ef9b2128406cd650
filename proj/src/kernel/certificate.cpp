#include <cctype>

#include "omegact/parse.hpp"
#include "omegact/proof.hpp"

namespace omegact
{
  namespace
  {
    struct SExpr
    {
      enum class Tag
      {
        Atom,
        String,
        List,
      } tag;
      std::string text;
      std::vector<SExpr> items;
      std::size_t pos = 0;

      bool is_list(const char* head) const
      {
        return tag == Tag::List && !items.empty() && items[0].tag == Tag::Atom && items[0].text == head;
      }
    };

    class Reader
    {
    public:
      explicit Reader(const std::string& text) : s_(text) {}

      SExpr read()
      {
        skip();
        if (i_ >= s_.size())
          throw ParseError("unexpected end of certificate", i_);
        const std::size_t start = i_;
        if (s_[i_] == '(') {
          ++i_;
          SExpr list{SExpr::Tag::List, {}, {}, start};
          while (true) {
            skip();
            if (i_ >= s_.size())
              throw ParseError("unclosed parenthesis", start);
            if (s_[i_] == ')') {
              ++i_;
              return list;
            }
            list.items.push_back(read());
          }
        }
        if (s_[i_] == ')')
          throw ParseError("unexpected ')'", i_);
        if (s_[i_] == '"') {
          ++i_;
          std::string out;
          while (i_ < s_.size() && s_[i_] != '"') {
            if (s_[i_] == '\\' && i_ + 1 < s_.size())
              ++i_;
            out += s_[i_++];
          }
          if (i_ >= s_.size())
            throw ParseError("unterminated string", start);
          ++i_;
          return {SExpr::Tag::String, std::move(out), {}, start};
        }
        std::string out;
        while (i_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[i_])) && s_[i_] != '(' && s_[i_] != ')'
               && s_[i_] != '"' && s_[i_] != ';')
          out += s_[i_++];
        return {SExpr::Tag::Atom, std::move(out), {}, start};
      }

      bool at_end()
      {
        skip();
        return i_ >= s_.size();
      }

      std::size_t pos() const { return i_; }

    private:
      void skip()
      {
        while (i_ < s_.size()) {
          if (std::isspace(static_cast<unsigned char>(s_[i_]))) {
            ++i_;
          } else if (s_[i_] == ';') {
            while (i_ < s_.size() && s_[i_] != '\n')
              ++i_;
          } else {
            break;
          }
        }
      }

      const std::string& s_;
      std::size_t i_ = 0;
    };

    [[noreturn]] void bad(const SExpr& e, const std::string& msg)
    {
      throw ParseError(msg, e.pos);
    }

    const SExpr& atom(const SExpr& e, const char* what)
    {
      if (e.tag != SExpr::Tag::Atom)
        bad(e, std::string("expected ") + what);
      return e;
    }

    const std::string& string_of(const SExpr& e, const char* what)
    {
      if (e.tag != SExpr::Tag::String)
        bad(e, std::string("expected a quoted ") + what);
      return e.text;
    }

    Index index_of(const SExpr& e)
    {
      try {
        return Index::parse(atom(e, "an index").text);
      } catch (const ParseError&) {
        throw;
      } catch (const Error& err) {
        bad(e, err.what());
      }
    }

    template <typename T, typename F>
    T wrap(const SExpr& e, F f)
    {
      try {
        return f();
      } catch (const ParseError& err) {
        throw ParseError(std::string(err.what()) + " (in a string)", e.pos);
      } catch (const Error& err) {
        bad(e, err.what());
      }
    }

    std::vector<LengthItem> lengths_of(const SExpr& list, std::size_t from)
    {
      std::vector<LengthItem> out;
      for (std::size_t i = from; i < list.items.size(); ++i) {
        const SExpr& it = list.items[i];
        if (it.is_list("repeat")) {
          if (it.items.size() < 3)
            bad(it, "repeat needs a count and at least one length");
          LengthItem li;
          li.repeat = index_of(it.items[1]);
          for (std::size_t j = 2; j < it.items.size(); ++j)
            li.lengths.push_back(index_of(it.items[j]));
          out.push_back(std::move(li));
        } else {
          out.push_back({{index_of(it)}, std::nullopt});
        }
      }
      return out;
    }

    ProofPtr node_of(const SExpr& e);

    VdashDerivation vdash_of(const SExpr& e)
    {
      VdashDerivation d;
      for (std::size_t i = 1; i < e.items.size(); ++i) {
        const SExpr& it = e.items[i];
        if (it.is_list("hyp")) {
          if (it.items.size() != 2)
            bad(it, "hyp takes one string");
          const std::string& text = string_of(it.items[1], "sequence");
          d.hyps.push_back(wrap<SequencePattern>(it.items[1], [&] { return parse_sequence_pattern(text); }));
        } else if (it.is_list("rule")) {
          if (d.root)
            bad(it, "vdash takes one derivation");
          d.root = node_of(it);
        } else {
          bad(it, "expected (hyp ...) or (rule ...) inside vdash");
        }
      }
      if (!d.root)
        bad(e, "vdash without a derivation");
      return d;
    }

    ProofPtr node_of(const SExpr& e)
    {
      if (!e.is_list("rule"))
        bad(e, "expected (rule ...)");
      if (e.items.size() < 3)
        bad(e, "rule needs a tag and a conclusion");
      const SExpr& tag = atom(e.items[1], "a rule tag");
      const auto rule = rule_from_name(tag.text);
      if (!rule)
        bad(tag, "unknown rule tag " + tag.text);
      const SExpr& seq = e.items[2];
      if (!seq.is_list("seq") || seq.items.size() != 2)
        bad(seq, "expected (seq \"...\")");
      const std::string& text = string_of(seq.items[1], "sequent");
      auto n = std::make_shared<ProofNode>(
        *rule, wrap<SequentPattern>(seq.items[1], [&] { return parse_sequent_pattern(text); }));

      for (std::size_t i = 3; i < e.items.size(); ++i) {
        const SExpr& it = e.items[i];
        if (it.tag != SExpr::Tag::List || it.items.empty() || it.items[0].tag != SExpr::Tag::Atom)
          bad(it, "expected an annotation list");
        const std::string& head = it.items[0].text;
        auto one = [&]() -> const SExpr& {
          if (it.items.size() != 2)
            bad(it, head + " takes one argument");
          return it.items[1];
        };
        if (head == "at") {
          n->aux.at = index_of(one());
        } else if (head == "choice") {
          const std::string& v = atom(one(), "1 or 2").text;
          if (v != "1" && v != "2")
            bad(it, "choice must be 1 or 2");
          n->aux.choice = static_cast<std::size_t>(v[0] - '0');
        } else if (head == "span") {
          const SExpr& v = one();
          if (v.tag == SExpr::Tag::Atom && v.text == "rest")
            n->aux.span_rest = true;
          else
            n->aux.span = index_of(v);
        } else if (head == "split") {
          n->aux.split = index_of(one());
        } else if (head == "blocks") {
          n->aux.blocks = lengths_of(it, 1);
        } else if (head == "psplit") {
          if (it.items.size() != 3 || !it.items[1].is_list("prefix") || !it.items[2].is_list("period"))
            bad(it, "psplit needs (prefix ...) (period ...)");
          n->aux.psplit = PeriodicSplit{lengths_of(it.items[1], 1), lengths_of(it.items[2], 1)};
        } else if (head == "vdash") {
          n->aux.vdash.push_back(vdash_of(it));
        } else if (head == "premises") {
          for (std::size_t j = 1; j < it.items.size(); ++j) {
            const SExpr& p = it.items[j];
            if (p.is_list("repeat")) {
              if (p.items.size() != 3)
                bad(p, "repeat in premises takes a count and one node");
              n->premises.push_back({node_of(p.items[2]), index_of(p.items[1])});
            } else {
              n->premises.push_back({node_of(p), std::nullopt});
            }
          }
        } else if (head == "schema") {
          if (it.items.size() != 3)
            bad(it, "schema takes a parameter and a body");
          Schema sc;
          sc.param = atom(it.items[1], "a parameter name").text;
          const SExpr& body = it.items[2];
          if (body.is_list("instances")) {
            for (std::size_t j = 1; j < body.items.size(); ++j)
              sc.instances.push_back(node_of(body.items[j]));
          } else {
            sc.body = node_of(body);
          }
          n->schema = std::move(sc);
        } else {
          bad(it, "unknown annotation " + head);
        }
      }
      return n;
    }

    // --- printing ---------------------------------------------------------

    std::string quote(const std::string& s)
    {
      std::string out = "\"";
      for (char c : s) {
        if (c == '"' || c == '\\')
          out += '\\';
        out += c;
      }
      return out + '"';
    }

    std::string lengths_str(const std::vector<LengthItem>& items)
    {
      std::string out;
      for (const LengthItem& it : items) {
        out += ' ';
        if (!it.repeat) {
          out += it.lengths.at(0).str();
          continue;
        }
        out += "(repeat " + it.repeat->str();
        for (const Index& l : it.lengths)
          out += ' ' + l.str();
        out += ')';
      }
      return out;
    }

    void print(const ProofNode& p, std::size_t indent, std::string& out)
    {
      const std::string pad(indent, ' ');
      out += "(rule " + std::string(rule_name(p.rule)) + " (seq " + quote(p.conclusion.str()) + ")";
      const Aux& a = p.aux;
      if (a.at)
        out += " (at " + a.at->str() + ")";
      if (a.choice)
        out += " (choice " + std::to_string(*a.choice) + ")";
      if (a.span_rest)
        out += " (span rest)";
      else if (a.span)
        out += " (span " + a.span->str() + ")";
      if (a.split)
        out += " (split " + a.split->str() + ")";
      if (a.blocks)
        out += " (blocks" + lengths_str(*a.blocks) + ")";
      if (a.psplit)
        out += " (psplit (prefix" + lengths_str(a.psplit->prefix) + ") (period" + lengths_str(a.psplit->period) + "))";
      for (const VdashDerivation& d : a.vdash) {
        out += "\n" + pad + "  (vdash";
        for (const SequencePattern& h : d.hyps)
          out += " (hyp " + quote(h.str()) + ")";
        out += "\n" + pad + "    ";
        print(*d.root, indent + 4, out);
        out += ")";
      }
      if (!p.premises.empty()) {
        out += "\n" + pad + "  (premises";
        for (const Premise& pr : p.premises) {
          out += "\n" + pad + "    ";
          if (pr.repeat) {
            out += "(repeat " + pr.repeat->str() + " ";
            print(*pr.node, indent + 4, out);
            out += ")";
          } else {
            print(*pr.node, indent + 4, out);
          }
        }
        out += ")";
      }
      if (p.schema) {
        out += "\n" + pad + "  (schema " + p.schema->param;
        if (p.schema->body) {
          out += "\n" + pad + "    ";
          print(*p.schema->body, indent + 4, out);
        } else {
          out += "\n" + pad + "    (instances";
          for (const ProofPtr& inst : p.schema->instances) {
            out += "\n" + pad + "      ";
            print(*inst, indent + 6, out);
          }
          out += ")";
        }
        out += ")";
      }
      out += ")";
    }
  }

  ProofPtr parse_certificate(const std::string& text)
  {
    Reader r(text);
    SExpr e = r.read();
    if (!r.at_end())
      throw ParseError("trailing text after the certificate", r.pos());
    return node_of(e);
  }

  std::string print_certificate(const ProofNode& p)
  {
    std::string out;
    print(p, 0, out);
    return out + "\n";
  }
}
