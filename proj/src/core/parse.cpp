#include "omegact/parse.hpp"

#include <cctype>
#include <string>
#include <vector>

#include "omegact/error.hpp"

namespace omegact
{
  namespace
  {
    enum class Tok
    {
      Name,
      OmegaName,
      LParen,
      RParen,
      LBrace,
      RBrace,
      LBracket,
      RBracket,
      Dot,
      Backslash,
      Slash,
      Amp,
      Bar,
      Star,
      OmegaPow,  // ^w
      Caret,     // ^ followed by a parameter name (after ']')
      Comma,
      Turnstile,
      End,
    };

    struct Token
    {
      Tok kind;
      std::string text;
      std::size_t pos;
    };

    bool name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
    bool name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

    std::vector<Token> lex(std::string_view s)
    {
      std::vector<Token> out;
      std::size_t i = 0;
      auto read_name = [&](std::size_t from) {
        std::size_t j = from;
        while (j < s.size() && name_char(s[j]))
          ++j;
        return j;
      };
      while (i < s.size()) {
        const char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
          ++i;
          continue;
        }
        const std::size_t start = i;
        if (name_start(c)) {
          i = read_name(i);
          out.push_back({Tok::Name, std::string(s.substr(start, i - start)), start});
          continue;
        }
        if (c == '$') {
          if (i + 1 >= s.size() || !name_start(s[i + 1]))
            throw ParseError("expected a variable name after '$'", i);
          i = read_name(i + 1);
          out.push_back({Tok::OmegaName, std::string(s.substr(start + 1, i - start - 1)), start});
          continue;
        }
        if (c == '^') {
          if (i + 1 >= s.size() || !name_start(s[i + 1]))
            throw ParseError("expected 'w' or a parameter name after '^'", i);
          i = read_name(i + 1);
          std::string name(s.substr(start + 1, i - start - 1));
          const bool after_group = !out.empty() && out.back().kind == Tok::RBracket;
          if (!after_group && name != "w")
            throw ParseError("unknown postfix operator ^" + name, start);
          out.push_back({after_group ? Tok::Caret : Tok::OmegaPow, std::move(name), start});
          continue;
        }
        if (c == '|' && i + 1 < s.size() && s[i + 1] == '-') {
          out.push_back({Tok::Turnstile, "|-", start});
          i += 2;
          continue;
        }
        if (c == '=' && i + 1 < s.size() && s[i + 1] == '>') {
          out.push_back({Tok::Turnstile, "=>", start});
          i += 2;
          continue;
        }
        Tok k;
        switch (c) {
        case '(': k = Tok::LParen; break;
        case ')': k = Tok::RParen; break;
        case '{': k = Tok::LBrace; break;
        case '}': k = Tok::RBrace; break;
        case '[': k = Tok::LBracket; break;
        case ']': k = Tok::RBracket; break;
        case '.': k = Tok::Dot; break;
        case '\\': k = Tok::Backslash; break;
        case '/': k = Tok::Slash; break;
        case '&': k = Tok::Amp; break;
        case '|': k = Tok::Bar; break;
        case '*': k = Tok::Star; break;
        case ',': k = Tok::Comma; break;
        default: throw ParseError(std::string("unexpected character '") + c + "'", i);
        }
        out.push_back({k, std::string(1, c), start});
        ++i;
      }
      out.push_back({Tok::End, "", s.size()});
      return out;
    }

    class Parser
    {
    public:
      explicit Parser(std::string_view text) : toks_(lex(text)) {}

      Formula formula() { return join(); }

      SequencePattern sequence()
      {
        SequencePattern p;
        if (at(Tok::Turnstile) || at(Tok::End))
          return p;
        while (true) {
          if (at(Tok::LBrace)) {
            next();
            p.period.push_back(formula());
            while (accept(Tok::Comma))
              p.period.push_back(formula());
            expect(Tok::RBrace, "'}'");
            if (!at(Tok::Turnstile) && !at(Tok::End))
              fail("the braced period must end the antecedent");
            return p;
          }
          if (at(Tok::LBracket)) {
            next();
            PatternItem item;
            item.body.push_back(formula());
            while (accept(Tok::Comma))
              item.body.push_back(formula());
            expect(Tok::RBracket, "']'");
            if (!at(Tok::Caret))
              fail("expected ^param after a repeated group");
            item.param = next().text;
            p.items.push_back(std::move(item));
          } else {
            p.items.push_back({{formula()}, {}});
          }
          if (!accept(Tok::Comma))
            return p;
        }
      }

      SequentPattern sequent()
      {
        SequencePattern ant = sequence();
        expect(Tok::Turnstile, "'|-'");
        Formula succ = formula();
        finish();
        return {std::move(ant), std::move(succ)};
      }

      void finish()
      {
        if (!at(Tok::End))
          fail("unexpected trailing input '" + peek().text + "'");
      }

    private:
      const Token& peek() const { return toks_[i_]; }
      bool at(Tok k) const { return peek().kind == k; }
      const Token& next() { return toks_[i_++]; }
      bool accept(Tok k)
      {
        if (!at(k))
          return false;
        ++i_;
        return true;
      }
      void expect(Tok k, const char* what)
      {
        if (!accept(k))
          fail(std::string("expected ") + what);
      }
      [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().pos); }

      Formula join()
      {
        Formula a = meet();
        if (accept(Tok::Bar))
          return Formula::join(a, join());
        return a;
      }

      Formula meet()
      {
        Formula a = prod();
        if (accept(Tok::Amp))
          return Formula::meet(a, meet());
        return a;
      }

      Formula prod()
      {
        Formula a = under();
        if (accept(Tok::Dot))
          return Formula::prod(a, prod());
        return a;
      }

      Formula under()
      {
        Formula b = over();
        if (accept(Tok::Backslash))
          return Formula::under(b, under());
        return b;
      }

      Formula over()
      {
        Formula a = postfix();
        while (accept(Tok::Slash))
          a = Formula::over(a, postfix());
        return a;
      }

      Formula postfix()
      {
        Formula a = atom();
        while (true) {
          if (accept(Tok::Star))
            a = Formula::star(a);
          else if (accept(Tok::OmegaPow))
            a = Formula::omega(a);
          else
            return a;
        }
      }

      Formula atom()
      {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::Name:
          next();
          return Formula::var(t.text);
        case Tok::OmegaName:
          next();
          return Formula::omega_var(t.text);
        case Tok::LParen: {
          next();
          Formula f = join();
          expect(Tok::RParen, "')'");
          return f;
        }
        default:
          fail(t.kind == Tok::End ? "unexpected end of input" : "unexpected '" + t.text + "'");
        }
      }

      std::vector<Token> toks_;
      std::size_t i_ = 0;
    };
  }

  Formula parse_formula(std::string_view text)
  {
    Parser p(text);
    Formula f = p.formula();
    p.finish();
    return f;
  }

  SequentPattern parse_sequent_pattern(std::string_view text)
  {
    Parser p(text);
    SequentPattern s = p.sequent();
    // Sort-check the shape with every group instantiated once.
    Bindings probe;
    for (const PatternItem& it : s.antecedent.items)
      if (it.repeated())
        probe[it.param] = 1;
    (void)s.instantiate(probe);
    return s;
  }

  Sequent parse_sequent(std::string_view text)
  {
    SequentPattern s = parse_sequent_pattern(text);
    if (!s.ground())
      throw ParseError("repeated groups are only allowed in certificate templates", 0);
    return s.instantiate({});
  }

  SequencePattern parse_sequence_pattern(std::string_view text)
  {
    Parser p(text);
    SequencePattern s = p.sequence();
    p.finish();
    return s;
  }
}
