#include "omegact/formula.hpp"

#include <ostream>

#include "omegact/error.hpp"

namespace omegact
{
  struct Formula::Node
  {
    Kind kind;
    Sort sort;
    std::string name;
    std::vector<Formula> children;
    std::size_t size;
    std::size_t hash;
  };

  namespace
  {
    std::size_t mix(std::size_t seed, std::size_t v)
    {
      return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
    }

    [[noreturn]] void sort_fail(const std::string& what, const Formula& a, const Formula& b)
    {
      throw SortError(what + ": " + a.str() + " : " + sort_name(a.sort()) + ", "
                      + b.str() + " : " + sort_name(b.sort()));
    }
  }

  const char* sort_name(Sort s)
  {
    return s == Sort::Star ? "star" : "omega";
  }

  Formula Formula::make(Kind k, Sort s, std::string name, const Formula* l, const Formula* r)
  {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->sort = s;
    n->name = std::move(name);
    n->size = 1;
    n->hash = mix(static_cast<std::size_t>(k), std::hash<std::string>{}(n->name));
    for (const Formula* c : {l, r}) {
      if (c == nullptr)
        continue;
      n->children.push_back(*c);
      n->size += c->size();
      n->hash = mix(n->hash, c->hash());
    }
    return Formula(std::move(n));
  }

  Formula Formula::var(std::string name)
  {
    return make(Kind::VarStar, Sort::Star, std::move(name), nullptr, nullptr);
  }

  Formula Formula::omega_var(std::string name)
  {
    return make(Kind::VarOmega, Sort::Omega, std::move(name), nullptr, nullptr);
  }

  Formula Formula::prod(Formula a, Formula b)
  {
    if (a.sort() != Sort::Star)
      sort_fail("left factor of a product must be star-sorted", a, b);
    return make(Kind::Prod, b.sort(), {}, &a, &b);
  }

  Formula Formula::under(Formula b, Formula a)
  {
    if (b.sort() != Sort::Star)
      sort_fail("denominator of \\ must be star-sorted", b, a);
    return make(Kind::Under, a.sort(), {}, &b, &a);
  }

  Formula Formula::over(Formula a, Formula b)
  {
    if (a.sort() != b.sort())
      sort_fail("operands of / must have equal sorts", a, b);
    return make(Kind::Over, Sort::Star, {}, &a, &b);
  }

  Formula Formula::join(Formula a, Formula b)
  {
    if (a.sort() != b.sort())
      sort_fail("operands of | must have equal sorts", a, b);
    return make(Kind::Join, a.sort(), {}, &a, &b);
  }

  Formula Formula::meet(Formula a, Formula b)
  {
    if (a.sort() != b.sort())
      sort_fail("operands of & must have equal sorts", a, b);
    return make(Kind::Meet, a.sort(), {}, &a, &b);
  }

  Formula Formula::star(Formula a)
  {
    if (a.sort() != Sort::Star)
      throw SortError("operand of * must be star-sorted: " + a.str());
    return make(Kind::Star, Sort::Star, {}, &a, nullptr);
  }

  Formula Formula::omega(Formula a)
  {
    if (a.sort() != Sort::Star)
      throw SortError("operand of ^w must be star-sorted: " + a.str());
    return make(Kind::Omega, Sort::Omega, {}, &a, nullptr);
  }

  Formula Formula::power(const Formula& a, std::size_t n)
  {
    if (n == 0)
      throw SortError("A^0 is not a formula (the calculus has no unit)");
    Formula result = a;
    for (std::size_t i = 1; i < n; ++i)
      result = prod(a, result);
    return result;
  }

  Kind Formula::kind() const { return node_->kind; }
  Sort Formula::sort() const { return node_->sort; }
  bool Formula::is_var() const { return kind() == Kind::VarStar || kind() == Kind::VarOmega; }
  const std::string& Formula::name() const { return node_->name; }
  const Formula& Formula::left() const { return node_->children.at(0); }
  const Formula& Formula::right() const { return node_->children.at(1); }
  std::size_t Formula::size() const { return node_->size; }
  std::size_t Formula::hash() const { return node_->hash; }

  void Formula::collect_vars(std::set<std::string>& star_vars, std::set<std::string>& omega_vars) const
  {
    switch (kind()) {
    case Kind::VarStar:
      star_vars.insert(name());
      return;
    case Kind::VarOmega:
      omega_vars.insert(name());
      return;
    default:
      for (const Formula& c : node_->children)
        c.collect_vars(star_vars, omega_vars);
    }
  }

  bool Formula::mentions(const std::string& var_name) const
  {
    if (is_var())
      return name() == var_name;
    for (const Formula& c : node_->children)
      if (c.mentions(var_name))
        return true;
    return false;
  }

  bool operator==(const Formula& a, const Formula& b)
  {
    if (a.node_ == b.node_)
      return true;
    if (a.hash() != b.hash() || a.size() != b.size())
      return false;
    return (a <=> b) == 0;
  }

  std::strong_ordering operator<=>(const Formula& a, const Formula& b)
  {
    if (a.node_ == b.node_)
      return std::strong_ordering::equal;
    if (auto c = a.kind() <=> b.kind(); c != 0)
      return c;
    if (auto c = a.name() <=> b.name(); c != 0)
      return c;
    const auto& ac = a.node_->children;
    const auto& bc = b.node_->children;
    for (std::size_t i = 0; i < ac.size() && i < bc.size(); ++i)
      if (auto c = ac[i] <=> bc[i]; c != 0)
        return c;
    return ac.size() <=> bc.size();
  }

  // Printing.  Binding levels, loosest first:
  //   1 join (right assoc)   2 meet (right assoc)   3 prod (right assoc)
  //   4 under (right assoc)  5 over (left assoc)    6 postfix   7 atom
  namespace
  {
    int level(const Formula& f)
    {
      switch (f.kind()) {
      case Kind::Join: return 1;
      case Kind::Meet: return 2;
      case Kind::Prod: return 3;
      case Kind::Under: return 4;
      case Kind::Over: return 5;
      case Kind::Star:
      case Kind::Omega: return 6;
      default: return 7;
      }
    }

    void print(std::string& out, const Formula& f, int min_level);

    void print_binary(std::string& out, const Formula& f, const char* op, int left_min, int right_min)
    {
      print(out, f.left(), left_min);
      out += op;
      print(out, f.right(), right_min);
    }

    void print(std::string& out, const Formula& f, int min_level)
    {
      const bool paren = level(f) < min_level;
      if (paren)
        out += '(';
      switch (f.kind()) {
      case Kind::VarStar: out += f.name(); break;
      case Kind::VarOmega: out += '$'; out += f.name(); break;
      case Kind::Join: print_binary(out, f, " | ", 2, 1); break;
      case Kind::Meet: print_binary(out, f, " & ", 3, 2); break;
      case Kind::Prod: print_binary(out, f, " . ", 4, 3); break;
      case Kind::Under: print_binary(out, f, " \\ ", 5, 4); break;
      case Kind::Over: print_binary(out, f, " / ", 5, 6); break;
      case Kind::Star: print(out, f.operand(), 6); out += '*'; break;
      case Kind::Omega: print(out, f.operand(), 6); out += "^w"; break;
      }
      if (paren)
        out += ')';
    }
  }

  std::string Formula::str() const
  {
    std::string out;
    print(out, *this, 0);
    return out;
  }

  std::ostream& operator<<(std::ostream& os, const Formula& f)
  {
    return os << f.str();
  }
}
