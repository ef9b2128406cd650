#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace omegact
{
  /// The two sorts: languages of finite words and of infinite words.
  enum class Sort : unsigned char
  {
    Star,
    Omega,
  };

  enum class Kind : unsigned char
  {
    VarStar,   // x
    VarOmega,  // $x
    Prod,      // A . B
    Under,     // B \ A
    Over,      // A / B
    Join,      // A | B
    Meet,      // A & B
    Star,      // A*
    Omega,     // A^w
  };

  /// Immutable, sort-checked formula.  Copies share structure.
  ///
  /// Child accessors: `left()`/`right()` for binary nodes, `operand()` for
  /// star and omega.  For `Under` the left child is the denominator, so
  /// `B \ A` has left() == B and right() == A; `A / B` has left() == A.
  class Formula
  {
  public:
    static Formula var(std::string name);
    static Formula omega_var(std::string name);
    static Formula prod(Formula a, Formula b);
    static Formula under(Formula b, Formula a);
    static Formula over(Formula a, Formula b);
    static Formula join(Formula a, Formula b);
    static Formula meet(Formula a, Formula b);
    static Formula star(Formula a);
    static Formula omega(Formula a);

    /// Right-nested n-fold product a . (a . (... a)), n >= 1.
    static Formula power(const Formula& a, std::size_t n);

    Kind kind() const;
    Sort sort() const;
    bool is_var() const;
    const std::string& name() const;
    const Formula& left() const;
    const Formula& right() const;
    const Formula& operand() const { return left(); }

    /// Number of nodes.
    std::size_t size() const;
    std::size_t hash() const;

    /// Names of star-sorted and omega-sorted variables occurring in the formula.
    void collect_vars(std::set<std::string>& star_vars, std::set<std::string>& omega_vars) const;
    bool mentions(const std::string& var_name) const;

    std::string str() const;

    friend bool operator==(const Formula& a, const Formula& b);
    friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

    struct Node;

  private:
    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static Formula make(Kind k, Sort s, std::string name, const Formula* l, const Formula* r);

    std::shared_ptr<const Node> node_;
  };

  std::ostream& operator<<(std::ostream& os, const Formula& f);

  const char* sort_name(Sort s);
}

template <>
struct std::hash<omegact::Formula>
{
  std::size_t operator()(const omegact::Formula& f) const noexcept { return f.hash(); }
};
