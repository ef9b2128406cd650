#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "omegact/formula.hpp"

namespace omegact
{
  /// Ultimately periodic sequence prefix . period . period . ...
  ///
  /// With an empty period the sequence is just the finite prefix.
  class UpSequence
  {
  public:
    UpSequence() = default;
    UpSequence(std::vector<Formula> prefix, std::vector<Formula> period);

    const std::vector<Formula>& prefix() const { return prefix_; }
    const std::vector<Formula>& period() const { return period_; }
    bool infinite() const { return !period_.empty(); }

    /// i-th element; throws std::out_of_range past the end of a finite sequence.
    const Formula& index(std::size_t i) const;

    /// Primitive period, shortest prefix.  Pointwise equal to *this.
    UpSequence normalized() const;

    friend bool operator==(const UpSequence&, const UpSequence&) = default;

  private:
    std::vector<Formula> prefix_;
    std::vector<Formula> period_;
  };

  /// Smallest p dividing xs.size() such that xs is a repetition of its first p items.
  template <typename T>
  std::size_t primitive_root_length(const std::vector<T>& xs)
  {
    const std::size_t n = xs.size();
    for (std::size_t p = 1; p < n; ++p) {
      if (n % p != 0)
        continue;
      bool ok = true;
      for (std::size_t i = p; i < n && ok; ++i)
        ok = xs[i] == xs[i - p];
      if (ok)
        return p;
    }
    return n;
  }

  /// Shared normalization for lasso-shaped sequences.
  template <typename T>
  void normalize_lasso(std::vector<T>& prefix, std::vector<T>& period)
  {
    if (period.empty())
      return;
    period.erase(period.begin() + static_cast<long>(primitive_root_length(period)), period.end());
    while (!prefix.empty() && prefix.back() == period.back()) {
      prefix.pop_back();
      T last = period.back();
      period.pop_back();
      period.insert(period.begin(), std::move(last));
    }
  }

  /// Antecedent shapes: type 1 (finite, star items), type 2 (infinite,
  /// star items), type 3 (finite star items followed by one omega item).
  enum class SequenceType : unsigned char
  {
    Finite = 1,
    Periodic = 2,
    OmegaTail = 3,
  };

  /// A correct sequence.  Positions count from 0; for type 3 the omega
  /// item sits at position `length() - 1`.
  class Antecedent
  {
  public:
    Antecedent() = default;

    /// Type 1 or type 3, decided by the sort of the last item.
    static Antecedent finite(std::vector<Formula> items);
    /// Type 2.  The period must be nonempty.
    static Antecedent periodic(UpSequence seq);

    SequenceType type() const { return type_; }
    bool infinite() const { return type_ == SequenceType::Periodic; }
    bool empty() const { return type_ == SequenceType::Finite && items_.empty(); }

    /// Number of items of a finite sequence (including a type 3 tail).
    std::size_t length() const;
    /// Finite items (types 1/3); for type 2 the normalized prefix.
    const std::vector<Formula>& items() const { return items_; }
    /// Type 2 only.
    const UpSequence& up() const { return up_; }

    /// True when `i` is a valid position.
    bool has(std::size_t i) const;
    const Formula& at(std::size_t i) const;

    /// First k items as a type-1 list; all of them must be star-sorted.
    std::vector<Formula> take(std::size_t k) const;
    /// Everything from position k on.
    Antecedent drop(std::size_t k) const;
    /// Replace positions [pos, pos+count) with `repl`.
    Antecedent splice(std::size_t pos, std::size_t count, std::span<const Formula> repl) const;
    /// front, rest
    static Antecedent concat(std::span<const Formula> front, const Antecedent& rest);

    std::string str() const;

    friend bool operator==(const Antecedent&, const Antecedent&) = default;

  private:
    SequenceType type_ = SequenceType::Finite;
    std::vector<Formula> items_;
    UpSequence up_;
  };

  /// Sort-checked sequent.  Type 1 antecedents need a star succedent,
  /// types 2 and 3 an omega succedent.
  class Sequent
  {
  public:
    Sequent(Antecedent ant, Formula succ);

    const Antecedent& antecedent() const { return ant_; }
    const Formula& succedent() const { return succ_; }
    SequenceType type() const { return ant_.type(); }

    std::string str() const;

    friend bool operator==(const Sequent&, const Sequent&) = default;

  private:
    Antecedent ant_;
    Formula succ_;
  };

  std::ostream& operator<<(std::ostream& os, const Sequent& s);

  // ---------------------------------------------------------------------
  // Patterns: sequences with repeated groups `[A, B]^n`, used to present
  // the omega-indexed premise families of (*L) by a single template.

  using Bindings = std::map<std::string, std::size_t>;

  struct PatternItem
  {
    std::vector<Formula> body;
    std::string param;  // empty: a single plain formula body[0]

    bool repeated() const { return !param.empty(); }
    friend bool operator==(const PatternItem&, const PatternItem&) = default;
  };

  struct SequencePattern
  {
    std::vector<PatternItem> items;
    std::vector<Formula> period;  // nonempty: type 2

    static SequencePattern of(const Antecedent& a);
    bool ground() const;
    /// Throws Error on unbound parameters or ill-sorted results.
    Antecedent instantiate(const Bindings& env) const;
    std::string str() const;
    friend bool operator==(const SequencePattern&, const SequencePattern&) = default;
  };

  struct SequentPattern
  {
    SequencePattern antecedent;
    Formula succedent;

    static SequentPattern of(const Sequent& s);
    bool ground() const { return antecedent.ground(); }
    Sequent instantiate(const Bindings& env) const;
    std::string str() const;
    friend bool operator==(const SequentPattern&, const SequentPattern&) = default;
  };

  /// Infinite word u . v^w over variable names.  Always stored normalized.
  class LassoWord
  {
  public:
    LassoWord(std::vector<std::string> u, std::vector<std::string> v);

    const std::vector<std::string>& prefix() const { return u_; }
    const std::vector<std::string>& period() const { return v_; }
    const std::string& at(std::size_t i) const;
    /// u . v^k truncated to n letters.
    std::vector<std::string> unroll(std::size_t n) const;

    /// `u(v)^w`; letters are concatenated when all are single characters,
    /// otherwise separated by spaces.
    std::string str() const;

    friend bool operator==(const LassoWord&, const LassoWord&) = default;

  private:
    std::vector<std::string> u_;
    std::vector<std::string> v_;
  };

  /// Joins letters the same way LassoWord::str does.
  std::string word_str(const std::vector<std::string>& w);
}
