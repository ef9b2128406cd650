#include "omegact/sequent.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "omegact/error.hpp"

namespace omegact
{
  namespace
  {
    void join_formulas(std::string& out, const std::vector<Formula>& fs)
    {
      for (std::size_t i = 0; i < fs.size(); ++i) {
        if (i > 0)
          out += ", ";
        out += fs[i].str();
      }
    }

    void require_star(const Formula& f, const char* where)
    {
      if (f.sort() != Sort::Star)
        throw SortError(std::string("omega-sorted formula ") + f.str() + " " + where);
    }
  }

  // --- UpSequence -------------------------------------------------------

  UpSequence::UpSequence(std::vector<Formula> prefix, std::vector<Formula> period)
    : prefix_(std::move(prefix)), period_(std::move(period))
  {
  }

  const Formula& UpSequence::index(std::size_t i) const
  {
    if (i < prefix_.size())
      return prefix_[i];
    if (period_.empty())
      throw std::out_of_range("index " + std::to_string(i) + " past the end of a finite sequence");
    return period_[(i - prefix_.size()) % period_.size()];
  }

  UpSequence UpSequence::normalized() const
  {
    UpSequence r = *this;
    normalize_lasso(r.prefix_, r.period_);
    return r;
  }

  // --- Antecedent -------------------------------------------------------

  Antecedent Antecedent::finite(std::vector<Formula> items)
  {
    Antecedent a;
    if (!items.empty() && items.back().sort() == Sort::Omega)
      a.type_ = SequenceType::OmegaTail;
    for (std::size_t i = 0; i + (a.type_ == SequenceType::OmegaTail ? 1 : 0) < items.size(); ++i)
      require_star(items[i], "before the end of an antecedent");
    a.items_ = std::move(items);
    return a;
  }

  Antecedent Antecedent::periodic(UpSequence seq)
  {
    if (!seq.infinite())
      throw SortError("a type-2 antecedent needs a nonempty period");
    for (const Formula& f : seq.prefix())
      require_star(f, "inside an infinite antecedent");
    for (const Formula& f : seq.period())
      require_star(f, "inside an infinite antecedent");
    Antecedent a;
    a.type_ = SequenceType::Periodic;
    a.up_ = seq.normalized();
    a.items_ = a.up_.prefix();
    return a;
  }

  std::size_t Antecedent::length() const
  {
    if (infinite())
      throw std::logic_error("length of an infinite antecedent");
    return items_.size();
  }

  bool Antecedent::has(std::size_t i) const
  {
    return infinite() || i < items_.size();
  }

  const Formula& Antecedent::at(std::size_t i) const
  {
    if (infinite())
      return up_.index(i);
    if (i >= items_.size())
      throw std::out_of_range("antecedent position " + std::to_string(i));
    return items_[i];
  }

  std::vector<Formula> Antecedent::take(std::size_t k) const
  {
    if (!infinite() && k > items_.size())
      throw std::out_of_range("take past the end of an antecedent");
    std::vector<Formula> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
      require_star(at(i), "in a finite block");
      out.push_back(at(i));
    }
    return out;
  }

  Antecedent Antecedent::drop(std::size_t k) const
  {
    if (infinite()) {
      std::vector<Formula> pre;
      for (std::size_t i = k; i < up_.prefix().size(); ++i)
        pre.push_back(up_.prefix()[i]);
      std::vector<Formula> per;
      const std::size_t start = std::max(k, up_.prefix().size());
      for (std::size_t i = 0; i < up_.period().size(); ++i)
        per.push_back(up_.index(start + i));
      return periodic(UpSequence(std::move(pre), std::move(per)));
    }
    if (k > items_.size())
      throw std::out_of_range("drop past the end of an antecedent");
    return finite(std::vector<Formula>(items_.begin() + static_cast<long>(k), items_.end()));
  }

  Antecedent Antecedent::splice(std::size_t pos, std::size_t count, std::span<const Formula> repl) const
  {
    if (infinite()) {
      const std::size_t p = up_.prefix().size();
      const std::size_t v = up_.period().size();
      std::size_t len = p;
      if (pos + count > p)
        len = p + v * ((pos + count - p + v - 1) / v);
      std::vector<Formula> pre;
      for (std::size_t i = 0; i < len; ++i)
        pre.push_back(up_.index(i));
      pre.erase(pre.begin() + static_cast<long>(pos), pre.begin() + static_cast<long>(pos + count));
      pre.insert(pre.begin() + static_cast<long>(pos), repl.begin(), repl.end());
      return periodic(UpSequence(std::move(pre), up_.period()));
    }
    if (pos + count > items_.size())
      throw std::out_of_range("splice past the end of an antecedent");
    std::vector<Formula> xs = items_;
    xs.erase(xs.begin() + static_cast<long>(pos), xs.begin() + static_cast<long>(pos + count));
    xs.insert(xs.begin() + static_cast<long>(pos), repl.begin(), repl.end());
    return finite(std::move(xs));
  }

  Antecedent Antecedent::concat(std::span<const Formula> front, const Antecedent& rest)
  {
    if (rest.infinite()) {
      std::vector<Formula> pre(front.begin(), front.end());
      pre.insert(pre.end(), rest.up_.prefix().begin(), rest.up_.prefix().end());
      return periodic(UpSequence(std::move(pre), rest.up_.period()));
    }
    std::vector<Formula> xs(front.begin(), front.end());
    xs.insert(xs.end(), rest.items_.begin(), rest.items_.end());
    return finite(std::move(xs));
  }

  std::string Antecedent::str() const
  {
    std::string out;
    join_formulas(out, items_);
    if (infinite()) {
      if (!items_.empty())
        out += ", ";
      out += '{';
      join_formulas(out, up_.period());
      out += '}';
    }
    return out;
  }

  // --- Sequent ----------------------------------------------------------

  Sequent::Sequent(Antecedent ant, Formula succ) : ant_(std::move(ant)), succ_(std::move(succ))
  {
    const Sort want = ant_.type() == SequenceType::Finite ? Sort::Star : Sort::Omega;
    if (succ_.sort() != want)
      throw SortError("type-" + std::to_string(static_cast<int>(ant_.type()))
                      + " antecedent needs a " + sort_name(want) + "-sorted succedent, got "
                      + succ_.str());
  }

  std::string Sequent::str() const
  {
    std::string a = ant_.str();
    return a.empty() ? "|- " + succ_.str() : a + " |- " + succ_.str();
  }

  std::ostream& operator<<(std::ostream& os, const Sequent& s)
  {
    return os << s.str();
  }

  // --- Patterns ---------------------------------------------------------

  SequencePattern SequencePattern::of(const Antecedent& a)
  {
    SequencePattern p;
    for (const Formula& f : a.items())
      p.items.push_back({{f}, {}});
    if (a.infinite())
      p.period = a.up().period();
    return p;
  }

  bool SequencePattern::ground() const
  {
    return std::none_of(items.begin(), items.end(), [](const PatternItem& i) { return i.repeated(); });
  }

  Antecedent SequencePattern::instantiate(const Bindings& env) const
  {
    std::vector<Formula> xs;
    for (const PatternItem& it : items) {
      if (!it.repeated()) {
        xs.push_back(it.body.at(0));
        continue;
      }
      auto b = env.find(it.param);
      if (b == env.end())
        throw Error("unbound schema parameter " + it.param);
      for (std::size_t k = 0; k < b->second; ++k)
        xs.insert(xs.end(), it.body.begin(), it.body.end());
    }
    if (!period.empty())
      return Antecedent::periodic(UpSequence(std::move(xs), period));
    return Antecedent::finite(std::move(xs));
  }

  std::string SequencePattern::str() const
  {
    std::string out;
    bool first = true;
    for (const PatternItem& it : items) {
      if (!first)
        out += ", ";
      first = false;
      if (!it.repeated()) {
        out += it.body.at(0).str();
        continue;
      }
      out += '[';
      join_formulas(out, it.body);
      out += "]^" + it.param;
    }
    if (!period.empty()) {
      if (!first)
        out += ", ";
      out += '{';
      join_formulas(out, period);
      out += '}';
    }
    return out;
  }

  SequentPattern SequentPattern::of(const Sequent& s)
  {
    return {SequencePattern::of(s.antecedent()), s.succedent()};
  }

  Sequent SequentPattern::instantiate(const Bindings& env) const
  {
    return Sequent(antecedent.instantiate(env), succedent);
  }

  std::string SequentPattern::str() const
  {
    std::string a = antecedent.str();
    return a.empty() ? "|- " + succedent.str() : a + " |- " + succedent.str();
  }

  // --- LassoWord --------------------------------------------------------

  LassoWord::LassoWord(std::vector<std::string> u, std::vector<std::string> v)
    : u_(std::move(u)), v_(std::move(v))
  {
    if (v_.empty())
      throw Error("lasso word needs a nonempty period");
    normalize_lasso(u_, v_);
  }

  const std::string& LassoWord::at(std::size_t i) const
  {
    if (i < u_.size())
      return u_[i];
    return v_[(i - u_.size()) % v_.size()];
  }

  std::vector<std::string> LassoWord::unroll(std::size_t n) const
  {
    std::vector<std::string> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
      out.push_back(at(i));
    return out;
  }

  std::string word_str(const std::vector<std::string>& w)
  {
    const bool single = std::all_of(w.begin(), w.end(), [](const std::string& s) { return s.size() == 1; });
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i > 0 && !single)
        out += ' ';
      out += w[i];
    }
    return out;
  }

  std::string LassoWord::str() const
  {
    return word_str(u_) + "(" + word_str(v_) + ")^w";
  }
}
