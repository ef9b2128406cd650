#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "omegact/error.hpp"
#include "omegact/formula.hpp"
#include "omegact/sequent.hpp"

namespace omegact
{
  enum class Rule : unsigned char
  {
    Ax,
    Hyp,  // leaf of a vdash derivation: one of its hypotheses
    ProdL,
    UnderL,
    OverL,
    MeetL,
    JoinL,
    StarL,
    OmegaL,
    LOmega,
    OmegaR,
    OverR,
    UnderR,
    ProdR,
    MeetR,
    JoinR,
    StarR,
  };

  const char* rule_name(Rule r);
  std::optional<Rule> rule_from_name(const std::string& name);
  /// Left rules in the sense of vdash derivations (Ax and Hyp excluded).
  bool is_left_rule(Rule r);

  /// A rule that does not apply to the given sequent and arguments.
  class RuleError : public Error
  {
  public:
    using Error::Error;
  };

  /// A natural number that may depend on schema parameters:
  /// base + sum of coef * param.  Text: `3`, `n`, `1+2n`.
  struct Index
  {
    long base = 0;
    std::vector<std::pair<std::string, long>> terms;

    static Index of(std::size_t v) { return {static_cast<long>(v), {}}; }
    static Index parse(const std::string& text);
    /// Throws Error on unbound parameters or negative values.
    std::size_t eval(const Bindings& env) const;
    std::string str() const;
    friend bool operator==(const Index&, const Index&) = default;
  };

  /// Block lengths; an item is one length or `(repeat count l1 l2 ...)`.
  struct LengthItem
  {
    std::vector<Index> lengths;
    std::optional<Index> repeat;

    friend bool operator==(const LengthItem&, const LengthItem&) = default;
  };

  std::vector<std::size_t> expand(const std::vector<LengthItem>& items, const Bindings& env);
  std::vector<LengthItem> plain_lengths(const std::vector<std::size_t>& lengths);

  /// Block decomposition of a type-2 antecedent: finitely many prefix
  /// blocks, then the period blocks repeated forever.
  struct PeriodicSplit
  {
    std::vector<LengthItem> prefix;
    std::vector<LengthItem> period;

    friend bool operator==(const PeriodicSplit&, const PeriodicSplit&) = default;
  };

  struct ProofNode;
  using ProofPtr = std::shared_ptr<const ProofNode>;

  /// Derivation of `delta |- x` from hypotheses {xi |- x | xi in hyps} by
  /// left rules and axioms; delta and x are read off the root.
  struct VdashDerivation
  {
    std::vector<SequencePattern> hyps;
    ProofPtr root;
  };

  /// Rule-specific data.  Which fields a rule reads:
  ///   ProdL MeetL JoinL StarL      at (+ choice for MeetL)
  ///   UnderL OverL                 at, span (or span_rest for OverL with an omega denominator)
  ///   ProdR                        split
  ///   JoinR                        choice
  ///   StarR                        blocks
  ///   OmegaR                       psplit
  ///   LOmega                       psplit, vdash (one per block, prefix blocks first)
  struct Aux
  {
    std::optional<Index> at;
    std::optional<std::size_t> choice;
    std::optional<Index> span;
    bool span_rest = false;
    std::optional<Index> split;
    std::optional<std::vector<LengthItem>> blocks;
    std::optional<PeriodicSplit> psplit;
    std::vector<VdashDerivation> vdash;
  };

  struct Premise
  {
    ProofPtr node;
    std::optional<Index> repeat;  // the same subproof used `repeat` times
  };

  /// Finite presentation of the premise family of (*L): either a template
  /// proof over the parameter, or explicitly listed instances 0, 1, ...
  struct Schema
  {
    std::string param;
    ProofPtr body;
    std::vector<ProofPtr> instances;
  };

  struct ProofNode
  {
    ProofNode(Rule r, SequentPattern c) : rule(r), conclusion(std::move(c)) {}

    Rule rule;
    SequentPattern conclusion;
    Aux aux;
    std::vector<Premise> premises;
    std::optional<Schema> schema;
  };

  /// Convenience constructor for ground nodes.
  ProofPtr make_node(Rule r, const Sequent& conclusion, std::vector<ProofPtr> premises = {}, Aux aux = {});

  // ---------------------------------------------------------------------
  // Bottom-up rule application on ground sequents.

  struct RuleArgs
  {
    std::optional<std::size_t> at, choice, span, split;
    bool span_rest = false;
    std::optional<std::vector<std::size_t>> blocks;
    std::optional<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> psplit;
    /// LOmega: hypothesis set per block; empty means {block} for every block.
    std::vector<std::vector<std::vector<Formula>>> choices;
    std::string param = "n";  // StarL family parameter
  };

  struct Backward
  {
    std::vector<Sequent> premises;
    /// StarL: the premise family, one repeated group over `param`.
    std::optional<SequentPattern> family;
    /// OmegaR / LOmega: block contents, prefix blocks first.
    std::vector<std::vector<Formula>> blocks;
    std::size_t prefix_blocks = 0;
  };

  /// Premises of the rule instance; throws RuleError when inapplicable.
  Backward apply_rule_backward(const Sequent& s, Rule r, const RuleArgs& args);

  /// Block contents of a periodic split; throws RuleError unless the
  /// antecedent is periodic from the end of the prefix blocks on with the
  /// total period-block length.
  std::vector<std::vector<Formula>> split_blocks(const Antecedent& a, const std::vector<std::size_t>& prefix,
                                                 const std::vector<std::size_t>& period);

  struct Inversion
  {
    std::vector<SequentPattern> leaves;
    /// Some leaf still has invertible formulas inside its infinite period;
    /// those branch infinitely often and are left unexpanded.
    bool lazy = false;
  };

  /// Saturate with the invertible rules (JoinL, MeetR, ProdL, UnderR, OverR,
  /// StarL, OmegaL) at finite positions.
  Inversion invert(const Sequent& s);

  // ---------------------------------------------------------------------
  // Checking.

  enum class Grade : unsigned char
  {
    FullyChecked,
    SchemaChecked,
    Rejected,
  };

  struct Verdict
  {
    Grade grade = Grade::FullyChecked;
    std::size_t bound = 0;  // K for SchemaChecked
    std::string reason;     // Rejected only
    std::string path;       // Rejected only: premise indices from the root

    bool accepted() const { return grade != Grade::Rejected; }
    std::string str() const;
    int exit_code() const;
  };

  /// 8 unless OMEGACT_SCHEMA_BOUND holds a natural number.
  std::size_t default_schema_bound();

  Verdict check_proof(const ProofNode& p, std::size_t schema_bound = default_schema_bound());
  /// The rule instance at the root only: premise conclusions are compared,
  /// premise subproofs are not checked.  vdash derivations are checked in full.
  Verdict check_step(const ProofNode& p, std::size_t schema_bound = default_schema_bound());
  Verdict check_vdash(const VdashDerivation& d, std::size_t schema_bound = default_schema_bound());

  // ---------------------------------------------------------------------
  // Certificate text, see docs/certificate-format.md.

  ProofPtr parse_certificate(const std::string& text);
  std::string print_certificate(const ProofNode& p);
}
