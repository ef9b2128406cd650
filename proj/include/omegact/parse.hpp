#pragma once

#include <string_view>

#include "omegact/formula.hpp"
#include "omegact/sequent.hpp"

namespace omegact
{
  /// Formula text grammar, loosest binding first:
  ///
  ///     join    := meet ('|' join)?
  ///     meet    := prod ('&' meet)?
  ///     prod    := under ('.' prod)?
  ///     under   := over ('\' under)?
  ///     over    := postfix ('/' postfix)*
  ///     postfix := atom ('*' | '^w')*
  ///     atom    := name | '$' name | '(' join ')'
  ///
  /// `$name` is an omega-sorted variable, a bare name a star-sorted one.
  /// Throws ParseError on bad syntax and SortError on sort violations.
  Formula parse_formula(std::string_view text);

  /// `A1, ..., An [, {P1, ..., Pk}] |- B`.  `=>` is accepted for `|-`.
  Sequent parse_sequent(std::string_view text);

  /// Like parse_sequent, additionally accepting repeated groups `[A, B]^n`
  /// among the finite items.
  SequentPattern parse_sequent_pattern(std::string_view text);

  /// An antecedent on its own (no turnstile), with optional groups.
  SequencePattern parse_sequence_pattern(std::string_view text);
}
