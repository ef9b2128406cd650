#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace omegact
{
  /// Base class of every error thrown by the library.
  class Error : public std::runtime_error
  {
  public:
    using std::runtime_error::runtime_error;
  };

  /// Malformed input text; `position()` is a byte offset into the input.
  class ParseError : public Error
  {
  public:
    ParseError(const std::string& msg, std::size_t pos)
      : Error(msg + " at position " + std::to_string(pos)), pos_(pos)
    {
    }

    std::size_t position() const { return pos_; }

  private:
    std::size_t pos_;
  };

  /// A formula or sequent that violates the two-sorted discipline.
  class SortError : public Error
  {
  public:
    using Error::Error;
  };
}
