#pragma once

#include <stdexcept>
#include <string>

namespace cltl
{
  enum class error_kind
  {
    syntax,
    mixed_atom,
    ownership,
    unknown_variable,
    invalid_spec,
    term_out_of_range,
    incompatible_target,
    not_gap_compatible,
    resource_exceeded,
    undecidable_class,
    no_winning_strategy,
    name_collision,
    alphabet_mismatch,
  };

  const char* error_kind_name(error_kind k);

  class error : public std::runtime_error
  {
  public:
    error(error_kind k, const std::string& msg)
      : std::runtime_error(msg), kind_(k)
    {
    }

    error_kind kind() const noexcept { return kind_; }

  private:
    error_kind kind_;
  };

  /// Raised by the parser.  Carries the position and the expected tokens.
  class syntax_error : public error
  {
  public:
    syntax_error(unsigned line, unsigned col, const std::string& expected,
                 const std::string& found);

    unsigned line() const noexcept { return line_; }
    unsigned col() const noexcept { return col_; }
    const std::string& expected() const noexcept { return expected_; }

  private:
    unsigned line_, col_;
    std::string expected_;
  };

  class resource_exceeded : public error
  {
  public:
    explicit resource_exceeded(const std::string& msg)
      : error(error_kind::resource_exceeded, msg)
    {
    }
  };
}
