#pragma once

#include <cltl/completion.hh>
#include <cltl/formula.hh>

#include <string>
#include <string_view>
#include <vector>

namespace cltl
{
  enum class counter_op : std::uint8_t { inc, dec, keep, zero };

  struct counter_transition
  {
    std::string source;
    counter_op op;
    unsigned counter;   // 1 or 2
    std::string target;
  };

  /// Two-counter machine.  A transition is initial when its source is an
  /// initial state and halting when its target is a halting state.
  struct counter_machine
  {
    std::vector<std::string> initial, halting;
    std::vector<counter_transition> transitions;

    bool is_initial(const counter_transition& t) const;
    bool is_halting(const counter_transition& t) const;
    /// t2 may follow t1.
    bool compatible(const counter_transition& t1, const counter_transition& t2) const;
  };

  /// Lines `src op tgt` with op in inc1 dec1 keep1 zero1 inc2 dec2 keep2
  /// zero2, plus optional `init: q...` and `halt: q...`.  `#` comments.
  /// Without an init line the first transition's source is initial.
  counter_machine parse_counter_machine(std::string_view text);
  std::string to_string(const counter_machine& m);

  /// One instantiated formula of the encoding.  `terms` is the number of
  /// per-transition (or per-pair) pieces in its big disjunction or
  /// conjunction.
  struct encoding_family
  {
    std::string name;
    formula phi;
    std::size_t terms = 0;
  };

  inline constexpr unsigned env_family_count = 17;
  inline constexpr unsigned sys_family_count = 4;

  /// Environment mistakes, in listing order.  The last family, the
  /// (u_t = v_t) <-> p_t guard, is a contradiction once p_t is inlined.
  std::vector<encoding_family> env_families(const counter_machine& m);
  std::vector<encoding_family> sys_families(const counter_machine& m);

  struct encode_options
  {
    bool tautology_guard = false;   // include the last environment family
  };

  /// Game over Z, general mode: env ahead x, env blind u_i v_i per
  /// transition i, sys ahead y, condition (OR env) || (AND sys).
  game_spec encode_counter_machine(const counter_machine& m,
                                   const encode_options& opt = {});

  struct suite_entry
  {
    std::string name;
    game_spec spec;
    verdict expected;
    std::string provenance;
  };

  std::vector<suite_entry> builtin_suite();
}
