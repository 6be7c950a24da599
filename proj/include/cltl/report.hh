#pragma once

#include <cltl/formula.hh>
#include <cltl/omega.hh>

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cltl
{
  enum class check_result { realizable, unrealizable, invalid, undecidable_class };

  const char* check_result_name(check_result r);

  struct report_stats
  {
    std::size_t frame_count = 0;
    std::size_t automaton_states = 0;
    std::size_t priorities = 0;
    std::size_t game_vertices = 0;
    std::size_t game_edges = 0;
    double wall_ms = 0;
  };

  struct report
  {
    check_result result = check_result::invalid;
    domain dom = domain::int_z;
    game_mode mode = game_mode::general;
    bool prompt = false;
    bool resource_exceeded = false;
    report_stats stats;
    std::vector<std::string> diagnostics;

    /// 0 realizable, 1 unrealizable, 2 invalid, 3 undecidable class,
    /// 4 resource exceeded.
    int exit_code() const;
  };

  struct check_options
  {
    std::size_t max_states = default_max_states;
    bool prompt = false;                   // accept FP without the header
    std::optional<game_mode> mode;         // overrides the spec's mode
  };

  inline constexpr const char* report_schema = "v1";

  /// Dispatches on domain, mode and the prompt flag.
  report check_spec(const game_spec& spec, const check_options& opt = {});

  /// Parses, applies overrides, validates and checks.  Errors become
  /// Invalid reports.
  report check_text(std::string_view text, const check_options& opt = {});

  /// Parse with the option overrides applied, then validate.
  game_spec load_spec(std::string_view text, const check_options& opt = {});

  nlohmann::json to_json(const report& r, bool with_wall_ms = true);
}
