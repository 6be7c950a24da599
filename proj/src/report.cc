#include <cltl/completion.hh>
#include <cltl/errors.hh>
#include <cltl/prompt.hh>
#include <cltl/report.hh>
#include <cltl/singlesided.hh>

#include <chrono>
#include <new>

namespace cltl
{
  const char* check_result_name(check_result r)
  {
    switch (r)
      {
      case check_result::realizable: return "Realizable";
      case check_result::unrealizable: return "Unrealizable";
      case check_result::invalid: return "Invalid";
      case check_result::undecidable_class: return "UndecidableClass";
      }
    return "?";
  }

  int report::exit_code() const
  {
    if (resource_exceeded)
      return 4;
    switch (result)
      {
      case check_result::realizable: return 0;
      case check_result::unrealizable: return 1;
      case check_result::invalid: return 2;
      case check_result::undecidable_class: return 3;
      }
    return 2;
  }

  namespace
  {
    check_result of(verdict v)
    {
      return v == verdict::realizable ? check_result::realizable
                                      : check_result::unrealizable;
    }

    void fill(report_stats& s, std::size_t frames, const dpw& d,
              const parity_game& g)
    {
      s.frame_count = frames;
      s.automaton_states = d.num_states();
      s.priorities = d.priority_count();
      s.game_vertices = g.num_vertices();
      s.game_edges = g.num_edges();
    }

    void run(report& r, const game_spec& spec, const check_options& opt)
    {
      if (spec.prompt)
        {
          singlesided_options so;
          so.max_states = opt.max_states;
          auto res = decide_prompt_single_sided(spec, so);
          auto& eg = res.solved.game;
          fill(r.stats, eg.alphabet_size, eg.aut, eg.game);
          r.result = of(res.result);
          r.diagnostics.push_back("decided through the colour reduction c(phi)");
          return;
        }
      if (spec.dom == domain::dense)
        {
          if (spec.mode != game_mode::general)
            throw error(error_kind::invalid_spec,
                        "single-sided mode is supported over Z only");
          solve_options so;
          so.max_states = opt.max_states;
          auto res = decide_completion(spec, so);
          fill(r.stats, res.game.frame_count, res.game.aut, res.game.game);
          r.result = of(res.result);
          return;
        }
      if (spec.mode == game_mode::single_sided)
        {
          singlesided_options so;
          so.max_states = opt.max_states;
          auto res = decide_single_sided(spec, so);
          fill(r.stats, res.game.alphabet_size, res.game.aut, res.game.game);
          r.result = of(res.result);
          return;
        }
      r.result = check_result::undecidable_class;
      r.diagnostics.push_back(
        "realizability of general CLTL games over Z is undecidable: two-counter"
        " machines reduce to games with one look-ahead variable per player and"
        " environment blind variables (see encode-cm)");
    }
  }

  report check_spec(const game_spec& spec, const check_options& opt)
  {
    report r;
    r.dom = spec.dom;
    r.mode = spec.mode;
    r.prompt = spec.prompt;
    auto start = std::chrono::steady_clock::now();
    try
      {
        run(r, spec, opt);
      }
    catch (const resource_exceeded& e)
      {
        r.result = check_result::invalid;
        r.resource_exceeded = true;
        r.diagnostics.push_back(std::string("ResourceExceeded: ") + e.what());
      }
    catch (const std::bad_alloc&)
      {
        r.result = check_result::invalid;
        r.resource_exceeded = true;
        r.diagnostics.push_back("ResourceExceeded: out of memory");
      }
    catch (const error& e)
      {
        r.result = e.kind() == error_kind::undecidable_class
          ? check_result::undecidable_class : check_result::invalid;
        r.diagnostics.push_back(std::string(error_kind_name(e.kind())) + ": "
                                + e.what());
      }
    std::chrono::duration<double, std::milli> ms =
      std::chrono::steady_clock::now() - start;
    r.stats.wall_ms = ms.count();
    return r;
  }

  game_spec load_spec(std::string_view text, const check_options& opt)
  {
    parse_options po;
    po.prompt = opt.prompt;
    po.validate = false;
    game_spec s = parse_spec(text, po);
    if (opt.prompt)
      s.prompt = true;
    if (opt.mode)
      s.mode = *opt.mode;
    validate(s);
    return s;
  }

  report check_text(std::string_view text, const check_options& opt)
  {
    game_spec s;
    try
      {
        s = load_spec(text, opt);
      }
    catch (const error& e)
      {
        report r;
        r.result = check_result::invalid;
        r.diagnostics.push_back(std::string(error_kind_name(e.kind())) + ": "
                                + e.what());
        return r;
      }
    return check_spec(s, opt);
  }

  nlohmann::json to_json(const report& r, bool with_wall_ms)
  {
    nlohmann::json stats = {
      {"frame_count", r.stats.frame_count},
      {"automaton_states", r.stats.automaton_states},
      {"priorities", r.stats.priorities},
      {"game_vertices", r.stats.game_vertices},
      {"game_edges", r.stats.game_edges},
    };
    if (with_wall_ms)
      stats["wall_ms"] = r.stats.wall_ms;
    return {
      {"schema", report_schema},
      {"result", check_result_name(r.result)},
      {"mode", mode_name(r.mode)},
      {"domain", domain_name(r.dom)},
      {"prompt", r.prompt},
      {"stats", stats},
      {"diagnostics", r.diagnostics},
      {"exit_code", r.exit_code()},
    };
  }
}
