#include <cltl/completion.hh>
#include <cltl/corpus.hh>
#include <cltl/errors.hh>
#include <cltl/lasso.hh>
#include <cltl/prompt.hh>
#include <cltl/report.hh>
#include <cltl/singlesided.hh>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <unordered_set>

namespace
{
  using namespace cltl;

  struct flags
  {
    std::size_t max_states = default_max_states;
    std::string dump_dir;
    unsigned seed = 1;
    unsigned count = 100;
    bool prompt = false;
    std::string mode;
    std::string stage = "game";
    std::string output;
    bool tautology_guard = false;
  };

  std::string read_input(const std::string& path)
  {
    if (path == "-")
      return std::string(std::istreambuf_iterator<char>(std::cin), {});
    std::ifstream in(path);
    if (!in)
      throw error(error_kind::invalid_spec, "cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  }

  check_options options_of(const flags& fl)
  {
    check_options o;
    o.max_states = fl.max_states;
    o.prompt = fl.prompt;
    if (fl.mode == "general")
      o.mode = game_mode::general;
    else if (fl.mode == "single-sided")
      o.mode = game_mode::single_sided;
    else if (!fl.mode.empty())
      throw error(error_kind::invalid_spec, "unknown mode " + fl.mode);
    return o;
  }

  game_spec load(const std::string& path, const flags& fl)
  {
    return load_spec(read_input(path), options_of(fl));
  }

  int exit_code_of(error_kind k)
  {
    switch (k)
      {
      case error_kind::resource_exceeded: return 4;
      case error_kind::undecidable_class: return 3;
      case error_kind::no_winning_strategy: return 1;
      default: return 2;
      }
  }

  void write_file(const std::filesystem::path& p, const std::string& text)
  {
    std::ofstream out(p);
    if (!out)
      throw error(error_kind::invalid_spec, "cannot write " + p.string());
    out << text;
  }

  std::string letter_bits(std::uint64_t bits, std::size_t n)
  {
    std::string s;
    for (std::size_t i = 0; i < n; ++i)
      s += (bits >> i) & 1 ? '1' : '0';
    return s;
  }

  // DOT or JSON for one pipeline stage.
  std::string dump_stage(const game_spec& spec0, const std::string& stage,
                         const flags& fl)
  {
    game_spec spec = spec0.prompt ? colorize(spec0).spec : spec0;
    std::ostringstream os;
    if (spec.dom == domain::int_z && spec.mode == game_mode::general)
      throw error(error_kind::undecidable_class,
                  "no pipeline for general games over Z");
    if (spec.dom == domain::dense)
      {
        if (stage == "nbw")
          {
            auto ab = atom_alphabet::full(atoms(spec.winning_condition));
            print_dot(os, ltl_to_nbw(spec.winning_condition, ab),
                      [&](letter_t l) { return letter_bits(ab.letters[l], ab.atoms.size()); });
            return os.str();
          }
        solve_options so;
        so.max_states = fl.max_states;
        auto cg = build_completion_game(spec, so);
        if (stage == "dpw")
          print_dot(os, cg.aut);
        else if (stage == "game")
          print_dot(os, cg.game, cg.labels());
        else if (stage == "frames")
          {
            std::vector<std::string> seen;
            std::unordered_set<frame, frame_hash> done;
            for (auto& v: cg.vertices)
              if (!v.sys && done.insert(v.f).second)
                seen.push_back(to_string(v.f, cg.voc));
            os << nlohmann::json(seen).dump(2) << '\n';
          }
        else
          throw error(error_kind::invalid_spec, "unknown stage " + stage);
        return os.str();
      }
    vocabulary voc(spec);
    unsigned k = x_length(spec.winning_condition);
    frame_alphabet ab(voc, k, fl.max_states,
                      ahead_groups(spec.winning_condition, voc));
    auto name = [&](letter_t l) { return to_string(ab.frames[l], voc); };
    if (stage == "frames")
      {
        std::vector<std::string> all;
        for (letter_t l = 0; l < ab.size(); ++l)
          all.push_back(name(l));
        os << nlohmann::json(all).dump(2) << '\n';
      }
    else if (stage == "nbw")
      print_dot(os, build_symbolic_nbw(spec.winning_condition, ab), name);
    else if (stage == "dpw")
      print_dot(os, build_combined_dpw(spec.winning_condition, ab, fl.max_states), name);
    else if (stage == "game")
      {
        singlesided_options so;
        so.max_states = fl.max_states;
        auto eg = build_emptiness_game(spec, so);
        print_dot(os, eg.game, eg.labels());
      }
    else
      throw error(error_kind::invalid_spec, "unknown stage " + stage);
    return os.str();
  }

  int cmd_parse(const std::string& path, const flags& fl)
  {
    std::cout << to_string(load(path, fl));
    return 0;
  }

  int cmd_check(const std::string& path, const flags& fl)
  {
    auto opt = options_of(fl);
    report r;
    game_spec spec;
    bool loaded = false;
    try
      {
        spec = load_spec(read_input(path), opt);
        loaded = true;
      }
    catch (const error& e)
      {
        r.result = check_result::invalid;
        r.diagnostics.push_back(std::string(error_kind_name(e.kind())) + ": " + e.what());
      }
    if (loaded)
      r = check_spec(spec, opt);
    auto j = to_json(r);
    std::cout << j.dump(2) << '\n';
    std::cerr << "cltl: " << check_result_name(r.result);
    if (loaded)
      std::cerr << " (" << domain_name(r.dom) << ", " << mode_name(r.mode)
                << (r.prompt ? ", prompt" : "") << "), "
                << r.stats.game_vertices << " game vertices";
    std::cerr << '\n';
    for (auto& d: r.diagnostics)
      std::cerr << "  " << d << '\n';
    if (!fl.dump_dir.empty() && loaded)
      {
        std::filesystem::path dir(fl.dump_dir);
        std::filesystem::create_directories(dir);
        write_file(dir / "report.json", j.dump(2) + "\n");
        write_file(dir / "spec.cltl", to_string(spec));
        if (r.result == check_result::realizable
            || r.result == check_result::unrealizable)
          for (const char* stage: {"nbw", "dpw", "game"})
            write_file(dir / (std::string(stage) + ".dot"), dump_stage(spec, stage, fl));
      }
    return r.exit_code();
  }

  completion_result solve_dense(const game_spec& spec, const flags& fl)
  {
    if (spec.dom != domain::dense || spec.mode != game_mode::general || spec.prompt)
      throw error(error_kind::invalid_spec,
                  "strategies are extracted for dense general games only");
    solve_options so;
    so.max_states = fl.max_states;
    return decide_completion(spec, so);
  }

  int cmd_synth(const std::string& path, const flags& fl)
  {
    auto res = solve_dense(load(path, fl), fl);
    completion_transducer t(res);
    auto j = t.to_json();
    j["schema"] = report_schema;
    j["num_states"] = t.num_states();
    std::cout << j.dump(2) << '\n';
    return 0;
  }

  std::map<std::string, rational> parse_assignments(const std::string& line)
  {
    std::map<std::string, rational> vals;
    std::string s = line;
    std::replace(s.begin(), s.end(), ',', ' ');
    std::istringstream in(s);
    for (std::string item; in >> item;)
      {
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
          throw error(error_kind::syntax, "expected name=value, got " + item);
        vals[item.substr(0, eq)] = parse_rational(item.substr(eq + 1));
      }
    return vals;
  }

  int cmd_play(const std::string& path, const flags& fl)
  {
    auto res = solve_dense(load(path, fl), fl);
    completion_transducer t(res);
    std::cerr << "enter environment values as name=value, `reset` or `quit`\n";
    for (std::string line; std::getline(std::cin, line);)
      {
        if (line == "quit" || line == "exit")
          break;
        if (line == "reset")
          {
            t.reset();
            continue;
          }
        if (line.find_first_not_of(" \t") == std::string::npos)
          continue;
        try
          {
            auto out = t.play_step(parse_assignments(line));
            bool first = true;
            for (auto& [n, v]: out)
              {
                std::cout << (first ? "" : ", ") << n << '=' << to_decimal(v);
                first = false;
              }
            std::cout << std::endl;
          }
        catch (const error& e)
          {
            std::cout << "error: " << error_kind_name(e.kind()) << ": "
                      << e.what() << std::endl;
          }
      }
    return 0;
  }

  int cmd_translate(const std::string& path, const flags& fl)
  {
    auto spec = load(path, fl);
    if (!spec.prompt)
      throw error(error_kind::invalid_spec,
                  "translate expects a prompt spec (prompt: true; or --prompt)");
    std::cout << to_string(colorize(spec).spec);
    return 0;
  }

  int cmd_encode_cm(const std::string& path, const flags& fl)
  {
    auto m = parse_counter_machine(read_input(path));
    encode_options eo;
    eo.tautology_guard = fl.tautology_guard;
    auto text = to_string(encode_counter_machine(m, eo));
    if (fl.output.empty())
      std::cout << text;
    else
      write_file(fl.output, text);
    return 0;
  }

  int cmd_dump(const std::string& path, const flags& fl)
  {
    std::cout << dump_stage(load(path, fl), fl.stage, fl);
    return 0;
  }

  // Random integer lassos: concrete evaluation against the symbolic
  // evaluation of their frame lassos.
  int cmd_sample(const std::string& path, const flags& fl)
  {
    auto spec = load(path, fl);
    if (spec.prompt)
      throw error(error_kind::invalid_spec, "sampling is defined for CLTL specs");
    vocabulary voc(spec);
    unsigned k = x_length(spec.winning_condition);
    std::mt19937 rng(fl.seed);
    std::uniform_int_distribution<int> val(-5, 5), len(1, 4), stem_len(0, 3);
    auto random_valuation = [&] {
      std::map<std::string, rational> m;
      for (auto& v: spec.variables)
        m[v.name] = val(rng);
      return make_valuation(voc, m);
    };
    unsigned mismatches = 0, holds = 0;
    for (unsigned n = 0; n < fl.count; ++n)
      {
        std::vector<valuation> stem(stem_len(rng)), loop(len(rng));
        for (auto& v: stem)
          v = random_valuation();
        for (auto& v: loop)
          v = random_valuation();
        bool concrete = eval_concrete_lasso(voc, spec.winning_condition, stem, loop);
        auto [fs, fl2] = symbolic_lasso(voc, k, stem, loop);
        bool symbolic = eval_symbolic_lasso(voc, spec.winning_condition, fs, fl2);
        holds += concrete;
        mismatches += concrete != symbolic;
      }
    nlohmann::json j = {{"schema", report_schema}, {"seed", fl.seed},
                        {"samples", fl.count}, {"satisfied", holds},
                        {"mismatches", mismatches}};
    std::cout << j.dump(2) << '\n';
    return mismatches ? 1 : 0;
  }
}

int main(int argc, char** argv)
{
  CLI::App app{"Realizability checker for constraint LTL games"};
  app.require_subcommand(1);
  flags fl;
  std::string path;

  auto add_common = [&](CLI::App* c) {
    c->add_option("file", path, "spec file, - for stdin")->required();
    c->add_option("--max-states", fl.max_states, "state and vertex budget");
    c->add_flag("--prompt", fl.prompt, "accept FP without a prompt header");
    c->add_option("--mode", fl.mode, "override the game mode")
      ->check(CLI::IsMember({"general", "single-sided"}));
  };

  auto* parse = app.add_subcommand("parse", "print the canonical spec");
  add_common(parse);
  auto* check = app.add_subcommand("check", "decide realizability, JSON report");
  add_common(check);
  check->add_option("--dump-dir", fl.dump_dir, "write the report and DOT dumps here");
  auto* synth = app.add_subcommand("synth", "extract a strategy transducer (dense)");
  add_common(synth);
  auto* play = app.add_subcommand("play", "play against the extracted strategy");
  add_common(play);
  auto* translate = app.add_subcommand("translate", "print the colored CLTL spec of a prompt spec");
  add_common(translate);
  auto* encode = app.add_subcommand("encode-cm", "encode a two-counter machine");
  encode->add_option("file", path, "machine file, - for stdin")->required();
  encode->add_option("-o,--output", fl.output, "spec output path");
  encode->add_flag("--tautology-guard", fl.tautology_guard,
                   "include the p_t consistency family");
  auto* dump = app.add_subcommand("dump", "DOT or JSON of a pipeline stage");
  add_common(dump);
  dump->add_option("--stage", fl.stage, "frames, nbw, dpw or game")
    ->check(CLI::IsMember({"frames", "nbw", "dpw", "game"}));
  auto* sample = app.add_subcommand("sample", "compare concrete and symbolic semantics on random lassos");
  add_common(sample);
  sample->add_option("--seed", fl.seed, "random seed");
  sample->add_option("--count", fl.count, "number of lassos");

  CLI11_PARSE(app, argc, argv);

  try
    {
      if (*parse)
        return cmd_parse(path, fl);
      if (*check)
        return cmd_check(path, fl);
      if (*synth)
        return cmd_synth(path, fl);
      if (*play)
        return cmd_play(path, fl);
      if (*translate)
        return cmd_translate(path, fl);
      if (*encode)
        return cmd_encode_cm(path, fl);
      if (*dump)
        return cmd_dump(path, fl);
      if (*sample)
        return cmd_sample(path, fl);
    }
  catch (const cltl::error& e)
    {
      std::cerr << "cltl: " << cltl::error_kind_name(e.kind()) << ": "
                << e.what() << '\n';
      return exit_code_of(e.kind());
    }
  catch (const std::bad_alloc&)
    {
      std::cerr << "cltl: ResourceExceeded: out of memory\n";
      return 4;
    }
  return 2;
}
