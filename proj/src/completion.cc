#include <cltl/completion.hh>
#include <cltl/errors.hh>

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace cltl
{
  const char* verdict_name(verdict v)
  {
    return v == verdict::realizable ? "Realizable" : "Unrealizable";
  }

  namespace
  {
    struct env_key
    {
      frame f;
      state_t q;
      bool operator==(const env_key&) const = default;
    };
    struct env_key_hash
    {
      std::size_t operator()(const env_key& k) const
      {
        return frame_hash{}(k.f) * 31 + k.q;
      }
    };
  }

  std::vector<std::string> completion_game::labels() const
  {
    std::vector<std::string> res;
    for (auto& v: vertices)
      {
        std::string s = to_string(v.f, voc) + " @" + std::to_string(v.q);
        if (v.sys)
          s += " / " + to_string(v.pf, voc);
        res.push_back(s);
      }
    return res;
  }

  completion_game build_completion_game(const game_spec& spec,
                                        const solve_options& opt)
  {
    if (spec.dom != domain::dense)
      throw error(error_kind::invalid_spec,
                  "the completion game is built for dense domains");
    completion_game cg;
    cg.voc = vocabulary(spec);
    if (cg.voc.num_blind() > 0)
      throw error(error_kind::invalid_spec,
                  "blind variables are not supported over the dense domain");
    cg.k = x_length(spec.winning_condition);
    cg.atoms = atoms(spec.winning_condition);
    auto ab = atom_alphabet::full(cg.atoms);
    cg.aut = determinize(ltl_to_nbw(spec.winning_condition, ab), opt.max_states);

    unsigned pre = opt.pre_window_initial_priority
      ? cg.aut.priority[cg.aut.initial] : cg.aut.max_priority();
    const unsigned k = cg.k;
    const vocabulary& voc = cg.voc;

    std::unordered_map<env_key, std::uint32_t, env_key_hash> env_ids;
    std::unordered_set<frame, frame_hash> frames_seen;
    auto& g = cg.game;
    auto env_vertex = [&](const frame& f, state_t q) {
      auto [it, fresh] = env_ids.emplace(env_key{f, q}, g.num_vertices());
      if (fresh)
        {
          if (g.num_vertices() >= opt.max_states)
            throw resource_exceeded("completion game exceeded "
                                    + std::to_string(opt.max_states)
                                    + " vertices");
          unsigned pri = f.size == k + 1 ? cg.aut.priority[q] : pre;
          g.add_vertex(player::adam, pri);
          cg.vertices.push_back({false, f, q, {}});
          frames_seen.insert(f);
        }
      return it->second;
    };

    g.initial = env_vertex(bottom_frame(voc), cg.aut.initial);
    for (std::uint32_t v = 0; v < g.num_vertices(); ++v)
      {
        if (cg.vertices[v].sys)
          continue;
        frame f = cg.vertices[v].f;
        state_t q = cg.vertices[v].q;
        unsigned pri = g.priority[v];
        for (auto& pf: env_extensions(f, k, voc))
          {
            std::uint32_t s = g.add_vertex(player::eve, pri);
            cg.vertices.push_back({true, f, q, pf});
            g.add_edge(v, s);
            for (auto& h: sys_completions(pf, voc))
              {
                state_t q2 = q;
                if (h.size == k + 1)
                  q2 = cg.aut.next(q, frame_letter(h, cg.atoms, voc));
                std::uint32_t w = env_vertex(h, q2);
                g.add_edge(s, w);
              }
          }
      }
    cg.frame_count = frames_seen.size();
    return cg;
  }

  completion_result decide_completion(const game_spec& spec,
                                      const solve_options& opt)
  {
    completion_result r;
    r.game = build_completion_game(spec, opt);
    r.solution = solve(r.game.game);
    r.result = r.solution.winner[r.game.game.initial] == player::eve
      ? verdict::realizable : verdict::unrealizable;
    return r;
  }

  completion_transducer::completion_transducer(const completion_result& r)
    : r_(r), cur_(r.game.game.initial)
  {
    if (r.result != verdict::realizable)
      throw error(error_kind::no_winning_strategy,
                  "the system has no winning strategy");
  }

  void completion_transducer::reset()
  {
    cur_ = r_.game.game.initial;
    window_.clear();
  }

  std::map<std::string, rational>
  completion_transducer::play_step(const std::map<std::string, rational>& env)
  {
    const auto& cg = r_.game;
    const vocabulary& voc = cg.voc;
    std::map<std::string, rational> full;
    for (auto i: voc.env_ahead())
      {
        auto it = env.find(voc.ahead(i).name);
        if (it == env.end())
          throw error(error_kind::unknown_variable,
                      "missing environment value for " + voc.ahead(i).name);
        full[it->first] = it->second;
      }
    for (auto& [name, v]: env)
      if (!full.count(name))
        throw error(error_kind::unknown_variable,
                    "not an environment look-ahead variable: " + name);
    valuation ev = make_valuation(voc, full);
    partial_frame pf = partial_frame_of(window_, ev, voc);

    std::int64_t sv = -1;
    for (auto s: cg.game.succ[cur_])
      if (cg.vertices[s].pf == pf)
        {
          sv = s;
          break;
        }
    if (sv < 0)
      throw error(error_kind::incompatible_target,
                  "environment move does not extend the current frame");
    std::int64_t next = r_.solution.strategy_eve[sv];
    if (next < 0)
      throw error(error_kind::no_winning_strategy,
                  "play left the system's winning region");
    const frame& g = cg.vertices[next].f;
    valuation nv = realize_rational(window_, ev, g, voc);
    window_.push_back(nv);
    if (window_.size() > cg.k)
      window_.erase(window_.begin());
    cur_ = next;

    std::map<std::string, rational> out;
    for (auto i: voc.sys_ahead())
      out[voc.ahead(i).name] = nv.ahead[i];
    return out;
  }

  std::size_t completion_transducer::num_states() const
  {
    const auto& g = r_.game.game;
    std::vector<char> seen(g.num_vertices(), 0);
    std::vector<std::uint32_t> work{g.initial};
    seen[g.initial] = 1;
    std::size_t n = 0;
    while (!work.empty())
      {
        auto v = work.back();
        work.pop_back();
        ++n;
        for (auto s: g.succ[v])
          {
            auto w = r_.solution.strategy_eve[s];
            if (w >= 0 && !seen[w])
              {
                seen[w] = 1;
                work.push_back(w);
              }
          }
      }
    return n;
  }

  nlohmann::json completion_transducer::to_json() const
  {
    const auto& cg = r_.game;
    const auto& g = cg.game;
    nlohmann::json j;
    j["kind"] = "frame-transducer";
    j["k"] = cg.k;
    j["realization"] = "midpoint-v1";
    std::vector<std::int64_t> id(g.num_vertices(), -1);
    std::vector<std::uint32_t> order{g.initial};
    id[g.initial] = 0;
    auto states = nlohmann::json::array();
    auto trans = nlohmann::json::array();
    for (std::size_t i = 0; i < order.size(); ++i)
      {
        auto v = order[i];
        states.push_back({{"id", i},
                          {"frame", to_string(cg.vertices[v].f, cg.voc)},
                          {"dpw_state", cg.vertices[v].q}});
        for (auto s: g.succ[v])
          {
            auto w = r_.solution.strategy_eve[s];
            if (w < 0)
              continue;
            if (id[w] < 0)
              {
                id[w] = order.size();
                order.push_back(w);
              }
            trans.push_back({{"from", i},
                             {"env", to_string(cg.vertices[s].pf, cg.voc)},
                             {"frame", to_string(cg.vertices[w].f, cg.voc)},
                             {"to", id[w]}});
          }
      }
    j["initial"] = 0;
    j["states"] = std::move(states);
    j["transitions"] = std::move(trans);
    return j;
  }
}
