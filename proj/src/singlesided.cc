#include <cltl/errors.hh>
#include <cltl/singlesided.hh>

#include <algorithm>
#include <cmath>

namespace cltl
{
  namespace
  {
    // Ordered set partitions of n elements.
    double fubini(unsigned n)
    {
      std::vector<double> a(n + 1, 0);
      a[0] = 1;
      for (unsigned m = 1; m <= n; ++m)
        {
          double c = 1;         // C(m, i)
          for (unsigned i = 1; i <= m; ++i)
            {
              c = c * (m - i + 1) / i;
              a[m] += c * a[m - i];
            }
        }
      return a[n];
    }
  }

  std::vector<unsigned> ahead_groups(const formula& f, const vocabulary& voc)
  {
    std::vector<unsigned> parent(voc.num_ahead());
    for (unsigned v = 0; v < parent.size(); ++v)
      parent[v] = v;
    auto find = [&](unsigned v) {
      while (parent[v] != v)
        v = parent[v] = parent[parent[v]];
      return v;
    };
    for (auto& a: atoms(f))
      {
        int l = voc.ahead_index(a.lhs().var), r = voc.ahead_index(a.rhs().var);
        if (l >= 0 && r >= 0)
          {
            unsigned pl = find(l), pr = find(r);
            parent[std::max(pl, pr)] = std::min(pl, pr);
          }
      }
    std::vector<unsigned> group(parent.size());
    std::vector<unsigned> id(parent.size(), ~0u);
    unsigned next = 0;
    for (unsigned v = 0; v < parent.size(); ++v)
      {
        unsigned root = find(v);
        if (id[root] == ~0u)
          id[root] = next++;
        group[v] = id[root];
      }
    return group;
  }

  frame_alphabet::frame_alphabet(const vocabulary& v, unsigned kk,
                                 std::size_t max_letters,
                                 std::vector<unsigned> groups)
    : voc(v), k(kk), group(std::move(groups))
  {
    if (group.empty())
      group.assign(voc.num_ahead(), 0);
    std::vector<unsigned> group_size;
    for (auto g: group)
      {
        if (g >= group_size.size())
          group_size.resize(g + 1, 0);
        ++group_size[g];
      }
    double gv = enumerate_gap_vectors(voc.num_blind(), voc.gap_ceiling()).size();
    double total = 0, enumerated = 0;
    for (unsigned s = 1; s <= k + 1; ++s)
      {
        double n = std::pow(gv, s);
        for (auto sz: group_size)
          n *= fubini(sz * s);
        total += n;
        enumerated += fubini(voc.num_ahead() * s) * std::pow(gv, s);
      }
    if (total > static_cast<double>(max_letters))
      throw resource_exceeded("frame alphabet would have "
                              + std::to_string(static_cast<long long>(total))
                              + " letters");
    // TODO: build canonical frames group by group instead of filtering.
    if (enumerated > 50.0 * static_cast<double>(max_letters))
      throw resource_exceeded("frame enumeration would visit "
                              + std::to_string(static_cast<long long>(enumerated))
                              + " frames");
    for (unsigned s = 1; s <= k + 1; ++s)
      for (auto& f: enumerate_frames(voc, s))
        if (canonical(f))
          {
            index.emplace(f, frames.size());
            frames.push_back(std::move(f));
          }
  }

  bool frame_alphabet::canonical(const frame& f) const
  {
    const unsigned na = voc.num_ahead();
    for (unsigned d1 = 0; d1 < f.size; ++d1)
      for (unsigned a = 0; a < na; ++a)
        for (unsigned d2 = 0; d2 < f.size; ++d2)
          for (unsigned b = 0; b < na; ++b)
            if (group[a] < group[b] && f.rank_of(d1, a) >= f.rank_of(d2, b))
              return false;
    return true;
  }

  letter_t frame_alphabet::letter(const frame& f) const
  {
    auto it = index.find(f);
    if (it == index.end())
      throw error(error_kind::term_out_of_range, "frame outside the alphabet");
    return it->second;
  }

  const char* chain_move_name(chain_move m)
  {
    switch (m)
      {
      case chain_move::idle: return "idle";
      case chain_move::guess: return "guess";
      case chain_move::wait: return "wait";
      case chain_move::x_step: return "x-step";
      case chain_move::y_step: return "y-step";
      case chain_move::both_step: return "both-step";
      }
    return "?";
  }

  chain_automaton build_chain_nbw(const frame_alphabet& ab, bool record_families)
  {
    const unsigned na = ab.voc.num_ahead();
    const unsigned k = ab.k;
    chain_automaton ca;
    ca.aut = nbw(ab.size());
    nbw& a = ca.aut;
    state_t q0 = a.add_state(false);
    a.set_initial(q0);

    std::map<std::tuple<unsigned, unsigned, unsigned, unsigned, bool, bool>, state_t> id;
    for (unsigned x = 0; x < na; ++x)
      for (unsigned i = 1; i <= k; ++i)
        for (unsigned y = 0; y < na; ++y)
          for (unsigned j = 1; j <= k; ++j)
            for (bool fwd: {true, false})
              if (ab.group[x] == ab.group[y])
              for (bool strict: {false, true})
                {
                  auto t = std::tuple(x, i, y, j, fwd, strict);
                  id[t] = a.add_state(strict);
                  ca.states.push_back(t);
                }

    // Chains never leave a group.
    auto same = [&](unsigned u, unsigned v) { return ab.group[u] == ab.group[v]; };
    auto edge = [&](state_t p, letter_t l, state_t q, chain_move m, bool fwd) {
      a.add_edge(p, l, q);
      if (record_families)
        ca.families[{p, l, q}] |= 1u << (static_cast<unsigned>(m) * 2 + (fwd ? 0 : 1));
    };

    for (letter_t l = 0; l < ab.size(); ++l)
      {
        const frame& f = ab.frames[l];
        edge(q0, l, q0, chain_move::idle, true);
        if (f.size != k + 1)
          continue;
        auto r = [&](unsigned var, unsigned depth) { return f.rank_of(depth, var); };
        for (auto& [t, q]: id)
          if (!std::get<5>(t))
            edge(q0, l, q, chain_move::guess, std::get<4>(t));

        for (auto& [t, p]: id)
          {
            auto [x, i, y, j, fwd, strict] = t;
            auto lt = [&](unsigned a1, unsigned d1, unsigned a2, unsigned d2) {
              return fwd ? r(a1, d1) < r(a2, d2) : r(a1, d1) > r(a2, d2);
            };
            auto eq = [&](unsigned a1, unsigned d1, unsigned a2, unsigned d2) {
              return r(a1, d1) == r(a2, d2);
            };
            auto le = [&](unsigned a1, unsigned d1, unsigned a2, unsigned d2) {
              return lt(a1, d1, a2, d2) || eq(a1, d1, a2, d2);
            };
            if (i >= 2 && j >= 2)
              edge(p, l, id[{x, i - 1, y, j - 1, fwd, strict}], chain_move::wait, fwd);
            if (i == 1 && j > 1)
              for (unsigned z = 0; z < na; ++z)
                for (unsigned i2 = 1; i2 <= k && same(x, z); ++i2)
                  {
                    bool s2;
                    if (lt(x, 0, z, i2))
                      s2 = true;
                    else if (eq(x, 0, z, i2))
                      s2 = false;
                    else
                      continue;
                    if (!lt(z, i2, y, j - 1))
                      continue;
                    edge(p, l, id[{z, i2, y, j - 1, fwd, s2}], chain_move::x_step, fwd);
                  }
            if (j == 1 && i > 1)
              for (unsigned w = 0; w < na; ++w)
                for (unsigned j2 = 1; j2 <= k && same(y, w); ++j2)
                  if (le(w, j2, y, 0) && lt(x, i - 1, w, j2))
                    edge(p, l, id[{x, i - 1, w, j2, fwd, strict}], chain_move::y_step, fwd);
            if (i == 1 && j == 1)
              for (unsigned z = 0; z < na; ++z)
                for (unsigned i2 = 1; i2 <= k && same(x, z); ++i2)
                  {
                    bool s2;
                    if (lt(x, 0, z, i2))
                      s2 = true;
                    else if (eq(x, 0, z, i2))
                      s2 = false;
                    else
                      continue;
                    for (unsigned w = 0; w < na; ++w)
                      for (unsigned j2 = 1; j2 <= k && same(y, w); ++j2)
                        if (le(w, j2, y, 0) && lt(z, i2, w, j2))
                          edge(p, l, id[{z, i2, w, j2, fwd, s2}],
                               chain_move::both_step, fwd);
                  }
          }
      }
    a.finalize();
    return ca;
  }

  nbw build_symbolic_nbw(const formula& phi, const frame_alphabet& ab)
  {
    const unsigned k = ab.k;
    auto atoms_of = atoms(phi);
    nbw base = ltl_to_nbw(phi, atom_alphabet::full(atoms_of));

    nbw a(ab.size());
    std::vector<state_t> skip;
    for (unsigned i = 0; i < k; ++i)
      skip.push_back(a.add_state(false));
    state_t off = a.num_states();
    for (state_t q = 0; q < base.num_states(); ++q)
      a.add_state(base.accepting(q));
    if (k == 0)
      for (auto q: base.initial())
        a.set_initial(off + q);
    else
      a.set_initial(skip[0]);

    for (letter_t l = 0; l < ab.size(); ++l)
      {
        const frame& f = ab.frames[l];
        if (f.size <= k)
          {
            unsigned i = f.size - 1;
            if (i + 1 < k)
              a.add_edge(skip[i], l, skip[i + 1]);
            else
              // The base automaton's initial states read the first full frame.
              for (auto q: base.initial())
                a.add_edge(skip[i], l, off + q);
            continue;
          }
        std::uint64_t m = frame_letter(f, atoms_of, ab.voc);
        for (state_t q = 0; q < base.num_states(); ++q)
          for (auto p: base.succ(q, m))
            a.add_edge(off + q, l, off + p);
      }
    a.finalize();
    return a;
  }

  dpw build_combined_dpw(const formula& phi, const frame_alphabet& ab,
                         std::size_t max_states, combined_stats* stats)
  {
    combined_stats local;
    combined_stats& st = stats ? *stats : local;
    nbw symb = trim(build_symbolic_nbw(phi, ab));
    st.symbolic_nbw = symb.num_states();
    if (symb.initial().empty())
      {
        st.symbolic_empty = true;
        dpw d;
        d.num_letters = ab.size();
        d.letter_class.assign(ab.size(), 0);
        d.num_classes = 1;
        d.initial = 0;
        d.delta = {0};
        d.priority = {1};
        st.combined = 1;
        return d;
      }
    dpw ds = determinize(symb, max_states);
    st.symbolic_dpw = ds.num_states();
    nbw chain = trim(build_chain_nbw(ab).aut);
    st.chain_nbw = chain.num_states();
    if (chain.initial().empty())
      {
        st.combined = ds.num_states();
        return ds;
      }
    dpw dc = complement(determinize(chain, max_states));
    st.chain_dpw = dc.num_states();
    dpw d = intersect(ds, dc, max_states);
    st.combined = d.num_states();
    return d;
  }

  std::vector<std::string> emptiness_game::labels() const
  {
    std::vector<std::string> res;
    for (auto& v: vertices)
      {
        std::string s;
        switch (v.kind)
          {
          case emptiness_vertex::sink:
            s = "sink";
            break;
          case emptiness_vertex::adam:
            s = "q" + std::to_string(v.q) + " " + to_string(v.f, voc);
            break;
          case emptiness_vertex::eve:
            s = "q" + std::to_string(v.q) + " " + to_string(v.f, voc) + " gp"
              + std::to_string(v.gap);
            break;
          case emptiness_vertex::tuple:
            s = "q" + std::to_string(v.q) + " tuple";
            for (auto l: v.choice)
              s += " " + std::to_string(l);
            break;
          }
        res.push_back(s);
      }
    return res;
  }

  namespace
  {
    struct adam_key
    {
      state_t q;
      frame f;
      bool operator==(const adam_key&) const = default;
    };
    struct adam_key_hash
    {
      std::size_t operator()(const adam_key& k) const
      {
        return frame_hash{}(k.f) * 131 + k.q;
      }
    };
  }

  emptiness_game build_emptiness_game(const game_spec& spec,
                                      const singlesided_options& opt)
  {
    if (spec.dom != domain::int_z)
      throw error(error_kind::invalid_spec, "single-sided games are decided over Z");
    emptiness_game eg;
    eg.voc = vocabulary(spec);
    if (!eg.voc.env_ahead().empty())
      throw error(error_kind::ownership,
                  "single-sided games forbid environment look-ahead variables");
    eg.k = x_length(spec.winning_condition);
    eg.gaps = enumerate_env_gap_functions(spec);
    frame_alphabet ab(eg.voc, eg.k, opt.max_states,
                      ahead_groups(spec.winning_condition, eg.voc));
    eg.alphabet_size = ab.size();
    eg.aut = build_combined_dpw(spec.winning_condition, ab, opt.max_states,
                                &eg.auto_stats);

    auto& g = eg.game;
    const dpw& d = eg.aut;
    std::uint32_t sink = g.add_vertex(player::adam, 1);
    g.add_edge(sink, sink);
    eg.vertices.push_back({.kind = emptiness_vertex::sink});

    // Successor letters of a frame, per gap function.
    std::unordered_map<frame, std::vector<std::vector<letter_t>>, frame_hash> succ_cache;
    auto succs = [&](const frame& f) -> const std::vector<std::vector<letter_t>>& {
      auto it = succ_cache.find(f);
      if (it != succ_cache.end())
        return it->second;
      std::vector<std::vector<letter_t>> per(eg.gaps.size());
      for (auto& h: successor_frames(f, eg.k, eg.voc))
        if (ab.contains(h))
          for (std::size_t gi = 0; gi < eg.gaps.size(); ++gi)
            if (gap_compatible(eg.gaps[gi].values, h, eg.voc))
              per[gi].push_back(ab.letter(h));
      return succ_cache.emplace(f, std::move(per)).first->second;
    };

    std::unordered_map<adam_key, std::uint32_t, adam_key_hash> ids;
    player chooser = opt.tuple_moves ? player::eve : player::adam;
    auto node = [&](state_t q, const frame& f) {
      auto [it, fresh] = ids.emplace(adam_key{q, f}, g.num_vertices());
      if (fresh)
        {
          if (g.num_vertices() >= opt.max_states)
            throw resource_exceeded("emptiness game exceeded "
                                    + std::to_string(opt.max_states) + " vertices");
          g.add_vertex(chooser, d.priority[q]);
          eg.vertices.push_back({.kind = emptiness_vertex::adam, .q = q, .f = f});
        }
      return it->second;
    };

    g.initial = node(d.initial, bottom_frame(eg.voc));
    for (std::uint32_t v = 0; v < g.num_vertices(); ++v)
      {
        if (eg.vertices[v].kind != emptiness_vertex::adam)
          continue;
        state_t q = eg.vertices[v].q;
        frame f = eg.vertices[v].f;
        unsigned pri = g.priority[v];
        const auto per = succs(f);
        if (!opt.tuple_moves)
          {
            for (std::uint32_t gi = 0; gi < per.size(); ++gi)
              {
                std::uint32_t e = g.add_vertex(player::eve, pri);
                eg.vertices.push_back({.kind = emptiness_vertex::eve, .q = q, .f = f, .gap = gi});
                g.add_edge(v, e);
                if (per[gi].empty())
                  g.add_edge(e, sink);
                for (auto l: per[gi])
                  g.add_edge(e, node(d.next(q, l), ab.frames[l]));
              }
            continue;
          }
        // Eve fixes a successor for every gap function, then Adam picks one.
        if (std::any_of(per.begin(), per.end(), [](auto& s) { return s.empty(); }))
          {
            g.add_edge(v, sink);
            continue;
          }
        std::vector<std::size_t> pick(per.size(), 0);
        for (;;)
          {
            std::vector<letter_t> choice;
            for (std::size_t gi = 0; gi < per.size(); ++gi)
              choice.push_back(per[gi][pick[gi]]);
            std::uint32_t t = g.add_vertex(player::adam, pri);
            eg.vertices.push_back({emptiness_vertex::tuple, q, f, 0, choice});
            g.add_edge(v, t);
            for (auto l: choice)
              g.add_edge(t, node(d.next(q, l), ab.frames[l]));
            std::size_t i = per.size();
            while (i > 0 && pick[i - 1] + 1 == per[i - 1].size())
              pick[--i] = 0;
            if (i == 0)
              break;
            ++pick[i - 1];
            if (g.num_vertices() >= opt.max_states)
              throw resource_exceeded("tuple game exceeded "
                                      + std::to_string(opt.max_states) + " vertices");
          }
      }
    for (auto& s: g.succ)
      {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
      }
    return eg;
  }

  singlesided_result decide_single_sided(const game_spec& spec,
                                         const singlesided_options& opt)
  {
    singlesided_result r;
    r.game = build_emptiness_game(spec, opt);
    r.solution = solve(r.game.game);
    r.result = r.solution.winner[r.game.game.initial] == player::eve
      ? verdict::realizable : verdict::unrealizable;
    return r;
  }
}
