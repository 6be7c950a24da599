#include <cltl/errors.hh>
#include <cltl/graph.hh>
#include <cltl/parity.hh>

#include <algorithm>
#include <ostream>

namespace cltl
{
  std::uint32_t parity_game::add_vertex(player p, unsigned pri)
  {
    owner.push_back(p);
    priority.push_back(pri);
    succ.emplace_back();
    return owner.size() - 1;
  }

  std::size_t parity_game::num_edges() const
  {
    std::size_t n = 0;
    for (auto& s: succ)
      n += s.size();
    return n;
  }

  namespace
  {
    class zielonka
    {
    public:
      explicit zielonka(const parity_game& g) : g_(g)
      {
        std::size_t n = g.num_vertices();
        pred_.resize(n);
        for (std::uint32_t u = 0; u < n; ++u)
          for (auto v: g.succ[u])
            pred_[v].push_back(u);
        sol_.winner.assign(n, player::adam);
        sol_.strategy_eve.assign(n, no_move);
        sol_.strategy_adam.assign(n, no_move);
      }

      parity_solution run()
      {
        std::vector<std::uint32_t> all(g_.num_vertices());
        for (std::uint32_t i = 0; i < all.size(); ++i)
          all[i] = i;
        std::vector<char> in(all.size(), 1);
        solve(all, in);
        return std::move(sol_);
      }

    private:
      std::vector<std::int64_t>& strat(player p)
      {
        return p == player::eve ? sol_.strategy_eve : sol_.strategy_adam;
      }

      // Attractor of `target` for p inside the subgame `in`; sets attractor
      // moves for p's vertices outside the target.
      std::vector<std::uint32_t> attractor(const std::vector<std::uint32_t>& sub,
                                           const std::vector<char>& in,
                                           const std::vector<std::uint32_t>& target,
                                           player p, std::vector<char>& mark)
      {
        std::vector<std::uint32_t> res(target);
        for (auto v: target)
          mark[v] = 1;
        // Remaining escape count for opponent vertices.
        std::vector<std::uint32_t>& cnt = count_;
        cnt.resize(g_.num_vertices());
        for (auto v: sub)
          {
            std::uint32_t c = 0;
            for (auto w: g_.succ[v])
              c += in[w];
            cnt[v] = c;
          }
        auto& st = strat(p);
        for (std::size_t i = 0; i < res.size(); ++i)
          {
            std::uint32_t v = res[i];
            for (auto u: pred_[v])
              {
                if (!in[u] || mark[u])
                  continue;
                if (g_.owner[u] == p)
                  {
                    mark[u] = 1;
                    st[u] = v;
                    res.push_back(u);
                  }
                else if (--cnt[u] == 0)
                  {
                    mark[u] = 1;
                    res.push_back(u);
                  }
              }
          }
        return res;
      }

      // Solves the subgame on `sub` (with membership `in`), writing winners
      // and strategies for its vertices.
      void solve(const std::vector<std::uint32_t>& sub, std::vector<char>& in)
      {
        if (sub.empty())
          return;
        unsigned p = ~0u;
        for (auto v: sub)
          p = std::min(p, g_.priority[v]);
        player a = p % 2 == 0 ? player::eve : player::adam;
        player b = opponent(a);

        std::vector<std::uint32_t> top;
        for (auto v: sub)
          if (g_.priority[v] == p)
            top.push_back(v);
        std::vector<char> mark(g_.num_vertices(), 0);
        auto A = attractor(sub, in, top, a, mark);

        std::vector<std::uint32_t> rest;
        for (auto v: sub)
          if (!mark[v])
            rest.push_back(v);
        for (auto v: A)
          in[v] = 0;
        solve(rest, in);
        for (auto v: A)
          in[v] = 1;

        std::vector<std::uint32_t> wb;
        for (auto v: rest)
          if (sol_.winner[v] == b)
            wb.push_back(v);

        if (wb.empty())
          {
            for (auto v: sub)
              sol_.winner[v] = a;
            // Priority-p vertices of a may move anywhere inside the subgame.
            for (auto v: top)
              if (g_.owner[v] == a)
                for (auto w: g_.succ[v])
                  if (in[w])
                    {
                      strat(a)[v] = w;
                      break;
                    }
            return;
          }

        std::vector<char> mark2(g_.num_vertices(), 0);
        auto B = attractor(sub, in, wb, b, mark2);
        for (auto v: B)
          sol_.winner[v] = b;
        std::vector<std::uint32_t> rest2;
        for (auto v: sub)
          if (!mark2[v])
            rest2.push_back(v);
        for (auto v: B)
          in[v] = 0;
        solve(rest2, in);
        for (auto v: B)
          in[v] = 1;
      }

      const parity_game& g_;
      std::vector<std::vector<std::uint32_t>> pred_;
      std::vector<std::uint32_t> count_;
      parity_solution sol_;
    };
  }

  parity_solution solve(const parity_game& g)
  {
    for (std::size_t v = 0; v < g.num_vertices(); ++v)
      if (g.succ[v].empty())
        throw error(error_kind::invalid_spec,
                    "parity game vertex without successor: " + std::to_string(v));
    auto s = zielonka(g).run();
    // Strategies only matter inside the owner's winning region.
    for (std::size_t v = 0; v < g.num_vertices(); ++v)
      {
        if (g.owner[v] != player::eve || s.winner[v] != player::eve)
          s.strategy_eve[v] = no_move;
        if (g.owner[v] != player::adam || s.winner[v] != player::adam)
          s.strategy_adam[v] = no_move;
      }
    return s;
  }

  bool verify_strategy(const parity_game& g, const parity_solution& s)
  {
    std::size_t n = g.num_vertices();
    if (s.winner.size() != n)
      return false;
    for (player p: {player::eve, player::adam})
      {
        auto& st = p == player::eve ? s.strategy_eve : s.strategy_adam;
        // Restricted graph: p's region, p follows its strategy, the
        // opponent may take any edge.
        std::vector<std::vector<std::uint32_t>> adj(n);
        for (std::uint32_t v = 0; v < n; ++v)
          {
            if (s.winner[v] != p)
              continue;
            if (g.owner[v] == p)
              {
                if (st[v] == no_move)
                  return false;
                auto w = static_cast<std::uint32_t>(st[v]);
                if (std::find(g.succ[v].begin(), g.succ[v].end(), w)
                    == g.succ[v].end() || s.winner[w] != p)
                  return false;
                adj[v].push_back(w);
              }
            else
              for (auto w: g.succ[v])
                {
                  if (s.winner[w] != p)
                    return false;       // opponent escapes the region
                  adj[v].push_back(w);
                }
          }
        // No reachable cycle may have a least priority of the wrong parity.
        // For each bad priority d, look for a cycle among vertices of
        // priority >= d that passes through a vertex of priority d.
        unsigned bad = p == player::eve ? 1 : 0;
        std::vector<unsigned> pris(g.priority.begin(), g.priority.end());
        std::sort(pris.begin(), pris.end());
        pris.erase(std::unique(pris.begin(), pris.end()), pris.end());
        for (unsigned d: pris)
          {
            if (d % 2 != bad)
              continue;
            auto succ = [&](std::uint32_t v) {
              std::vector<std::uint32_t> r;
              if (s.winner[v] != p || g.priority[v] < d)
                return r;
              for (auto w: adj[v])
                if (g.priority[w] >= d)
                  r.push_back(w);
              return r;
            };
            std::uint32_t cnt;
            auto comp = tarjan_scc(n, succ, cnt);
            std::vector<std::uint32_t> size(cnt, 0);
            for (auto c: comp)
              ++size[c];
            for (std::uint32_t v = 0; v < n; ++v)
              {
                if (s.winner[v] != p || g.priority[v] != d)
                  continue;
                auto out = succ(v);
                if (size[comp[v]] > 1
                    || std::find(out.begin(), out.end(), v) != out.end())
                  return false;
              }
          }
      }
    return true;
  }

  void print_dot(std::ostream& os, const parity_game& g,
                 const std::vector<std::string>& labels)
  {
    os << "digraph game {\n";
    for (std::size_t v = 0; v < g.num_vertices(); ++v)
      {
        os << "  " << v << " [shape="
           << (g.owner[v] == player::eve ? "ellipse" : "box") << ", label=\"";
        if (v < labels.size())
          os << labels[v] << "\\n";
        os << "p" << g.priority[v] << "\"";
        if (v == g.initial)
          os << ", penwidth=2";
        os << "];\n";
      }
    for (std::size_t v = 0; v < g.num_vertices(); ++v)
      for (auto w: g.succ[v])
        os << "  " << v << " -> " << w << ";\n";
    os << "}\n";
  }
}
