#include <cltl/errors.hh>
#include <cltl/omega.hh>

#include <algorithm>
#include <map>

namespace cltl
{
  namespace
  {
    constexpr int unranked = -1;

    // Level ranking plus the obligation set.
    struct kv_state
    {
      std::vector<int> rank;            // per NBW state, unranked if absent
      std::vector<char> obligation;

      auto operator<=>(const kv_state&) const = default;
    };
  }

  nbw complement(const nbw& a, std::size_t max_states)
  {
    std::size_t n = a.num_states();
    int top = 2 * static_cast<int>(n);
    std::uint32_t L = a.num_letters();

    std::map<kv_state, state_t> ids;
    std::vector<kv_state> states;
    nbw res(L);
    auto get = [&](kv_state s) {
      auto [it, fresh] = ids.emplace(s, states.size());
      if (fresh)
        {
          if (states.size() >= max_states)
            throw resource_exceeded("complement exceeded "
                                    + std::to_string(max_states) + " states");
          bool acc = std::none_of(s.obligation.begin(), s.obligation.end(),
                                  [](char c) { return c; });
          res.add_state(acc);
          states.push_back(std::move(s));
        }
      return it->second;
    };

    // Enumerates rankings of `dom` with per-state upper bounds.
    auto rankings = [&](const std::vector<int>& bound, auto&& emit) {
      std::vector<int> r(n, unranked);
      std::vector<std::size_t> dom;
      for (std::size_t q = 0; q < n; ++q)
        if (bound[q] != unranked)
          dom.push_back(q);
      auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == dom.size())
          {
            emit(r);
            return;
          }
        std::size_t q = dom[i];
        for (int v = 0; v <= bound[q]; ++v)
          {
            if (a.accepting(q) && v % 2)
              continue;
            r[q] = v;
            self(self, i + 1);
          }
        r[q] = unranked;
      };
      rec(rec, 0);
    };

    // Ranks only shrink along a run, so the top ranking is the one initial
    // state needed.
    std::vector<int> init_rank(n, unranked);
    for (auto q: a.initial())
      init_rank[q] = top;
    res.set_initial(get({init_rank, std::vector<char>(n, 0)}));

    for (state_t s = 0; s < states.size(); ++s)
      for (letter_t l = 0; l < L; ++l)
        {
          kv_state cur = states[s];
          std::vector<int> bound(n, unranked);
          std::vector<char> reach_o(n, 0);
          for (std::size_t q = 0; q < n; ++q)
            if (cur.rank[q] != unranked)
              for (auto p: a.succ(q, l))
                {
                  bound[p] = bound[p] == unranked ? cur.rank[q]
                                                  : std::min(bound[p], cur.rank[q]);
                  if (cur.obligation[q])
                    reach_o[p] = 1;
                }
          bool empty_o = std::none_of(cur.obligation.begin(), cur.obligation.end(),
                                      [](char c) { return c; });
          rankings(bound, [&](const std::vector<int>& r) {
            std::vector<char> o(n, 0);
            for (std::size_t p = 0; p < n; ++p)
              if (r[p] != unranked && r[p] % 2 == 0)
                o[p] = empty_o ? 1 : reach_o[p];
            state_t t = get({r, std::move(o)});
            res.add_edge(s, l, t);
          });
        }
    res.finalize();
    return res;
  }
}
