#include <cltl/errors.hh>
#include <cltl/omega.hh>
#include <cltl/graph.hh>

#include <algorithm>
#include <map>
#include <tuple>
#include <ostream>
#include <unordered_map>

namespace cltl
{
  std::size_t nbw::num_edges() const
  {
    std::size_t n = 0;
    for (auto& s: succ_)
      n += s.size();
    return n;
  }

  state_t nbw::add_state(bool accepting)
  {
    accepting_.push_back(accepting);
    succ_.resize(succ_.size() + num_letters_);
    return accepting_.size() - 1;
  }

  void nbw::add_edge(state_t src, letter_t a, state_t dst)
  {
    succ_[static_cast<std::size_t>(src) * num_letters_ + a].push_back(dst);
  }

  void nbw::finalize()
  {
    for (auto& s: succ_)
      {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
      }
    std::sort(initial_.begin(), initial_.end());
    initial_.erase(std::unique(initial_.begin(), initial_.end()), initial_.end());
  }

  unsigned dpw::max_priority() const
  {
    unsigned m = 0;
    for (auto p: priority)
      m = std::max(m, p);
    return m;
  }

  unsigned dpw::priority_count() const
  {
    std::vector<unsigned> p(priority);
    std::sort(p.begin(), p.end());
    return std::unique(p.begin(), p.end()) - p.begin();
  }

  namespace
  {
    // Iterative Tarjan over an implicit graph with vertices 0..n-1.
    template<class Succ>
    std::vector<std::uint32_t> scc_ids(std::size_t n, Succ succ,
                                       std::uint32_t& count)
    {
      constexpr std::uint32_t none = ~0u;
      std::vector<std::uint32_t> index(n, none), low(n, 0), comp(n, none);
      std::vector<std::uint32_t> stack;
      std::vector<char> on_stack(n, 0);
      std::uint32_t next_index = 0;
      count = 0;
      struct frame_t { std::uint32_t v; std::size_t it; std::vector<std::uint32_t> out; };
      std::vector<frame_t> call;
      for (std::uint32_t root = 0; root < n; ++root)
        {
          if (index[root] != none)
            continue;
          call.push_back({root, 0, succ(root)});
          index[root] = low[root] = next_index++;
          stack.push_back(root);
          on_stack[root] = 1;
          while (!call.empty())
            {
              auto& fr = call.back();
              if (fr.it < fr.out.size())
                {
                  std::uint32_t w = fr.out[fr.it++];
                  if (index[w] == none)
                    {
                      index[w] = low[w] = next_index++;
                      stack.push_back(w);
                      on_stack[w] = 1;
                      call.push_back({w, 0, succ(w)});
                    }
                  else if (on_stack[w])
                    low[fr.v] = std::min(low[fr.v], index[w]);
                  continue;
                }
              std::uint32_t v = fr.v;
              if (low[v] == index[v])
                {
                  std::uint32_t w;
                  do
                    {
                      w = stack.back();
                      stack.pop_back();
                      on_stack[w] = 0;
                      comp[w] = count;
                    }
                  while (w != v);
                  ++count;
                }
              call.pop_back();
              if (!call.empty())
                low[call.back().v] = std::min(low[call.back().v], low[v]);
            }
        }
      return comp;
    }
  }

  std::vector<std::uint32_t> tarjan_scc(
      std::size_t n,
      const std::function<std::vector<std::uint32_t>(std::uint32_t)>& succ,
      std::uint32_t& count)
  {
    return scc_ids(n, succ, count);
  }

  nbw trim(const nbw& a)
  {
    std::size_t n = a.num_states();
    std::uint32_t L = a.num_letters();
    auto out = [&](std::uint32_t q) {
      std::vector<std::uint32_t> r;
      for (letter_t l = 0; l < L; ++l)
        for (auto p: a.succ(q, l))
          r.push_back(p);
      std::sort(r.begin(), r.end());
      r.erase(std::unique(r.begin(), r.end()), r.end());
      return r;
    };
    std::vector<std::vector<std::uint32_t>> adj(n);
    for (std::uint32_t q = 0; q < n; ++q)
      adj[q] = out(q);

    std::vector<char> reach(n, 0);
    std::vector<std::uint32_t> work(a.initial().begin(), a.initial().end());
    for (auto q: work)
      reach[q] = 1;
    while (!work.empty())
      {
        auto q = work.back();
        work.pop_back();
        for (auto p: adj[q])
          if (!reach[p])
            {
              reach[p] = 1;
              work.push_back(p);
            }
      }

    std::uint32_t nscc;
    auto comp = scc_ids(n, [&](std::uint32_t q) { return adj[q]; }, nscc);
    // A component is good if it is nontrivial and has an accepting state.
    std::vector<char> good(nscc, 0);
    std::vector<std::uint32_t> csize(nscc, 0);
    for (std::uint32_t q = 0; q < n; ++q)
      ++csize[comp[q]];
    for (std::uint32_t q = 0; q < n; ++q)
      if (a.accepting(q))
        {
          bool loop = csize[comp[q]] > 1
            || std::find(adj[q].begin(), adj[q].end(), q) != adj[q].end();
          if (loop)
            good[comp[q]] = 1;
        }
    // Backward closure from good components.
    std::vector<std::vector<std::uint32_t>> rev(n);
    for (std::uint32_t q = 0; q < n; ++q)
      for (auto p: adj[q])
        rev[p].push_back(q);
    std::vector<char> useful(n, 0);
    for (std::uint32_t q = 0; q < n; ++q)
      if (good[comp[q]])
        {
          useful[q] = 1;
          work.push_back(q);
        }
    while (!work.empty())
      {
        auto q = work.back();
        work.pop_back();
        for (auto p: rev[q])
          if (!useful[p])
            {
              useful[p] = 1;
              work.push_back(p);
            }
      }

    std::vector<state_t> rename(n, ~0u);
    nbw res(L);
    for (std::uint32_t q = 0; q < n; ++q)
      if (reach[q] && useful[q])
        rename[q] = res.add_state(a.accepting(q));
    for (std::uint32_t q = 0; q < n; ++q)
      if (rename[q] != ~0u)
        for (letter_t l = 0; l < L; ++l)
          for (auto p: a.succ(q, l))
            if (rename[p] != ~0u)
              res.add_edge(rename[q], l, rename[p]);
    for (auto q: a.initial())
      if (rename[q] != ~0u)
        res.set_initial(rename[q]);
    res.finalize();
    return res;
  }

  bool is_empty(const nbw& a)
  {
    return trim(a).initial().empty();
  }

  std::vector<std::uint32_t> letter_classes(const nbw& a, std::uint32_t& count)
  {
    std::uint32_t L = a.num_letters();
    std::vector<std::uint32_t> cls(L);
    std::map<std::vector<std::vector<state_t>>, std::uint32_t> seen;
    for (letter_t l = 0; l < L; ++l)
      {
        std::vector<std::vector<state_t>> sig(a.num_states());
        for (state_t q = 0; q < a.num_states(); ++q)
          sig[q] = a.succ(q, l);
        auto [it, fresh] = seen.emplace(std::move(sig), seen.size());
        cls[l] = it->second;
      }
    count = seen.size();
    return cls;
  }

  nbw product(const nbw& a, const nbw& b, std::size_t max_states)
  {
    if (a.num_letters() != b.num_letters())
      throw error(error_kind::alphabet_mismatch, "product of automata over different alphabets");
    using triple = std::tuple<state_t, state_t, unsigned>;
    std::map<triple, state_t> ids;
    std::vector<triple> states;
    nbw res(a.num_letters());
    // Flag 1: a accepted since the last reset; 2: then b as well.
    auto flag_after = [&](unsigned f, state_t p, state_t q) {
      unsigned g = f == 2 ? 0 : f;
      if (g == 0 && a.accepting(p))
        g = 1;
      if (g == 1 && b.accepting(q))
        g = 2;
      return g;
    };
    auto get = [&](triple t) {
      auto [it, fresh] = ids.emplace(t, states.size());
      if (fresh)
        {
          if (states.size() >= max_states)
            throw resource_exceeded("product exceeded "
                                    + std::to_string(max_states) + " states");
          res.add_state(std::get<2>(t) == 2);
          states.push_back(t);
        }
      return it->second;
    };
    for (auto p: a.initial())
      for (auto q: b.initial())
        res.set_initial(get({p, q, flag_after(0, p, q)}));
    for (state_t s = 0; s < states.size(); ++s)
      for (letter_t l = 0; l < res.num_letters(); ++l)
        {
          auto [p, q, f] = states[s];
          for (auto p2: a.succ(p, l))
            for (auto q2: b.succ(q, l))
              res.add_edge(s, l, get({p2, q2, flag_after(f, p2, q2)}));
        }
    res.finalize();
    return res;
  }

  dpw complement(const dpw& d)
  {
    dpw c = d;
    for (auto& p: c.priority)
      ++p;
    return c;
  }

  void normalize_priorities(dpw& d)
  {
    std::vector<unsigned> used(d.priority);
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    std::map<unsigned, unsigned> to;
    unsigned cur = 0;
    bool first = true;
    for (unsigned p: used)
      {
        if (first)
          cur = p % 2;
        else if ((cur % 2) != (p % 2))
          ++cur;
        to[p] = cur;
        first = false;
      }
    for (auto& p: d.priority)
      p = to[p];
  }

  dpw relabel(const dpw& d, std::uint32_t num_letters,
              const std::function<letter_t(letter_t)>& project)
  {
    dpw r = d;
    r.num_letters = num_letters;
    r.letter_class.resize(num_letters);
    for (letter_t l = 0; l < num_letters; ++l)
      r.letter_class[l] = d.letter_class[project(l)];
    return r;
  }

  bool lasso_accepts(const nbw& a, const std::vector<letter_t>& stem,
                     const std::vector<letter_t>& loop)
  {
    if (loop.empty())
      throw error(error_kind::invalid_spec, "empty lasso loop");
    std::size_t len = stem.size() + loop.size();
    auto letter = [&](std::size_t i) {
      return i < stem.size() ? stem[i] : loop[i - stem.size()];
    };
    auto nxt = [&](std::size_t i) { return i + 1 < len ? i + 1 : stem.size(); };
    // Product vertices (q, i) numbered on demand.
    std::unordered_map<std::uint64_t, std::uint32_t> id;
    std::vector<std::pair<state_t, std::size_t>> verts;
    auto get = [&](state_t q, std::size_t i) {
      std::uint64_t key = (static_cast<std::uint64_t>(q) << 32) | i;
      auto [it, fresh] = id.emplace(key, verts.size());
      if (fresh)
        verts.push_back({q, i});
      return it->second;
    };
    std::vector<std::vector<std::uint32_t>> adj;
    for (auto q: a.initial())
      get(q, 0);
    for (std::size_t v = 0; v < verts.size(); ++v)
      {
        auto [q, i] = verts[v];
        std::vector<std::uint32_t> out;
        for (auto p: a.succ(q, letter(i)))
          out.push_back(get(p, nxt(i)));
        adj.resize(verts.size());
        adj[v] = std::move(out);
      }
    adj.resize(verts.size());
    std::uint32_t nscc;
    auto comp = scc_ids(verts.size(),
                        [&](std::uint32_t v) { return adj[v]; }, nscc);
    std::vector<std::uint32_t> csize(nscc, 0);
    for (auto c: comp)
      ++csize[c];
    for (std::uint32_t v = 0; v < verts.size(); ++v)
      if (a.accepting(verts[v].first))
        {
          if (csize[comp[v]] > 1)
            return true;
          if (std::find(adj[v].begin(), adj[v].end(), v) != adj[v].end())
            return true;
        }
    return false;
  }

  bool lasso_accepts(const dpw& d, const std::vector<letter_t>& stem,
                     const std::vector<letter_t>& loop)
  {
    if (loop.empty())
      throw error(error_kind::invalid_spec, "empty lasso loop");
    state_t q = d.initial;
    for (auto l: stem)
      q = d.next(q, l);
    // Iterate whole loops until the state at the loop start repeats.
    std::vector<state_t> starts;
    std::map<state_t, std::size_t> seen;
    std::vector<unsigned> minp;
    for (;;)
      {
        if (auto it = seen.find(q); it != seen.end())
          {
            unsigned m = ~0u;
            for (std::size_t i = it->second; i < minp.size(); ++i)
              m = std::min(m, minp[i]);
            return m % 2 == 0;
          }
        seen[q] = minp.size();
        unsigned m = ~0u;
        for (auto l: loop)
          {
            q = d.next(q, l);
            m = std::min(m, d.priority[q]);
          }
        minp.push_back(m);
      }
  }

  void print_dot(std::ostream& os, const nbw& a,
                 const std::function<std::string(letter_t)>& letter_name)
  {
    os << "digraph nbw {\n  rankdir=LR;\n  init [shape=point];\n";
    for (state_t q = 0; q < a.num_states(); ++q)
      os << "  " << q << " [shape=" << (a.accepting(q) ? "doublecircle" : "circle")
         << "];\n";
    for (auto q: a.initial())
      os << "  init -> " << q << ";\n";
    for (state_t q = 0; q < a.num_states(); ++q)
      {
        std::map<state_t, std::vector<letter_t>> by_dst;
        for (letter_t l = 0; l < a.num_letters(); ++l)
          for (auto p: a.succ(q, l))
            by_dst[p].push_back(l);
        for (auto& [p, ls]: by_dst)
          {
            os << "  " << q << " -> " << p << " [label=\"";
            for (std::size_t i = 0; i < ls.size() && i < 8; ++i)
              os << (i ? "," : "")
                 << (letter_name ? letter_name(ls[i]) : std::to_string(ls[i]));
            if (ls.size() > 8)
              os << ",... (" << ls.size() << ")";
            os << "\"];\n";
          }
      }
    os << "}\n";
  }

  void print_dot(std::ostream& os, const dpw& d,
                 const std::function<std::string(letter_t)>& letter_name)
  {
    os << "digraph dpw {\n  rankdir=LR;\n  init [shape=point];\n";
    for (state_t q = 0; q < d.num_states(); ++q)
      os << "  " << q << " [label=\"" << q << " / " << d.priority[q] << "\"];\n";
    os << "  init -> " << d.initial << ";\n";
    std::vector<letter_t> rep(d.num_classes, ~0u);
    std::vector<std::size_t> members(d.num_classes, 0);
    for (letter_t l = 0; l < d.num_letters; ++l)
      {
        if (rep[d.letter_class[l]] == ~0u)
          rep[d.letter_class[l]] = l;
        ++members[d.letter_class[l]];
      }
    for (state_t q = 0; q < d.num_states(); ++q)
      for (std::uint32_t c = 0; c < d.num_classes; ++c)
        {
          if (rep[c] == ~0u)
            continue;
          os << "  " << q << " -> " << d.delta[q * d.num_classes + c]
             << " [label=\"c" << c << ": "
             << (letter_name ? letter_name(rep[c]) : std::to_string(rep[c]));
          if (members[c] > 1)
            os << " +" << members[c] - 1;
          os << "\"];\n";
        }
    os << "}\n";
  }
}
