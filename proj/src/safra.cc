#include <cltl/errors.hh>
#include <cltl/omega.hh>

#include <algorithm>
#include <map>
#include <unordered_map>

namespace cltl
{
  namespace
  {
    // Compact Safra tree: node i has name i+1, parents precede children and
    // a smaller name means an older node.
    struct snode
    {
      std::uint32_t parent;               // ~0u for the root
      std::vector<state_t> label;
    };
    using tree = std::vector<snode>;

    constexpr std::uint32_t no_parent = ~0u;

    std::vector<std::uint32_t> encode(const tree& t, unsigned pri)
    {
      std::vector<std::uint32_t> k{pri, static_cast<std::uint32_t>(t.size())};
      for (auto& n: t)
        {
          k.push_back(n.parent);
          k.push_back(n.label.size());
          k.insert(k.end(), n.label.begin(), n.label.end());
        }
      return k;
    }

    struct vec_hash
    {
      std::size_t operator()(const std::vector<std::uint32_t>& v) const
      {
        std::size_t h = v.size();
        for (auto x: v)
          h = h * 1000003u ^ x;
        return h;
      }
    };

    std::vector<state_t> minus(const std::vector<state_t>& a,
                               const std::vector<state_t>& b)
    {
      std::vector<state_t> r;
      std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                          std::back_inserter(r));
      return r;
    }

    std::vector<state_t> unite(const std::vector<state_t>& a,
                               const std::vector<state_t>& b)
    {
      std::vector<state_t> r;
      std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                     std::back_inserter(r));
      return r;
    }

    class safra
    {
    public:
      safra(const nbw& a) : a_(a), none_pri_(4 * a.num_states() + 1) {}

      unsigned none_priority() const { return none_pri_; }

      // One Safra step; returns the successor tree and the priority.
      std::pair<tree, unsigned> step(const tree& t, letter_t l) const
      {
        tree w;
        w.reserve(2 * t.size());
        // 1. successors
        for (auto& n: t)
          {
            std::vector<state_t> s;
            for (auto q: n.label)
              {
                auto& nx = a_.succ(q, l);
                s.insert(s.end(), nx.begin(), nx.end());
              }
            std::sort(s.begin(), s.end());
            s.erase(std::unique(s.begin(), s.end()), s.end());
            w.push_back({n.parent, std::move(s)});
          }
        // 2. spawn accepting children
        std::size_t old = w.size();
        for (std::size_t i = 0; i < old; ++i)
          {
            std::vector<state_t> f;
            for (auto q: w[i].label)
              if (a_.accepting(q))
                f.push_back(q);
            if (!f.empty())
              w.push_back({static_cast<std::uint32_t>(i), std::move(f)});
          }
        std::vector<std::vector<std::uint32_t>> kids(w.size());
        for (std::uint32_t i = 1; i < w.size(); ++i)
          kids[w[i].parent].push_back(i);
        // 3. horizontal merge
        if (!w.empty())
          hmerge(w, kids, 0, {});
        // 4. remove empty nodes
        std::vector<char> gone(w.size(), 0);
        std::uint32_t e = ~0u, f = ~0u;
        for (std::uint32_t i = 0; i < w.size(); ++i)
          if ((i > 0 && gone[w[i].parent]) || w[i].label.empty())
            {
              gone[i] = 1;
              e = std::min(e, i + 1);
            }
        // 5. vertical merge
        for (std::uint32_t i = 0; i < w.size(); ++i)
          {
            if (gone[i])
              continue;
            std::vector<state_t> u;
            bool any = false;
            for (auto c: kids[i])
              if (!gone[c])
                {
                  u = unite(u, w[c].label);
                  any = true;
                }
            if (any && u == w[i].label)
              {
                f = std::min(f, i + 1);
                remove_below(w, kids, i, gone, e);
              }
          }
        // 6. priority: removing name e gives 2e-1, a green name f gives 2f,
        // so a death outranks a rebirth under the same name.
        unsigned pri = none_pri_;
        if (e != ~0u)
          pri = 2 * e - 1;
        if (f != ~0u)
          pri = std::min(pri, 2 * f);
        // 7. compact names
        tree res;
        std::vector<std::uint32_t> to(w.size(), no_parent);
        for (std::uint32_t i = 0; i < w.size(); ++i)
          if (!gone[i])
            {
              to[i] = res.size();
              res.push_back({i == 0 ? no_parent : to[w[i].parent],
                             std::move(w[i].label)});
            }
        return {std::move(res), pri};
      }

    private:
      void hmerge(tree& w, const std::vector<std::vector<std::uint32_t>>& kids,
                  std::uint32_t v, const std::vector<state_t>& forbidden) const
      {
        if (!forbidden.empty())
          w[v].label = minus(w[v].label, forbidden);
        std::vector<state_t> local = forbidden;
        for (auto c: kids[v])
          {
            hmerge(w, kids, c, local);
            local = unite(local, w[c].label);
          }
      }

      void remove_below(tree& w, const std::vector<std::vector<std::uint32_t>>& kids,
                        std::uint32_t v, std::vector<char>& gone,
                        std::uint32_t& e) const
      {
        for (auto c: kids[v])
          if (!gone[c])
            {
              gone[c] = 1;
              e = std::min(e, c + 1);
              remove_below(w, kids, c, gone, e);
            }
      }

      const nbw& a_;
      unsigned none_pri_;
    };
  }

  dpw determinize(const nbw& a, std::size_t max_states)
  {
    safra s(a);
    dpw d;
    d.num_letters = a.num_letters();
    d.letter_class = letter_classes(a, d.num_classes);
    std::vector<letter_t> rep(d.num_classes);
    for (letter_t l = a.num_letters(); l-- > 0;)
      rep[d.letter_class[l]] = l;

    std::unordered_map<std::vector<std::uint32_t>, state_t, vec_hash> ids;
    std::vector<tree> trees;
    auto get = [&](tree t, unsigned pri) {
      auto key = encode(t, pri);
      auto [it, fresh] = ids.emplace(std::move(key), trees.size());
      if (fresh)
        {
          if (trees.size() >= max_states)
            throw resource_exceeded("determinization exceeded "
                                    + std::to_string(max_states) + " states");
          trees.push_back(std::move(t));
          d.priority.push_back(pri);
        }
      return it->second;
    };

    tree t0;
    std::vector<state_t> init(a.initial());
    std::sort(init.begin(), init.end());
    if (!init.empty())
      t0.push_back({no_parent, init});
    d.initial = get(t0, s.none_priority());
    for (state_t q = 0; q < trees.size(); ++q)
      {
        for (std::uint32_t c = 0; c < d.num_classes; ++c)
          {
            state_t nx;
            if (trees[q].empty())
              nx = get(tree{}, s.none_priority());
            else
              {
                auto [t, pri] = s.step(trees[q], rep[c]);
                if (t.empty())
                  pri = s.none_priority();
                nx = get(std::move(t), pri);
              }
            d.delta.push_back(nx);
          }
      }
    normalize_priorities(d);
    return d;
  }

  namespace
  {
    // Deterministic automaton over pairs (p, r) of priorities (letter
    // p * nb + r) accepting iff both min-inf p and min-inf r are even.
    const dpw& conjunction_automaton(unsigned na, unsigned nb)
    {
      static std::map<std::pair<unsigned, unsigned>, dpw> cache;
      auto key = std::pair(na, nb);
      if (auto it = cache.find(key); it != cache.end())
        return it->second;
      nbw c(na * nb);
      state_t wait = c.add_state(false);
      c.set_initial(wait);
      std::map<std::tuple<unsigned, unsigned, unsigned>, state_t> st;
      for (unsigned i = 0; i < na; i += 2)
        for (unsigned j = 0; j < nb; j += 2)
          for (unsigned ph = 0; ph < 3; ++ph)
            st[{i, j, ph}] = c.add_state(ph == 2);
      for (unsigned p = 0; p < na; ++p)
        for (unsigned r = 0; r < nb; ++r)
          {
            letter_t l = p * nb + r;
            c.add_edge(wait, l, wait);
            for (auto& [k, q]: st)
              {
                auto [i, j, ph] = k;
                // The guess is made on a letter that already respects it.
                if (p < i || r < j)
                  continue;
                unsigned nph;
                if (ph == 1)
                  nph = r == j ? 2 : 1;
                else
                  nph = p == i ? (r == j ? 2 : 1) : 0;
                c.add_edge(q, l, st[{i, j, nph}]);
                if (ph == 0)
                  c.add_edge(wait, l, st[{i, j, nph}]);
              }
          }
      c.finalize();
      return cache.emplace(key, determinize(c)).first->second;
    }
  }

  dpw intersect(const dpw& a0, const dpw& b0, std::size_t max_states)
  {
    if (a0.num_letters != b0.num_letters)
      throw error(error_kind::alphabet_mismatch, "alphabet mismatch in intersection");
    dpw a = a0, b = b0;
    normalize_priorities(a);
    normalize_priorities(b);
    unsigned na = a.max_priority() + 1, nb = b.max_priority() + 1;
    const dpw& c = conjunction_automaton(na, nb);

    dpw d;
    d.num_letters = a.num_letters;
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> cls;
    d.letter_class.resize(d.num_letters);
    std::vector<letter_t> rep;
    for (letter_t l = 0; l < d.num_letters; ++l)
      {
        auto key = std::pair(a.letter_class[l], b.letter_class[l]);
        auto [it, fresh] = cls.emplace(key, rep.size());
        if (fresh)
          rep.push_back(l);
        d.letter_class[l] = it->second;
      }
    d.num_classes = rep.size();

    using triple = std::tuple<state_t, state_t, state_t>;
    std::map<triple, state_t> ids;
    std::vector<triple> states;
    auto get = [&](triple t) {
      auto [it, fresh] = ids.emplace(t, states.size());
      if (fresh)
        {
          if (states.size() >= max_states)
            throw resource_exceeded("parity product exceeded "
                                    + std::to_string(max_states) + " states");
          states.push_back(t);
          d.priority.push_back(c.priority[std::get<2>(t)]);
        }
      return it->second;
    };
    d.initial = get({a.initial, b.initial, c.initial});
    for (state_t q = 0; q < states.size(); ++q)
      for (std::uint32_t k = 0; k < d.num_classes; ++k)
        {
          auto [qa, qb, qc] = states[q];
          state_t ra = a.next(qa, rep[k]);
          state_t rb = b.next(qb, rep[k]);
          state_t rc = c.next(qc, a.priority[ra] * nb + b.priority[rb]);
          d.delta.push_back(get({ra, rb, rc}));
        }
    normalize_priorities(d);
    return d;
  }
}
