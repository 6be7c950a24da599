#include <cltl/errors.hh>
#include <cltl/omega.hh>

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

namespace cltl
{
  atom_alphabet atom_alphabet::full(std::vector<formula> atoms)
  {
    if (atoms.size() > 20)
      throw resource_exceeded("too many atoms for a full valuation alphabet");
    atom_alphabet ab;
    ab.atoms = std::move(atoms);
    for (std::uint64_t m = 0; m < (std::uint64_t(1) << ab.atoms.size()); ++m)
      ab.letters.push_back(m);
    return ab;
  }

  namespace
  {
    enum class nk { tt, ff, lit, and_, or_, next, until, release };

    struct nnode
    {
      nk k;
      int a = -1, b = -1;
      unsigned atom = 0;
      bool pos = true;

      auto key() const { return std::tuple(static_cast<int>(k), a, b, atom, pos); }
    };

    class nnf_table
    {
    public:
      explicit nnf_table(const std::vector<formula>& atoms)
      {
        for (unsigned i = 0; i < atoms.size(); ++i)
          atom_id_.emplace(atoms[i], i);
      }

      int get(nnode n)
      {
        auto [it, fresh] = ids_.emplace(n.key(), nodes_.size());
        if (fresh)
          nodes_.push_back(n);
        return it->second;
      }

      const nnode& at(int i) const { return nodes_[i]; }
      std::size_t size() const { return nodes_.size(); }

      int convert(const formula& f, bool neg)
      {
        auto key = std::pair(f.id(), neg);
        if (auto it = memo_.find(key); it != memo_.end())
          return it->second;
        int r = build(f, neg);
        keep_.push_back(f);
        memo_.emplace(key, r);
        return r;
      }

    private:
      int build(const formula& f, bool neg)
      {
        switch (f.kind())
          {
          case op::tt: return get({neg ? nk::ff : nk::tt});
          case op::ff: return get({neg ? nk::tt : nk::ff});
          case op::atom:
            {
              auto it = atom_id_.find(f);
              if (it == atom_id_.end())
                throw error(error_kind::invalid_spec,
                            "atom not in the alphabet: " + to_string(f));
              nnode n{nk::lit};
              n.atom = it->second;
              n.pos = !neg;
              return get(n);
            }
          case op::not_: return convert(f.child(), !neg);
          case op::and_:
          case op::or_:
            {
              bool conj = f.is(op::and_) != neg;
              return get({conj ? nk::and_ : nk::or_,
                          convert(f.left(), neg), convert(f.right(), neg)});
            }
          case op::next:
            return get({nk::next, convert(f.child(), neg)});
          case op::until:
            return get({neg ? nk::release : nk::until,
                        convert(f.left(), neg), convert(f.right(), neg)});
          case op::finally:
            // F a = true U a, !F a = false R !a
            return get({neg ? nk::release : nk::until,
                        get({neg ? nk::ff : nk::tt}), convert(f.child(), neg)});
          case op::globally:
            return get({neg ? nk::until : nk::release,
                        get({neg ? nk::tt : nk::ff}), convert(f.child(), neg)});
          case op::prompt_finally:
            throw error(error_kind::invalid_spec,
                        "FP must be translated away before building automata");
          }
        throw error(error_kind::invalid_spec, "bad formula");
      }

      std::vector<nnode> nodes_;
      std::map<std::tuple<int, int, int, unsigned, bool>, int> ids_;
      std::unordered_map<formula, unsigned, formula_hash> atom_id_;
      std::map<std::pair<const void*, bool>, int> memo_;
      std::vector<formula> keep_;
    };

    struct pending
    {
      std::set<int> incoming;
      std::set<int> fresh, old, next;
    };

    struct tableau_node
    {
      std::set<int> incoming;
      std::set<int> old, next;
    };

    constexpr int init_mark = -1;

    std::vector<tableau_node> expand_all(nnf_table& t, int root)
    {
      std::vector<tableau_node> nodes;
      std::map<std::pair<std::set<int>, std::set<int>>, std::size_t> index;
      std::vector<pending> todo;
      todo.push_back({{init_mark}, {root}, {}, {}});
      while (!todo.empty())
        {
          pending n = std::move(todo.back());
          todo.pop_back();
          if (n.fresh.empty())
            {
              auto key = std::pair(n.old, n.next);
              if (auto it = index.find(key); it != index.end())
                {
                  nodes[it->second].incoming.insert(n.incoming.begin(),
                                                    n.incoming.end());
                  continue;
                }
              int id = nodes.size();
              index.emplace(key, id);
              nodes.push_back({n.incoming, n.old, n.next});
              todo.push_back({{id}, n.next, {}, {}});
              continue;
            }
          int eta = *n.fresh.begin();
          n.fresh.erase(n.fresh.begin());
          if (n.old.count(eta))
            {
              todo.push_back(std::move(n));
              continue;
            }
          const nnode& e = t.at(eta);
          auto add_new = [&](pending& p, int f) {
            if (!p.old.count(f))
              p.fresh.insert(f);
          };
          switch (e.k)
            {
            case nk::ff:
              break;
            case nk::tt:
              n.old.insert(eta);
              todo.push_back(std::move(n));
              break;
            case nk::lit:
              {
                nnode neg = e;
                neg.pos = !e.pos;
                if (n.old.count(t.get(neg)))
                  break;
                n.old.insert(eta);
                todo.push_back(std::move(n));
                break;
              }
            case nk::and_:
              add_new(n, e.a);
              add_new(n, e.b);
              n.old.insert(eta);
              todo.push_back(std::move(n));
              break;
            case nk::next:
              n.old.insert(eta);
              n.next.insert(e.a);
              todo.push_back(std::move(n));
              break;
            case nk::or_:
            case nk::until:
            case nk::release:
              {
                pending n1 = n, n2 = std::move(n);
                n1.old.insert(eta);
                n2.old.insert(eta);
                if (e.k == nk::or_)
                  {
                    add_new(n1, e.a);
                    add_new(n2, e.b);
                  }
                else if (e.k == nk::until)
                  {
                    add_new(n1, e.a);
                    n1.next.insert(eta);
                    add_new(n2, e.b);
                  }
                else
                  {
                    add_new(n1, e.b);
                    n1.next.insert(eta);
                    add_new(n2, e.a);
                    add_new(n2, e.b);
                  }
                todo.push_back(std::move(n1));
                todo.push_back(std::move(n2));
                break;
              }
            }
        }
      return nodes;
    }
  }

  nbw ltl_to_nbw(const formula& f, const atom_alphabet& ab)
  {
    if (ab.atoms.size() > 64)
      throw resource_exceeded("more than 64 atoms");
    nnf_table t(ab.atoms);
    int root = t.convert(f, false);
    auto nodes = expand_all(t, root);

    std::vector<int> untils;
    for (std::size_t i = 0; i < t.size(); ++i)
      if (t.at(i).k == nk::until)
        untils.push_back(i);
    std::size_t nu = std::max<std::size_t>(1, untils.size());

    // in_f[c][m]: node m belongs to the acceptance set of the c-th until.
    std::vector<std::vector<char>> in_f(nu, std::vector<char>(nodes.size(), 1));
    for (std::size_t c = 0; c < untils.size(); ++c)
      for (std::size_t m = 0; m < nodes.size(); ++m)
        {
          int u = untils[c];
          in_f[c][m] = !nodes[m].old.count(u) || nodes[m].old.count(t.at(u).b);
        }

    std::vector<std::uint64_t> pos(nodes.size(), 0), neg(nodes.size(), 0);
    for (std::size_t m = 0; m < nodes.size(); ++m)
      for (int o: nodes[m].old)
        if (t.at(o).k == nk::lit)
          (t.at(o).pos ? pos : neg)[m] |= std::uint64_t(1) << t.at(o).atom;

    // Distinct valuations, so each is checked once.
    std::map<std::uint64_t, std::vector<letter_t>> by_val;
    for (letter_t l = 0; l < ab.letters.size(); ++l)
      by_val[ab.letters[l]].push_back(l);

    nbw a(ab.letters.size());
    state_t init = a.add_state(false);
    a.set_initial(init);
    auto sid = [&](std::size_t m, std::size_t c) {
      return static_cast<state_t>(1 + m * nu + c);
    };
    for (std::size_t m = 0; m < nodes.size(); ++m)
      for (std::size_t c = 0; c < nu; ++c)
        a.add_state(c == 0 && in_f[0][m]);

    // Predecessor lists from the incoming sets.
    for (std::size_t q = 0; q < nodes.size(); ++q)
      for (auto& [val, ls]: by_val)
        {
          if ((val & pos[q]) != pos[q] || (val & neg[q]))
            continue;
          for (int p: nodes[q].incoming)
            {
              if (p == init_mark)
                {
                  for (auto l: ls)
                    a.add_edge(init, l, sid(q, 0));
                  continue;
                }
              for (std::size_t c = 0; c < nu; ++c)
                {
                  std::size_t c2 = in_f[c][p] ? (c + 1) % nu : c;
                  for (auto l: ls)
                    a.add_edge(sid(p, c), l, sid(q, c2));
                }
            }
        }
    a.finalize();
    auto res = trim(a);
    if (res.num_states() == 0)
      {
        // Keep a single non-accepting initial state for the empty language.
        nbw e(ab.letters.size());
        e.set_initial(e.add_state(false));
        return e;
      }
    return res;
  }

  std::uint64_t frame_letter(const frame& f, const std::vector<formula>& atoms,
                             const vocabulary& voc)
  {
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if (atom_holds(f, atoms[i], voc))
        m |= std::uint64_t(1) << i;
    return m;
  }

  nbw nbw_from_symbolic_ltl(const formula& f, const std::vector<frame>& frames,
                            const vocabulary& voc)
  {
    atom_alphabet ab;
    ab.atoms = atoms(f);
    if (ab.atoms.size() > 64)
      throw resource_exceeded("more than 64 atoms");
    for (auto& fr: frames)
      ab.letters.push_back(frame_letter(fr, ab.atoms, voc));
    return ltl_to_nbw(f, ab);
  }
}
