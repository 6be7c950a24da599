#include <cltl/errors.hh>
#include <cltl/prompt.hh>

#include <algorithm>
#include <unordered_map>

namespace cltl
{
  formula colour_atom()
  {
    return formula::eq({0, colour_x}, {0, colour_y});
  }

  formula rel_p(const formula& f, const formula& p)
  {
    std::unordered_map<const void*, formula> memo;
    formula not_p = formula::not_(p);
    auto rec = [&](auto&& self, const formula& g) -> formula {
      if (auto it = memo.find(g.id()); it != memo.end())
        return it->second;
      formula r;
      switch (g.kind())
        {
        case op::tt:
        case op::ff:
        case op::atom:
          r = g;
          break;
        case op::not_:
          r = formula::not_(self(self, g.child()));
          break;
        case op::next:
          r = formula::next(self(self, g.child()));
          break;
        case op::finally:
          r = formula::finally(self(self, g.child()));
          break;
        case op::globally:
          r = formula::globally(self(self, g.child()));
          break;
        case op::or_:
          r = formula::or_(self(self, g.left()), self(self, g.right()));
          break;
        case op::and_:
          r = formula::and_(self(self, g.left()), self(self, g.right()));
          break;
        case op::until:
          r = formula::until(self(self, g.left()), self(self, g.right()));
          break;
        case op::prompt_finally:
          {
            formula psi = self(self, g.child());
            r = formula::and_(
              formula::implies(p, formula::until(p, formula::until(not_p, psi))),
              formula::implies(not_p, formula::until(not_p, formula::until(p, psi))));
            break;
          }
        }
      memo.emplace(g.id(), r);
      return r;
    };
    return rec(rec, f);
  }

  colored_spec colorize(const game_spec& spec)
  {
    for (auto* name: {colour_x, colour_y})
      if (spec.find(name))
        throw error(error_kind::name_collision,
                    std::string("colour variable name already declared: ") + name);
    colored_spec c;
    c.base = spec;
    c.p = colour_atom();
    c.color_vars = {colour_x, colour_y};
    c.spec = spec;
    c.spec.prompt = false;
    c.spec.variables.push_back({colour_x, owner::sys, var_kind::ahead});
    c.spec.variables.push_back({colour_y, owner::sys, var_kind::ahead});
    formula alternation =
      formula::and_(formula::globally(formula::finally(c.p)),
                    formula::globally(formula::finally(formula::not_(c.p))));
    c.spec.winning_condition =
      formula::and_(alternation, rel_p(spec.winning_condition, c.p));
    return c;
  }

  prompt_result decide_prompt_single_sided(const game_spec& spec,
                                           const singlesided_options& opt)
  {
    if (spec.dom != domain::int_z)
      throw error(error_kind::invalid_spec,
                  "prompt games are decided over Z only");
    if (spec.mode != game_mode::single_sided)
      throw error(error_kind::undecidable_class,
                  "prompt games are decided in single-sided mode only; "
                  "general games over Z are undecidable");
    auto colored = colorize(spec);
    validate(colored.spec);
    auto solved = decide_single_sided(colored.spec, opt);
    verdict v = solved.result;
    return {std::move(colored), std::move(solved), v};
  }

  colour_predicates lasso_colour_predicates(const std::vector<bool>& stem,
                                            const std::vector<bool>& loop)
  {
    colour_predicates res;
    if (loop.empty()
        || std::all_of(loop.begin(), loop.end(),
                       [&](bool c) { return c == loop.front(); }))
      return res;
    // Every block ends within one loop period past stem + loop, so three
    // unrolled periods hold every block length that ever occurs.
    std::vector<bool> w(stem);
    for (int rep = 0; rep < 3; ++rep)
      w.insert(w.end(), loop.begin(), loop.end());
    std::size_t limit = stem.size() + 2 * loop.size();
    unsigned lo = ~0u, hi = 0;
    for (std::size_t start = 0; start < limit;)
      {
        std::size_t end = start;
        while (end < w.size() && w[end] == w[start])
          ++end;
        unsigned len = end - start;
        lo = std::min(lo, len);
        hi = std::max(hi, len);
        start = end;
      }
    res.spaced = lo;
    res.bounded = hi;
    if (lo == hi)
      res.tight = lo;
    return res;
  }
}
