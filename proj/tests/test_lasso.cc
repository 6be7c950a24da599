#include "oracles.hh"

#include <cltl/formula.hh>
#include <cltl/frames.hh>
#include <cltl/lasso.hh>

#include <doctest.h>

using namespace cltl;

namespace
{
  vocabulary voc_y()
  {
    return vocabulary(std::vector<variable>{{"y", owner::sys, var_kind::ahead}});
  }

  std::vector<valuation> ys(const vocabulary& voc, std::vector<int> vals)
  {
    std::vector<valuation> out;
    for (int v: vals)
      out.push_back(make_valuation(voc, {{"y", v}}));
    return out;
  }

  /// Atom truth on an unrolled concrete lasso, read straight off the values.
  bool concrete_atom(const vocabulary& voc, const std::vector<valuation>& stem,
                     const std::vector<valuation>& loop, const formula& a,
                     std::size_t pos)
  {
    lasso_shape shape{stem.size(), loop.size()};
    auto at = [&](std::size_t p) -> const valuation& {
      return p < stem.size() ? stem[p] : loop[p - stem.size()];
    };
    auto value = [&](const term& t) {
      std::size_t p = shape.advance(pos, t.depth);
      int ai = voc.ahead_index(t.var);
      return ai >= 0 ? at(p).ahead[ai] : at(p).blind[voc.blind_index(t.var)];
    };
    auto l = value(a.lhs()), r = value(a.rhs());
    return a.relation() == rel::lt ? l < r : l == r;
  }
}

TEST_CASE("concrete evaluation examples")
{
  auto voc = voc_y();
  auto f = parse_formula("G (y = X y)");
  CHECK(eval_concrete_lasso(voc, f, ys(voc, {0}), ys(voc, {0})));
  CHECK_FALSE(eval_concrete_lasso(voc, f, ys(voc, {0}), ys(voc, {1, 0})));

  vocabulary voc2(std::vector<variable>{{"x", owner::env, var_kind::ahead},
                                        {"y", owner::sys, var_kind::ahead}});
  std::vector<valuation> c{make_valuation(voc2, {{"x", 1}, {"y", 2}})};
  CHECK_FALSE(eval_concrete_lasso(voc2, parse_formula("G (y > X y)"), {}, c));
}

TEST_CASE("lasso shape")
{
  lasso_shape s{2, 3};
  CHECK(s.next(4) == 2);
  CHECK(s.advance(0, 7) == 4);
  CHECK(s.advance(3, 3) == 3);
  CHECK(s.advance(1, 0) == 1);
}

TEST_CASE("concrete evaluation agrees with the forward-scanning oracle")
{
  std::vector<variable> vars{{"a", owner::env, var_kind::ahead},
                             {"b", owner::sys, var_kind::ahead},
                             {"c", owner::sys, var_kind::ahead}};
  vocabulary voc(vars);
  std::mt19937 rng(21);
  std::uniform_int_distribution<int> d(-5, 5);
  for (int it = 0; it < 400; ++it)
    {
      auto f = oracle::random_formula(rng, {"a", "b", "c"}, 2, 1 + rng() % 9);
      std::vector<valuation> stem(rng() % 4), loop(1 + rng() % 3);
      for (auto* part: {&stem, &loop})
        for (auto& v: *part)
          v = make_valuation(voc, {{"a", d(rng)}, {"b", d(rng)}, {"c", d(rng)}});
      oracle::naive_lasso ref(stem.size(), loop.size(), [&](const formula& a, std::size_t p) {
        return concrete_atom(voc, stem, loop, a, p);
      });
      CHECK_MESSAGE(eval_concrete_lasso(voc, f, stem, loop) == ref.eval(f, 0),
                    to_string(f));
    }
}

TEST_CASE("prompt eventualities use the bounded window")
{
  auto voc = voc_y();
  // y changes every third position: 0 0 1 ...
  auto loop = ys(voc, {0, 0, 1});
  parse_options po;
  po.prompt = true;
  auto spec = parse_spec("domain: Z; mode: single-sided; sys { ahead y; } spec: G FP (y < X y);", po);
  auto fp = spec.winning_condition;
  CHECK_FALSE(eval_concrete_lasso(voc, fp, {}, loop, 0u));
  CHECK_FALSE(eval_concrete_lasso(voc, fp, {}, loop, 1u));
  // Over the loop 0 0 1 the step 1 -> 0 is a descent, so only 0 -> 1 counts:
  // from position 2 the next ascent is at position 4.
  CHECK(eval_concrete_lasso(voc, fp, {}, loop, 2u));
  CHECK_THROWS(eval_concrete_lasso(voc, fp, {}, loop));

  std::mt19937 rng(4);
  std::uniform_int_distribution<int> d(-2, 2);
  for (int it = 0; it < 200; ++it)
    {
      auto g = formula::globally(formula::prompt_finally(
        oracle::random_formula(rng, {"y"}, 1, 1 + rng() % 4)));
      std::vector<valuation> stem = ys(voc, std::vector<int>(rng() % 3, 0));
      std::vector<valuation> lp = ys(voc, std::vector<int>(1 + rng() % 4, 0));
      for (auto* part: {&stem, &lp})
        for (auto& v: *part)
          v = make_valuation(voc, {{"y", d(rng)}});
      unsigned bound = rng() % 4;
      oracle::naive_lasso ref(stem.size(), lp.size(),
                              [&](const formula& a, std::size_t p) {
                                return concrete_atom(voc, stem, lp, a, p);
                              },
                              bound);
      CHECK(eval_concrete_lasso(voc, g, stem, lp, bound) == ref.eval(g, 0));
    }
}

TEST_CASE("symbolic lasso of a concrete lasso")
{
  auto voc = voc_y();
  auto [stem, loop] = symbolic_lasso(voc, 1, ys(voc, {0}), ys(voc, {1, 2}));
  CHECK(stem.size() == 1);
  CHECK(loop.size() == 2);
  for (auto* part: {&stem, &loop})
    for (auto& f: *part)
      CHECK(f.size == 2);
  // Positions 1 -> 2 and 2 -> 1 in the loop: ascent then descent.
  CHECK(atom_holds(loop[0], parse_formula("y < X y"), voc));
  CHECK(atom_holds(loop[1], parse_formula("X y < y"), voc));
  CHECK(eval_symbolic_lasso(voc, parse_formula("G F (y < X y)"), stem, loop));
  CHECK_FALSE(eval_symbolic_lasso(voc, parse_formula("G (y < X y)"), stem, loop));
}

TEST_CASE("concrete and symbolic semantics agree on small samples")
{
  std::vector<variable> vars{{"a", owner::env, var_kind::ahead},
                             {"b", owner::sys, var_kind::ahead},
                             {"u", owner::env, var_kind::blind},
                             {"s", owner::sys, var_kind::blind}};
  vocabulary voc(vars);
  std::mt19937 rng(8);
  std::uniform_int_distribution<int> d(-5, 5);
  for (int it = 0; it < 200; ++it)
    {
      formula f = oracle::random_formula(rng, {"a", "b"}, 2, 1 + rng() % 7);
      if (rng() % 2)
        f = formula::and_(f, formula::globally(formula::lt({0, "u"}, {0, "s"})));
      std::vector<valuation> stem(rng() % 3), loop(1 + rng() % 3);
      for (auto* part: {&stem, &loop})
        for (auto& v: *part)
          v = make_valuation(voc, {{"a", d(rng)}, {"b", d(rng)}, {"u", d(rng)}, {"s", d(rng)}});
      unsigned k = x_length(f);
      auto [fs, fl] = symbolic_lasso(voc, k, stem, loop);
      CHECK(eval_concrete_lasso(voc, f, stem, loop) == eval_symbolic_lasso(voc, f, fs, fl));
    }
}
