#include "chain_corpus.hh"
#include "oracles.hh"

#include <cltl/completion.hh>
#include <cltl/corpus.hh>
#include <cltl/errors.hh>
#include <cltl/lasso.hh>
#include <cltl/singlesided.hh>

#include <doctest.h>

#include <set>

using namespace cltl;

namespace
{
  game_spec zspec(const std::string& decls, const std::string& phi)
  {
    return parse_spec("domain: Z; mode: single-sided; " + decls + " spec: " + phi + ";");
  }

  vocabulary voc_of(const std::vector<std::string>& names)
  {
    std::vector<variable> vars;
    for (auto& n: names)
      vars.push_back({n, owner::sys, var_kind::ahead});
    return vocabulary(vars);
  }

  /// The letter of the frame of size `size` satisfying every atom.
  letter_t find_letter(const frame_alphabet& ab, unsigned size,
                       const std::vector<std::string>& holds)
  {
    for (letter_t l = 0; l < ab.size(); ++l)
      {
        if (ab.frames[l].size != size)
          continue;
        bool ok = true;
        for (auto& a: holds)
          ok &= atom_holds(ab.frames[l], parse_formula(a), ab.voc);
        if (ok)
          return l;
      }
    FAIL("no such frame");
    return 0;
  }
}

TEST_CASE("look-ahead groups")
{
  auto voc = voc_of({"a", "b", "c", "d"});
  auto g = ahead_groups(parse_formula("G (a < X b) && F (c = c)"), voc);
  CHECK(g == std::vector<unsigned>{0, 0, 1, 2});
  auto h = ahead_groups(parse_formula("(a < d) U (d = X c)"), voc);
  CHECK(h == std::vector<unsigned>{0, 1, 0, 0});
}

TEST_CASE("frame alphabet")
{
  auto voc = voc_of({"y"});
  frame_alphabet ab(voc, 1);
  CHECK(ab.size() == 4);
  for (letter_t l = 0; l < ab.size(); ++l)
    CHECK(ab.letter(ab.frames[l]) == l);
  CHECK_THROWS_AS(frame_alphabet(voc_of({"a", "b", "c"}), 2, 100), resource_exceeded);

  // Two independent groups keep only frames with the first group below.
  auto voc2 = voc_of({"a", "b"});
  frame_alphabet split(voc2, 1, default_max_states, {0, 1});
  frame_alphabet full(voc2, 1);
  // Canonical 2-frames: 3 orders of a times 3 orders of b.
  std::size_t twos = 0;
  for (auto& f: split.frames)
    {
      CHECK(split.canonical(f));
      twos += f.size == 2;
    }
  CHECK(twos == 9);
  CHECK(full.size() == 3 + 75);
}

TEST_CASE("chain automaton on one-variable words")
{
  auto voc = voc_of({"y"});
  frame_alphabet ab(voc, 1);
  auto ca = build_chain_nbw(ab);
  letter_t one = find_letter(ab, 1, {});
  letter_t eq = find_letter(ab, 2, {"y = X y"});
  CHECK_FALSE(lasso_accepts(ca.aut, {one}, {eq}));
  // State count: q0 plus (x, i, y, j, dir, strict) with k = 1.
  CHECK(ca.aut.num_states() == 1 + 4);
}

TEST_CASE("chain automaton detects a bounded ascent")
{
  auto voc = voc_of({"x", "y"});
  frame_alphabet ab(voc, 1);
  auto ca = build_chain_nbw(ab, true);
  letter_t one = find_letter(ab, 1, {"x < y"});
  letter_t up = find_letter(ab, 2, {"x < X x", "X x < y", "y = X y"});
  letter_t down = find_letter(ab, 2, {"X x < x", "y < X x", "y = X y"});
  letter_t free_up = find_letter(ab, 2, {"x < X x", "y < x", "y < X y"});
  CHECK(lasso_accepts(ca.aut, {one}, {up}));
  CHECK(lasso_accepts(ca.aut, {find_letter(ab, 1, {"y < x"})}, {down}));
  // Both values climb: no chain is confined below a bound.
  CHECK_FALSE(lasso_accepts(ca.aut, {find_letter(ab, 1, {"y < x"})}, {free_up}));
  auto fam = chain_corpus::accepting_run_families(ca, {{one}, {up}});
  CHECK((fam & (1u << (static_cast<unsigned>(chain_move::guess) * 2))) != 0);
  auto fam_down = chain_corpus::accepting_run_families(
    ca, {{find_letter(ab, 1, {"y < x"})}, {down}});
  CHECK((fam_down & (1u << (static_cast<unsigned>(chain_move::guess) * 2 + 1))) != 0);
}

TEST_CASE("symbolic NBW skips the growing prefix")
{
  auto voc = voc_of({"y"});
  frame_alphabet ab(voc, 1);
  letter_t one = find_letter(ab, 1, {});
  letter_t lt = find_letter(ab, 2, {"y < X y"});
  letter_t eq = find_letter(ab, 2, {"y = X y"});
  auto s = build_symbolic_nbw(parse_formula("G (y < X y)"), ab);
  CHECK(lasso_accepts(s, {one}, {lt}));
  CHECK_FALSE(lasso_accepts(s, {one}, {eq}));
  CHECK_FALSE(lasso_accepts(s, {}, {lt}));

  auto t = build_symbolic_nbw(formula::tt(), ab);
  std::mt19937 rng(3);
  for (auto& w: chain_corpus::random_lassos(ab, rng, 30))
    CHECK(lasso_accepts(t, w.stem, w.loop));
  CHECK(is_empty(build_symbolic_nbw(formula::ff(), ab)));
}

TEST_CASE("symbolic NBW agrees with symbolic lasso evaluation")
{
  auto voc = voc_of({"a", "b"});
  std::mt19937 rng(14);
  for (unsigned k = 1; k <= 2; ++k)
    {
      frame_alphabet ab(voc, k);
      auto words = chain_corpus::random_lassos(ab, rng, 40);
      for (int it = 0; it < 15; ++it)
        {
          formula f = oracle::random_formula(rng, {"a", "b"}, k, 1 + rng() % 6);
          if (x_length(f) != k)
            f = formula::and_(f, formula::finally(formula::eq({k, "a"}, {k, "a"})));
          auto n = build_symbolic_nbw(f, ab);
          for (auto& w: words)
            {
              // Drop the k growing frames for the evaluator.
              std::vector<frame> stem, loop;
              for (std::size_t i = k; i < w.stem.size(); ++i)
                stem.push_back(ab.frames[w.stem[i]]);
              for (auto l: w.loop)
                loop.push_back(ab.frames[l]);
              if (w.stem.size() < k)
                continue;
              CHECK_MESSAGE(lasso_accepts(n, w.stem, w.loop)
                              == eval_symbolic_lasso(voc, f, stem, loop),
                            to_string(f));
            }
        }
    }
}

TEST_CASE("combined DPW")
{
  auto voc = voc_of({"y"});
  frame_alphabet ab(voc, 1);
  letter_t one = find_letter(ab, 1, {});
  letter_t eq = find_letter(ab, 2, {"y = X y"});
  letter_t lt = find_letter(ab, 2, {"y < X y"});
  auto d = build_combined_dpw(parse_formula("G (y = X y)"), ab);
  CHECK(lasso_accepts(d, {one}, {eq}));
  CHECK_FALSE(lasso_accepts(d, {one}, {lt}));
  auto e = build_combined_dpw(formula::ff(), ab);
  std::mt19937 rng(2);
  for (auto& w: chain_corpus::random_lassos(ab, rng, 30))
    CHECK_FALSE(lasso_accepts(e, w.stem, w.loop));

  // With two variables the bounded ascent is accepted by the symbolic part
  // and removed by the chain part.
  auto voc2 = voc_of({"x", "y"});
  frame_alphabet ab2(voc2, 1);
  letter_t start = find_letter(ab2, 1, {"x < y"});
  letter_t up = find_letter(ab2, 2, {"x < X x", "X x < y", "y = X y"});
  auto phi = parse_formula("G (x < X x) && G (x < y) && G (y = X y)");
  CHECK(lasso_accepts(build_symbolic_nbw(phi, ab2), {start}, {up}));
  CHECK_FALSE(lasso_accepts(build_combined_dpw(phi, ab2), {start}, {up}));
}

TEST_CASE("emptiness game shape")
{
  auto none = build_emptiness_game(zspec("sys { ahead y; }", "G (y = X y)"));
  CHECK(none.gaps.size() == 1);
  for (std::uint32_t v = 0; v < none.vertices.size(); ++v)
    if (none.vertices[v].kind == emptiness_vertex::adam)
      CHECK(none.game.succ[v].size() == 1);

  auto two = build_emptiness_game(zspec("env { blind u, v; } sys { blind s; }",
                                        "G (!(u < v) || (u < s && s < v))"));
  CHECK(two.gaps.size() == 5);
  for (std::uint32_t v = 0; v < two.vertices.size(); ++v)
    if (two.vertices[v].kind == emptiness_vertex::adam)
      CHECK(two.game.succ[v].size() == 5);
}

TEST_CASE("emptiness game edges are exactly compatible successors")
{
  auto spec = zspec("env { blind u, v; } sys { ahead y; blind s; }",
                    "G (y < X y || u = s) && F (s < v)");
  auto eg = build_emptiness_game(spec);
  frame_alphabet ab(eg.voc, eg.k, default_max_states,
                    ahead_groups(spec.winning_condition, eg.voc));
  std::size_t checked = 0;
  for (std::uint32_t v = 0; v < eg.vertices.size(); ++v)
    {
      auto& ev = eg.vertices[v];
      if (ev.kind != emptiness_vertex::eve)
        continue;
      std::set<std::uint32_t> want;
      for (auto& h: successor_frames(ev.f, eg.k, eg.voc))
        if (gap_compatible(eg.gaps[ev.gap].values, h, eg.voc))
          {
            // Find the Adam vertex for (delta(q, h), h).
            state_t q2 = eg.aut.next(ev.q, ab.letter(h));
            for (auto w: eg.game.succ[v])
              if (eg.vertices[w].kind == emptiness_vertex::adam
                  && eg.vertices[w].q == q2 && eg.vertices[w].f == h)
                want.insert(w);
          }
      std::set<std::uint32_t> got(eg.game.succ[v].begin(), eg.game.succ[v].end());
      if (want.empty())
        CHECK(got == std::set<std::uint32_t>{0});
      else
        CHECK(got == want);
      for (auto w: got)
        if (w != 0)
          {
            CHECK(one_step_compatible(ev.f, eg.vertices[w].f));
            CHECK(gap_compatible(eg.gaps[ev.gap].values, eg.vertices[w].f, eg.voc));
          }
      ++checked;
    }
  CHECK(checked > 100);
}

TEST_CASE("dead ends go to the losing sink")
{
  auto eg = build_emptiness_game(zspec("env { blind u, v; } sys { blind s; }", "true"));
  CHECK(eg.vertices[0].kind == emptiness_vertex::sink);
  CHECK(eg.game.priority[0] % 2 == 1);
  CHECK(eg.game.succ[0] == std::vector<std::uint32_t>{0});
}

TEST_CASE("decide_single_sided examples")
{
  CHECK(decide_single_sided(zspec("sys { ahead y; }", "G (y > X y)")).result
        == verdict::realizable);
  CHECK(decide_single_sided(zspec("sys { ahead y; }", "G (y < X y)")).result
        == verdict::realizable);
  CHECK(decide_single_sided(zspec("sys { ahead y1, y2; }",
                                  "G (y1 < X y1) && G (y1 < y2) && G (y2 = X y2)")).result
        == verdict::unrealizable);
  CHECK(decide_single_sided(zspec("sys { ahead y1, y2; }",
                                  "G (X y1 < y1) && G (y2 < y1) && G (y2 = X y2)")).result
        == verdict::unrealizable);
  CHECK(decide_single_sided(zspec("env { blind u, v; } sys { blind s; }",
                                  "G (!(u < v) || (u < s && s < v))")).result
        == verdict::unrealizable);
  CHECK(decide_single_sided(zspec("env { blind u, v; } sys { blind s; }",
                                  "G (!(u = v) || (s = u))")).result
        == verdict::realizable);
  CHECK(decide_single_sided(zspec("sys { ahead y; }", "false")).result
        == verdict::unrealizable);
  CHECK(decide_single_sided(zspec("env { blind u; } sys { blind s; }", "G (u < s)")).result
        == verdict::realizable);
  CHECK(decide_single_sided(zspec("env { blind u; } sys { blind s; }", "F G (s < u) && G F (u < s)"))
          .result == verdict::unrealizable);
}

TEST_CASE("tuple moves give the same winner")
{
  singlesided_options tuple;
  tuple.tuple_moves = true;
  std::vector<game_spec> corpus{
    zspec("sys { ahead y; }", "G (y > X y)"),
    zspec("sys { ahead y1, y2; }", "G (y1 < X y1) && G (y1 < y2) && G (y2 = X y2)"),
    zspec("env { blind u, v; } sys { blind s; }", "G (!(u < v) || (u < s && s < v))"),
    zspec("env { blind u, v; } sys { blind s; }", "G (!(u = v) || (s = u))"),
    zspec("env { blind u; } sys { ahead y; blind s; }", "G (u < s || y < X y) && G F (s = u)"),
    zspec("env { blind u; } sys { blind s; }", "F G (s < u) && G F (u < s)"),
  };
  for (auto& s: corpus)
    CHECK_MESSAGE(decide_single_sided(s).result == decide_single_sided(s, tuple).result,
                  to_string(s.winning_condition));
}

TEST_CASE("cross-solver consistency")
{
  auto both = [](const std::string& decls, const std::string& phi) {
    auto z = decide_single_sided(zspec(decls, phi)).result;
    auto d = decide_completion(parse_spec("domain: dense; " + decls + " spec: " + phi + ";")).result;
    return std::pair(z, d);
  };
  CHECK(both("sys { ahead y; }", "G (y < X y)")
        == std::pair(verdict::realizable, verdict::realizable));
  CHECK(both("sys { ahead y; }", "G (y = X y) && F (y < X y)")
        == std::pair(verdict::unrealizable, verdict::unrealizable));
  CHECK(both("sys { ahead y1, y2; }", "G (y1 < X y1) && G (y1 < y2) && G (y2 = X y2)")
        == std::pair(verdict::unrealizable, verdict::realizable));
}

TEST_CASE("the Z solver refuses dense specs")
{
  parse_options po;
  po.validate = false;
  auto s = parse_spec("domain: dense; sys { ahead y; } spec: G (y < X y);", po);
  CHECK_THROWS_AS(decide_single_sided(s), error);
}
