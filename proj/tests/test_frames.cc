#include "oracles.hh"

#include <cltl/errors.hh>
#include <cltl/frames.hh>

#include <doctest.h>

#include <set>

using namespace cltl;

namespace
{
  vocabulary voc_of(const std::string& decls)
  {
    parse_options po;
    po.validate = false;
    return vocabulary(parse_spec("domain: Z; " + decls + " spec: true;", po));
  }

  frame make_frame(const vocabulary& voc, unsigned size, std::vector<std::uint8_t> rank,
                   std::vector<std::uint8_t> gaps = {})
  {
    frame f;
    f.na = voc.num_ahead();
    f.nb = voc.num_blind();
    f.size = size;
    f.rank = std::move(rank);
    f.gaps = gaps.empty() ? std::vector<std::uint8_t>(size * f.nb, 0) : std::move(gaps);
    return f;
  }

  valuation val(const vocabulary& voc, std::map<std::string, rational> m)
  {
    return make_valuation(voc, m);
  }

  unsigned long fubini(unsigned n)
  {
    // Ordered set partitions, by the recurrence a(n) = sum C(n,i) a(n-i).
    std::vector<unsigned long> a(n + 1, 0);
    a[0] = 1;
    for (unsigned m = 1; m <= n; ++m)
      {
        unsigned long c = 1;
        for (unsigned i = 1; i <= m; ++i)
          {
            c = c * (m - i + 1) / i;
            a[m] += c * a[m - i];
          }
      }
    return a[n];
  }
}

TEST_CASE("gap values")
{
  auto g = make_gap_function({{"a", 5}, {"b", 5}, {"c", 100}}, 2);
  CHECK(g.at("a") == 0);
  CHECK(g.at("b") == 0);
  CHECK(g.at("c") == 2);
  for (unsigned c: {0u, 1u, 5u})
    CHECK(make_gap_function({{"a", 17}}, c).at("a") == 0);
  auto h = make_gap_function({{"a", 1}, {"b", 2}}, 1);
  CHECK(h.at("a") == 0);
  CHECK(h.at("b") == 1);
  std::vector<long long> v{4, -3, 0, 0, 9};
  CHECK(gap_values(std::span<const long long>(v), 3) == std::vector<unsigned>{6, 0, 3, 3, 9});
}

TEST_CASE("gap values reject fractions")
{
  std::vector<rational> v{rational(1, 2), rational(1)};
  CHECK_THROWS(gap_values(std::span<const rational>(v), 2));
}

TEST_CASE("environment gap functions")
{
  auto one = parse_spec("domain: Z; mode: single-sided; env { blind u; } sys { blind s, t; } spec: true;");
  auto g1 = enumerate_env_gap_functions(one);
  REQUIRE(g1.size() == 1);
  CHECK(g1[0].at("u") == 0);

  auto none = parse_spec("domain: Z; mode: single-sided; sys { ahead y; } spec: true;");
  auto g0 = enumerate_env_gap_functions(none);
  REQUIRE(g0.size() == 1);
  CHECK(g0[0].vars.empty());

  auto two = parse_spec("domain: Z; mode: single-sided; env { blind u, v; } sys { blind s; } spec: true;");
  auto g2 = enumerate_env_gap_functions(two);
  std::set<std::vector<unsigned>> got;
  for (auto& g: g2)
    got.insert(g.values);
  CHECK(g2.size() == 5);
  CHECK(got == std::set<std::vector<unsigned>>{{0, 0}, {0, 1}, {0, 2}, {1, 0}, {2, 0}});

  // Brute force over every valuation {u,v} -> [0,3]^2.
  std::set<std::vector<unsigned>> brute;
  for (long long u = 0; u <= 3; ++u)
    for (long long v = 0; v <= 3; ++v)
      brute.insert(make_gap_function({{"u", u}, {"v", v}}, 2).values);
  CHECK(brute == got);
}

TEST_CASE("gap vectors match brute force for larger sets")
{
  for (unsigned n = 1; n <= 4; ++n)
    for (unsigned c = 0; c <= 3; ++c)
      {
        std::set<std::vector<unsigned>> brute;
        std::vector<long long> vals(n, 0);
        long long range = c * n + 1;
        std::function<void(unsigned)> rec = [&](unsigned i) {
          if (i == n)
            {
              brute.insert(gap_values(std::span<const long long>(vals), c));
              return;
            }
          for (long long x = 0; x <= range; ++x)
            {
              vals[i] = x;
              rec(i + 1);
            }
        };
        rec(0);
        auto all = enumerate_gap_vectors(n, c);
        std::set<std::vector<unsigned>> got(all.begin(), all.end());
        CHECK(got.size() == all.size());
        CHECK_MESSAGE(got == brute, "n=" << n << " c=" << c);
      }
}

TEST_CASE("mu_step examples")
{
  auto voc = voc_of("sys { ahead y; }");
  std::vector<valuation> w1{val(voc, {{"y", 3}})};
  auto f1 = mu_step(w1, voc);
  CHECK(f1.size == 1);
  CHECK(f1.rank == std::vector<std::uint8_t>{0});

  std::vector<valuation> w2{val(voc, {{"y", 3}}), val(voc, {{"y", 5}})};
  auto f2 = mu_step(w2, voc);
  CHECK(f2.size == 2);
  CHECK(f2.rank_of(0, 0) < f2.rank_of(1, 0));

  auto voc2 = voc_of("env { ahead x; } sys { ahead y; }");
  std::vector<valuation> w3;
  for (int i = 0; i < 3; ++i)
    w3.push_back(val(voc2, {{"x", 7}, {"y", -i}}));
  auto f3 = mu_step(w3, voc2);
  int x = voc2.ahead_index("x"), y = voc2.ahead_index("y");
  CHECK(f3.rank_of(2, y) < f3.rank_of(1, y));
  CHECK(f3.rank_of(1, y) < f3.rank_of(0, y));
  CHECK(f3.rank_of(0, y) < f3.rank_of(0, x));
  CHECK(f3.rank_of(0, x) == f3.rank_of(1, x));
  CHECK(f3.rank_of(1, x) == f3.rank_of(2, x));
  CHECK(f3.classes() == 4);
}

TEST_CASE("mu_step agrees with sorting the window")
{
  auto voc = voc_of("env { ahead a; blind u, v; } sys { ahead b, c; blind s; }");
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> d(-5, 5);
  for (int it = 0; it < 500; ++it)
    {
      unsigned len = 1 + rng() % 3;
      std::vector<valuation> w;
      std::vector<std::vector<long long>> raw;
      for (unsigned p = 0; p < len; ++p)
        {
          std::map<std::string, rational> m;
          std::vector<long long> r;
          for (auto n: {"a", "b", "c"})
            {
              long long x = d(rng);
              m[n] = x;
              r.push_back(x);
            }
          for (auto n: {"u", "v", "s"})
            m[n] = d(rng);
          w.push_back(val(voc, m));
          raw.push_back(r);
        }
      auto f = mu_step(w, voc);
      auto order = oracle::term_order(raw);
      REQUIRE(f.rank.size() == order.size());
      for (std::size_t i = 0; i < order.size(); ++i)
        CHECK(f.rank[i] == order[i]);
      // Gap vectors per position.
      for (unsigned p = 0; p < len; ++p)
        {
          std::vector<long long> bl;
          for (auto& r: w[p].blind)
            bl.push_back(static_cast<long long>(numerator(r)));
          auto ref = gap_values(std::span<const long long>(bl), voc.gap_ceiling());
          for (unsigned b = 0; b < voc.num_blind(); ++b)
            CHECK(f.gap(p, b) == ref[b]);
        }
    }
}

TEST_CASE("frame counts are ordered set partitions")
{
  auto voc1 = voc_of("sys { ahead y; }");
  CHECK(enumerate_frames(voc1, 1).size() == 1);
  CHECK(enumerate_frames(voc1, 2).size() == 3);
  CHECK(enumerate_frames(voc1, 3).size() == 13);
  auto voc2 = voc_of("env { ahead x; } sys { ahead y; }");
  CHECK(enumerate_frames(voc2, 2).size() == fubini(4));
  CHECK(enumerate_frames(voc2, 3).size() == fubini(6));
  auto voc3 = voc_of("env { blind u, v; } sys { ahead y; blind s; }");
  auto gv = enumerate_gap_vectors(3, 2).size();
  CHECK(enumerate_frames(voc3, 2).size() == fubini(2) * gv * gv);
}

TEST_CASE("one-step compatibility examples")
{
  auto voc = voc_of("sys { ahead y; }");
  frame one = make_frame(voc, 1, {0});
  frame lt = make_frame(voc, 2, {0, 1});
  frame eq = make_frame(voc, 2, {0, 0});
  frame gt = make_frame(voc, 2, {1, 0});
  CHECK(one_step_compatible(one, lt));
  CHECK(one_step_compatible(lt, gt));
  CHECK(one_step_compatible(gt, eq));
  CHECK(one_step_compatible(bottom_frame(voc), one));
  // Sliding a 1-frame shares no terms, so any 1-frame may follow.
  CHECK(one_step_compatible(one, one));
  CHECK_FALSE(one_step_compatible(one, make_frame(voc, 3, {0, 1, 2})));
  CHECK_FALSE(one_step_compatible(lt, one));

  // f asserts X1y < X2y; g asserts X0y = X1y.
  frame f3 = make_frame(voc, 3, {0, 0, 1});
  frame g3 = make_frame(voc, 3, {0, 0, 1});
  CHECK_FALSE(one_step_compatible(f3, g3));
  frame g3ok = make_frame(voc, 3, {0, 1, 1});
  CHECK(one_step_compatible(f3, g3ok));
}

TEST_CASE("successor frames are exactly the compatible frames")
{
  auto voc = voc_of("env { ahead x; blind u; } sys { ahead y; blind s; }");
  for (unsigned k = 1; k <= 2; ++k)
    {
      std::vector<frame> from{bottom_frame(voc)};
      for (unsigned s = 1; s <= k + 1; ++s)
        for (auto& f: enumerate_frames(voc, s))
          from.push_back(f);
      std::mt19937 rng(k);
      std::shuffle(from.begin(), from.end(), rng);
      from.resize(std::min<std::size_t>(from.size(), 25));
      for (auto& f: from)
        {
          unsigned s2 = std::min(f.size + 1, k + 1);
          std::set<std::string> want, got;
          for (auto& g: enumerate_frames(voc, s2))
            if (one_step_compatible(f, g))
              want.insert(to_string(g, voc));
          for (auto& g: successor_frames(f, k, voc))
            {
              CHECK(got.insert(to_string(g, voc)).second);
            }
          CHECK(want == got);
        }
    }
}

TEST_CASE("partial frame compatibility")
{
  auto voc = voc_of("env { ahead x; } sys { ahead y; }");
  int x = voc.ahead_index("x"), y = voc.ahead_index("y");
  // Bottom and any 1-partial-frame.
  for (auto& pf: env_extensions(bottom_frame(voc), 1, voc))
    CHECK(partial_compatible_pre(bottom_frame(voc), pf));
  CHECK(env_extensions(bottom_frame(voc), 1, voc).size() == 1);

  partial_frame pf;
  pf.na = 2;
  pf.size = 1;
  pf.rank.assign(2, partial_frame::absent);
  pf.rank[x] = 0;
  frame above = make_frame(voc, 1, {0, 0});
  above.rank[x] = 0;
  above.rank[y] = 1;
  CHECK(partial_compatible_post(pf, above));
  frame equal = make_frame(voc, 1, {0, 0});
  CHECK(partial_compatible_post(pf, equal));
  partial_frame pf2 = pf;
  pf2.size = 2;
  pf2.rank.assign(4, partial_frame::absent);
  CHECK_FALSE(partial_compatible_post(pf2, above));

  // Completions of pf are exactly the frames restricting to it.
  auto f2s = enumerate_frames(voc, 2);
  for (auto& f: f2s)
    for (auto& e: env_extensions(f, 1, voc))
      {
        CHECK(partial_compatible_pre(f, e));
        for (auto& g: sys_completions(e, voc))
          {
            CHECK(partial_compatible_post(e, g));
            CHECK(one_step_compatible(f, g));
          }
      }
  // Every compatible successor arises from some extension.
  for (auto& f: f2s)
    {
      std::size_t n = 0;
      for (auto& e: env_extensions(f, 1, voc))
        n += sys_completions(e, voc).size();
      CHECK(n == successor_frames(f, 1, voc).size());
    }
}

TEST_CASE("gap compatibility")
{
  std::vector<variable> vars{{"u", owner::env, var_kind::blind},
                             {"s", owner::sys, var_kind::blind},
                             {"v", owner::env, var_kind::blind}};
  vocabulary voc(vars);
  frame f = make_frame(voc, 1, {}, {0, 1, 2});
  std::vector<unsigned> ok{0, 2}, bad{0, 1};
  CHECK(gap_compatible(ok, f, voc));
  CHECK_FALSE(gap_compatible(bad, f, voc));

  vocabulary single(std::vector<variable>{{"u", owner::env, var_kind::blind},
                                          {"s", owner::sys, var_kind::blind}});
  for (auto& g: enumerate_frames(single, 1))
    CHECK(gap_compatible(std::vector<unsigned>{0}, g, single));
}

TEST_CASE("atom_holds")
{
  auto voc = voc_of("env { blind u, v; } sys { ahead y; blind s; }");
  frame f = make_frame(voc, 2, {0, 1}, {0, 0, 1, 0, 0, 0});
  CHECK(atom_holds(f, parse_formula("y < X y"), voc));
  CHECK(atom_holds(f, parse_formula("u = v"), voc));
  CHECK(atom_holds(f, parse_formula("u < s"), voc));
  CHECK_FALSE(atom_holds(f, parse_formula("X y < y"), voc));
  frame g = make_frame(voc, 2, {0, 0}, {0, 0, 1, 0, 0, 0});
  CHECK_FALSE(atom_holds(g, parse_formula("y < X y"), voc));
  CHECK(atom_holds(g, parse_formula("X y = y"), voc));
}

TEST_CASE("realize_rational")
{
  auto voc = voc_of("env { ahead x, z; } sys { ahead y; }");
  int x = voc.ahead_index("x"), z = voc.ahead_index("z"), y = voc.ahead_index("y");
  std::vector<valuation> hist{val(voc, {{"x", 0}, {"z", 1}, {"y", 5}})};
  valuation env = val(voc, {{"x", 0}, {"z", 1}, {"y", 0}});
  frame t = make_frame(voc, 2, std::vector<std::uint8_t>(6, 0));
  auto set = [&](unsigned d, int v, std::uint8_t r) { t.rank[d * 3 + v] = r; };
  set(0, x, 0), set(1, x, 0), set(1, y, 1), set(0, z, 2), set(1, z, 2), set(0, y, 3);
  auto r = realize_rational(hist, env, t, voc);
  CHECK(r.ahead[y] == rational(1, 2));
  CHECK(mu_step(std::vector<valuation>{hist[0], r}, voc) == t);

  set(1, y, 4);
  auto above = realize_rational(hist, env, t, voc);
  CHECK(above.ahead[y] == 6);

  set(1, y, 3);
  hist[0].ahead[y] = 7;
  auto copy = realize_rational(hist, env, t, voc);
  CHECK(copy.ahead[y] == 7);

  // A target contradicting the known values is refused.
  set(0, z, 0);
  try
    {
      realize_rational(hist, env, t, voc);
      FAIL("expected IncompatibleTarget");
    }
  catch (const error& e)
    {
      CHECK(e.kind() == error_kind::incompatible_target);
    }
}

TEST_CASE("realize_rational round trip on random targets")
{
  auto voc = voc_of("env { ahead x; } sys { ahead y, w; }");
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> d(-3, 3);
  int checked = 0;
  for (int it = 0; it < 200; ++it)
    {
      std::vector<valuation> hist;
      for (int p = 0; p < 2; ++p)
        hist.push_back(val(voc, {{"x", d(rng)}, {"y", d(rng)}, {"w", d(rng)}}));
      valuation env = val(voc, {{"x", d(rng)}, {"y", 0}, {"w", 0}});
      auto f = mu_step(hist, voc);
      auto pf = partial_frame_of(hist, env, voc);
      for (auto& g: sys_completions(pf, voc))
        {
          auto r = realize_rational(hist, env, g, voc);
          std::vector<valuation> w{hist[0], hist[1], r};
          CHECK(mu_step(w, voc) == g);
          CHECK(one_step_compatible(f, g));
          ++checked;
        }
    }
  CHECK(checked > 200);
}

TEST_CASE("realize_blind_int")
{
  std::vector<variable> vars{{"u", owner::env, var_kind::blind},
                             {"s", owner::sys, var_kind::blind},
                             {"v", owner::env, var_kind::blind}};
  vocabulary voc(vars);
  std::vector<unsigned> target{0, 1, 2};
  std::vector<long long> em{0, 10};
  auto r = realize_blind_int(em, target, voc);
  CHECK(r == std::vector<long long>{0, 1, 10});
  // The exact target is out of reach (10 - 1 ceils to 2, giving v:3), so
  // the realization matches it up to order and on the u..s offset.
  auto rg = gap_values(std::span<const long long>(r), 2);
  CHECK(rg[0] < rg[1]);
  CHECK(rg[1] < rg[2]);
  CHECK(rg[1] - rg[0] == target[1] - target[0]);

  std::vector<long long> adjacent{0, 1};
  try
    {
      realize_blind_int(adjacent, target, voc);
      FAIL("expected NotGapCompatible");
    }
  catch (const error& e)
    {
      CHECK(e.kind() == error_kind::not_gap_compatible);
    }

  vocabulary two(std::vector<variable>{{"u", owner::env, var_kind::blind},
                                       {"s", owner::sys, var_kind::blind}});
  std::vector<long long> u3{3};
  CHECK(realize_blind_int(u3, std::vector<unsigned>{0, 0}, two)
        == std::vector<long long>{3, 3});
}

TEST_CASE("rational parsing")
{
  CHECK(parse_rational("3.5") == rational(7, 2));
  CHECK(parse_rational("-1/3") == rational(-1, 3));
  CHECK(parse_rational("-2") == rational(-2));
  CHECK(to_decimal(rational(7, 2)) == "3.5");
  CHECK(to_decimal(rational(-1, 3)) == "-1/3");
  CHECK(to_decimal(rational(-2)) == "-2");
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("abc"));
}
