#pragma once

// Sampled (formula, lasso, colouring, k) instances for the colouring
// reduction, evaluated with the bounded-prompt lasso oracle.

#include "oracles.hh"

#include <cltl/prompt.hh>

#include <random>
#include <vector>

namespace prompt_samples
{
  using namespace cltl;

  struct instance
  {
    formula phi;
    unsigned k = 1;
    std::size_t stem = 0, loop = 0;
    std::vector<std::vector<long long>> values;   // per position: y, z
    std::vector<bool> colour;                     // per position: p holds
  };

  /// Prompt formula over y, z with FP only in positive positions.
  inline formula random_prompt_formula(std::mt19937& rng)
  {
    auto psi = [&] { return oracle::random_formula(rng, {"y", "z"}, 1, 1 + rng() % 3); };
    auto fp = [](formula f) { return formula::prompt_finally(std::move(f)); };
    switch (rng() % 7)
      {
      case 0: return formula::globally(fp(psi()));
      case 1: return fp(psi());
      case 2: return formula::globally(formula::implies(psi(), fp(psi())));
      case 3: return formula::or_(fp(psi()), formula::globally(psi()));
      case 4: return formula::globally(fp(fp(psi())));
      case 5: return formula::until(fp(psi()), psi());
      default:
        return formula::and_(formula::globally(formula::or_(psi(), fp(psi()))),
                             formula::finally(psi()));
      }
  }

  /// Alternating blocks with lengths in [lo, hi]; the loop has an even
  /// number of blocks and starts with the colour opposite the stem's last,
  /// so every block of the infinite word is one of the drawn blocks.
  inline void random_colouring(std::mt19937& rng, unsigned lo, unsigned hi,
                               instance& out)
  {
    std::uniform_int_distribution<unsigned> len(lo, hi);
    bool c = rng() % 2;
    std::vector<bool> stem, loop;
    for (unsigned b = rng() % 2; b > 0; --b, c = !c)
      stem.insert(stem.end(), len(rng), c);
    for (unsigned b = 2 * (1 + rng() % 2); b > 0; --b, c = !c)
      loop.insert(loop.end(), len(rng), c);
    out.stem = stem.size();
    out.loop = loop.size();
    out.colour = stem;
    out.colour.insert(out.colour.end(), loop.begin(), loop.end());
  }

  /// A k-spaced instance (blocks at least k long) when spaced is set,
  /// otherwise a k-bounded one (blocks at most k long).
  inline instance random_instance(std::mt19937& rng, bool spaced)
  {
    instance in;
    in.k = 1 + rng() % 3;
    in.phi = random_prompt_formula(rng);
    if (spaced)
      random_colouring(rng, in.k, in.k + 1, in);
    else
      random_colouring(rng, 1, in.k, in);
    std::uniform_int_distribution<long long> val(0, 2);
    in.values.resize(in.stem + in.loop);
    for (auto& v: in.values)
      v = {val(rng), val(rng)};
    return in;
  }

  /// Evaluates f at position 0 with the prompt bound given.
  inline bool holds(const instance& in, const formula& f,
                    std::optional<unsigned> bound = {})
  {
    formula p = colour_atom();
    std::size_t len = in.stem + in.loop;
    auto shift = [&](std::size_t i, unsigned d) {
      for (; d > 0; --d)
        i = i + 1 < len ? i + 1 : in.stem;
      return i;
    };
    auto value = [&](const term& t, std::size_t i) {
      return in.values[shift(i, t.depth)][t.var == "y" ? 0 : 1];
    };
    auto atom = [&](const formula& a, std::size_t i) {
      if (a == p)
        return static_cast<bool>(in.colour[i]);
      auto l = value(a.lhs(), i), r = value(a.rhs(), i);
      return a.relation() == rel::lt ? l < r : l == r;
    };
    return oracle::naive_lasso(in.stem, in.loop, atom, bound).eval(f, 0);
  }

  /// c(phi) built by hand from the definition.
  inline formula coloured(const formula& phi)
  {
    formula p = colour_atom();
    return formula::and_(formula::and_(formula::globally(formula::finally(p)),
                                       formula::globally(formula::finally(formula::not_(p)))),
                         rel_p(phi, p));
  }

  struct tally
  {
    unsigned checked = 0, violations = 0;
  };

  /// Direction one: (sigma, k) |= phi implies the k-spaced colouring
  /// satisfies c(phi).
  inline tally spaced_direction(std::mt19937& rng, unsigned wanted, unsigned max_tries)
  {
    tally t;
    for (unsigned it = 0; it < max_tries && t.checked < wanted; ++it)
      {
        auto in = random_instance(rng, true);
        if (!holds(in, in.phi, in.k))
          continue;
        ++t.checked;
        if (!holds(in, coloured(in.phi)))
          ++t.violations;
      }
    return t;
  }

  /// Direction two: a k-bounded colouring satisfying c(phi) gives
  /// (sigma, 2k) |= phi.
  inline tally bounded_direction(std::mt19937& rng, unsigned wanted, unsigned max_tries)
  {
    tally t;
    for (unsigned it = 0; it < max_tries && t.checked < wanted; ++it)
      {
        auto in = random_instance(rng, false);
        if (!holds(in, coloured(in.phi)))
          continue;
        ++t.checked;
        if (!holds(in, in.phi, 2 * in.k))
          ++t.violations;
      }
    return t;
  }
}
