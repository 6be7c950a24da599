#pragma once

#include <cltl/completion.hh>
#include <cltl/formula.hh>
#include <cltl/singlesided.hh>

#include <optional>
#include <string>
#include <vector>

namespace cltl
{
  inline constexpr const char* colour_x = "__pc_x";
  inline constexpr const char* colour_y = "__pc_y";

  /// The colour atom __pc_x = __pc_y.
  formula colour_atom();

  /// Replaces every FP psi, innermost first, by
  /// (p -> (p U (!p U psi))) && (!p -> (!p U (p U psi))).
  formula rel_p(const formula& f, const formula& p);

  struct colored_spec
  {
    game_spec base;
    game_spec spec;                     // CLTL game with condition c(phi)
    std::vector<std::string> color_vars;
    formula p;
  };

  /// c(phi) = (G F p && G F !p) && rel_p(phi), with the colour variables
  /// added as system look-ahead variables.
  colored_spec colorize(const game_spec& spec);

  struct prompt_result
  {
    colored_spec colored;
    singlesided_result solved;
    verdict result;
  };

  prompt_result decide_prompt_single_sided(const game_spec& spec,
                                           const singlesided_options& opt = {});

  /// Block structure of a colouring stem . loop^omega (true = p holds).
  /// spaced is the least block length, bounded the largest, tight the
  /// common length if all blocks agree.  All empty when the loop is
  /// monochrome.
  struct colour_predicates
  {
    std::optional<unsigned> spaced, bounded, tight;

    bool is_spaced(unsigned k) const { return spaced && *spaced >= k; }
    bool is_bounded(unsigned k) const { return bounded && *bounded <= k; }
    bool is_tight(unsigned k) const { return tight && *tight == k; }
  };

  colour_predicates lasso_colour_predicates(const std::vector<bool>& stem,
                                            const std::vector<bool>& loop);
}
