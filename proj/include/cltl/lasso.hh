#pragma once

#include <cltl/formula.hh>
#include <cltl/frames.hh>

#include <functional>
#include <optional>
#include <vector>

namespace cltl
{
  /// Positions of an ultimately periodic word stem . loop^omega.
  struct lasso_shape
  {
    std::size_t stem = 0;
    std::size_t loop = 1;

    std::size_t length() const { return stem + loop; }
    std::size_t next(std::size_t i) const { return i + 1 < length() ? i + 1 : stem; }
    std::size_t advance(std::size_t i, std::size_t n) const;
  };

  using atom_oracle = std::function<bool(const formula& atom, std::size_t pos)>;

  /// Truth of f at every position of the lasso.  FP is evaluated with the
  /// given bound and rejected when there is none.
  std::vector<char> eval_lasso_positions(const formula& f, const lasso_shape& shape,
                                         const atom_oracle& atoms,
                                         std::optional<unsigned> prompt_bound = {});

  bool eval_lasso(const formula& f, const lasso_shape& shape,
                  const atom_oracle& atoms,
                  std::optional<unsigned> prompt_bound = {});

  /// Direct semantics over concrete values.
  bool eval_concrete_lasso(const vocabulary& voc, const formula& f,
                           const std::vector<valuation>& stem,
                           const std::vector<valuation>& loop,
                           std::optional<unsigned> prompt_bound = {});

  /// Symbolic semantics over frames: atoms are read from each position's frame.
  bool eval_symbolic_lasso(const vocabulary& voc, const formula& f,
                           const std::vector<frame>& stem,
                           const std::vector<frame>& loop);

  /// Frame lasso of mu applied to a concrete lasso: positions k.. of the
  /// unrolled valuation word, re-folded with the same stem and loop lengths.
  std::pair<std::vector<frame>, std::vector<frame>>
  symbolic_lasso(const vocabulary& voc, unsigned k,
                 const std::vector<valuation>& stem,
                 const std::vector<valuation>& loop);
}
