#pragma once

#include <cltl/formula.hh>

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace cltl
{
  using rational = boost::multiprecision::cpp_rational;

  /// Integers, decimals (-3.25) and fractions (7/2).
  rational parse_rational(std::string_view text);
  /// Decimal when the expansion terminates, otherwise p/q.
  std::string to_decimal(const rational& r);

  /// Index view of a game's variables.  Look-ahead variables and blind
  /// variables are numbered separately, both in declaration order.
  class vocabulary
  {
  public:
    vocabulary() = default;
    explicit vocabulary(const game_spec& spec);
    explicit vocabulary(const std::vector<variable>& vars);

    unsigned num_ahead() const { return ahead_.size(); }
    unsigned num_blind() const { return blind_.size(); }
    const variable& ahead(unsigned i) const { return ahead_[i]; }
    const variable& blind(unsigned i) const { return blind_[i]; }
    int ahead_index(std::string_view name) const;
    int blind_index(std::string_view name) const;

    /// Offsets larger than this are indistinguishable to a gap function.
    unsigned gap_ceiling() const { return blind_.empty() ? 0 : blind_.size() - 1; }

    const std::vector<unsigned>& env_ahead() const { return env_ahead_; }
    const std::vector<unsigned>& sys_ahead() const { return sys_ahead_; }
    const std::vector<unsigned>& env_blind() const { return env_blind_; }
    const std::vector<unsigned>& sys_blind() const { return sys_blind_; }

  private:
    std::vector<variable> ahead_, blind_;
    std::vector<unsigned> env_ahead_, sys_ahead_, env_blind_, sys_blind_;
  };

  /// A gap function over a named domain.
  struct gap_function
  {
    std::vector<std::string> vars;
    std::vector<unsigned> values;
    unsigned ceiling = 0;

    unsigned at(std::string_view var) const;
    bool operator==(const gap_function&) const = default;
  };

  /// Capped cumulative offsets: the least value maps to 0 and each next
  /// distinct value adds min(difference, ceiling).  Values must be integral.
  std::vector<unsigned> gap_values(std::span<const rational> vals,
                                   unsigned ceiling);
  std::vector<unsigned> gap_values(std::span<const long long> vals,
                                   unsigned ceiling);
  gap_function make_gap_function(
      const std::vector<std::pair<std::string, long long>>& vals,
      unsigned ceiling);

  /// Every gap vector of length n for the ceiling, in lexicographic order.
  std::vector<std::vector<unsigned>> enumerate_gap_vectors(unsigned n,
                                                           unsigned ceiling);

  /// All gap functions over the environment's blind variables.
  std::vector<gap_function> enumerate_env_gap_functions(const game_spec& spec);

  /// Order type of the look-ahead terms of a window plus one gap vector per
  /// position.  Term (depth d, look-ahead variable v) lives at d*na + v.
  /// Ranks are contiguous from 0.  The empty frame (size 0) is bottom.
  struct frame
  {
    std::uint8_t na = 0, nb = 0;
    std::uint32_t size = 0;
    std::vector<std::uint8_t> rank;   // size*na
    std::vector<std::uint8_t> gaps;   // size*nb

    std::uint8_t rank_of(unsigned depth, unsigned var) const { return rank[depth * na + var]; }
    std::uint8_t gap(unsigned pos, unsigned bvar) const { return gaps[pos * nb + bvar]; }
    /// Number of order classes.
    unsigned classes() const;
    bool is_bottom() const { return size == 0; }

    bool operator==(const frame&) const = default;
  };

  struct frame_hash
  {
    std::size_t operator()(const frame& f) const;
  };

  /// Frame whose last depth lacks the system's look-ahead terms.
  struct partial_frame
  {
    static constexpr std::uint8_t absent = 0xff;

    std::uint8_t na = 0;
    std::uint32_t size = 0;
    std::vector<std::uint8_t> rank;

    bool operator==(const partial_frame&) const = default;
  };

  struct partial_frame_hash
  {
    std::size_t operator()(const partial_frame& f) const;
  };

  frame bottom_frame(const vocabulary& voc);

  /// Renumbers ranks to 0..m-1 keeping their order; `absent` is left alone.
  void normalize_ranks(std::span<std::uint8_t> r);

  /// Every extension of a partial weak order in which the `fill` positions
  /// (initially `absent`) receive ranks.  Each extension appears once.
  std::vector<std::vector<std::uint8_t>>
  extend_orders(const std::vector<std::uint8_t>& base,
                const std::vector<unsigned>& fill);

  /// All frames of a given size (1 <= size).
  std::vector<frame> enumerate_frames(const vocabulary& voc, unsigned size);

  /// Ranks of depths [from, from+count) renumbered from 0.
  std::vector<std::uint8_t> restrict_ranks(const frame& f, unsigned from,
                                           unsigned count);

  /// g may follow f: g grows f by one depth, or both have the same size and
  /// g slides f by one position.  Gap vectors are shifted the same way.
  bool one_step_compatible(const frame& f, const frame& g);

  /// Every g of size min(|f|+1, k+1) with one_step_compatible(f, g).
  std::vector<frame> successor_frames(const frame& f, unsigned k,
                                      const vocabulary& voc);

  /// Truth of a constraint atom in a frame.  Blind atoms read position 0.
  bool atom_holds(const frame& f, const formula& atom, const vocabulary& voc);

  /// A valuation of every variable, indexed by the vocabulary.
  struct valuation
  {
    std::vector<rational> ahead;
    std::vector<rational> blind;

    bool operator==(const valuation&) const = default;
  };

  valuation make_valuation(const vocabulary& voc,
                           const std::map<std::string, rational>& vals);
  std::map<std::string, rational> named(const vocabulary& voc,
                                        const valuation& v);

  /// Frame of a window of consecutive valuations (oldest first).
  frame mu_step(std::span<const valuation> window, const vocabulary& voc);

  /// Frame sequence mu(s)(i) for i >= k of a finite valuation sequence.
  std::vector<frame> frame_sequence(const std::vector<valuation>& seq,
                                    unsigned k, const vocabulary& voc);

  /// Partial frames: env moves.  `pre` relates the current frame to the
  /// partial frame the environment completes, `post` relates it to the frame
  /// the system completes.
  bool partial_compatible_pre(const frame& f, const partial_frame& pf);
  bool partial_compatible_post(const partial_frame& pf, const frame& g);

  /// Environment extensions of f: every partial frame pf of size
  /// min(|f|+1, k+1) with partial_compatible_pre(f, pf).
  std::vector<partial_frame> env_extensions(const frame& f, unsigned k,
                                            const vocabulary& voc);
  /// System completions of pf: every frame g with partial_compatible_post.
  std::vector<frame> sys_completions(const partial_frame& pf,
                                     const vocabulary& voc);

  /// Partial frame of the window history+env (values of the system's newest
  /// look-ahead variables are ignored).
  partial_frame partial_frame_of(std::span<const valuation> history,
                                 const valuation& env_values,
                                 const vocabulary& voc);

  /// Gap compatibility of an environment gap vector (indexed like
  /// voc.env_blind()) with the newest gap vector of g: differences between
  /// environment variables agree.
  bool gap_compatible(std::span<const unsigned> env_gap, const frame& g,
                      const vocabulary& voc);

  /// Concrete values for the system's look-ahead terms at the newest depth
  /// of `target`, given the earlier valuations and the environment's newest
  /// values.  Returns the full newest valuation.
  valuation realize_rational(std::span<const valuation> history,
                             const valuation& env_values, const frame& target,
                             const vocabulary& voc);

  /// Integer values for the system's blind variables whose gap function is
  /// order-equivalent to `target` (a gap vector over all blind variables) and
  /// agrees with it on environment variables.  Throws not_gap_compatible.
  std::vector<long long> realize_blind_int(std::span<const long long> env_vals,
                                           std::span<const unsigned> target,
                                           const vocabulary& voc);

  std::string to_string(const frame& f, const vocabulary& voc);
  std::string to_string(const partial_frame& f, const vocabulary& voc);
}
