#pragma once

#include <cltl/formula.hh>
#include <cltl/frames.hh>

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace cltl
{
  using state_t = std::uint32_t;
  using letter_t = std::uint32_t;

  /// Nondeterministic Buchi automaton with state-based acceptance over an
  /// explicit alphabet 0..num_letters-1.
  class nbw
  {
  public:
    nbw() = default;
    explicit nbw(std::uint32_t letters) : num_letters_(letters) {}

    std::uint32_t num_letters() const { return num_letters_; }
    std::size_t num_states() const { return accepting_.size(); }
    std::size_t num_edges() const;

    state_t add_state(bool accepting);
    void add_edge(state_t src, letter_t a, state_t dst);
    void set_initial(state_t s) { initial_.push_back(s); }
    void set_accepting(state_t s, bool acc) { accepting_[s] = acc; }

    const std::vector<state_t>& initial() const { return initial_; }
    bool accepting(state_t s) const { return accepting_[s]; }
    const std::vector<state_t>& succ(state_t s, letter_t a) const
    {
      return succ_[static_cast<std::size_t>(s) * num_letters_ + a];
    }

    /// Sorts and deduplicates successor lists and initial states.
    void finalize();

  private:
    std::uint32_t num_letters_ = 0;
    std::vector<state_t> initial_;
    std::vector<char> accepting_;
    std::vector<std::vector<state_t>> succ_;
  };

  /// Complete deterministic parity automaton, state-based min-even parity.
  /// Letters are first mapped to classes with identical transitions.
  struct dpw
  {
    std::uint32_t num_letters = 0;
    std::vector<std::uint32_t> letter_class;
    std::uint32_t num_classes = 0;
    state_t initial = 0;
    std::vector<state_t> delta;          // state * num_classes + class
    std::vector<unsigned> priority;

    std::size_t num_states() const { return priority.size(); }
    state_t next(state_t q, letter_t a) const
    {
      return delta[static_cast<std::size_t>(q) * num_classes + letter_class[a]];
    }
    unsigned max_priority() const;
    /// Number of distinct priorities in use.
    unsigned priority_count() const;
  };

  inline constexpr std::size_t default_max_states = 5'000'000;

  /// States that are both reachable and able to reach an accepting cycle.
  nbw trim(const nbw& a);
  bool is_empty(const nbw& a);

  /// Letter partition of an NBW by successor signature: class per letter.
  std::vector<std::uint32_t> letter_classes(const nbw& a, std::uint32_t& count);

  /// Safra-Piterman determinization.
  dpw determinize(const nbw& a, std::size_t max_states = default_max_states);

  /// Buchi intersection on state pairs with a 0/1/2 flag.
  nbw product(const nbw& a, const nbw& b,
              std::size_t max_states = default_max_states);

  /// Rank-based complement.
  nbw complement(const nbw& a, std::size_t max_states = default_max_states);

  dpw complement(const dpw& d);

  /// Renumbers priorities to a gap-free range keeping order and parity.
  void normalize_priorities(dpw& d);

  /// DPW reading letters of a larger alphabet through `project`.
  dpw relabel(const dpw& d, std::uint32_t num_letters,
              const std::function<letter_t(letter_t)>& project);

  /// DPW for the intersection of two parity conditions, as a product with a
  /// small deterministic automaton over pairs of priorities.
  dpw intersect(const dpw& a, const dpw& b,
                std::size_t max_states = default_max_states);

  bool lasso_accepts(const nbw& a, const std::vector<letter_t>& stem,
                     const std::vector<letter_t>& loop);
  bool lasso_accepts(const dpw& d, const std::vector<letter_t>& stem,
                     const std::vector<letter_t>& loop);

  /// Atom valuations as letters.  letters[i] is a bitmask over atoms.
  struct atom_alphabet
  {
    std::vector<formula> atoms;
    std::vector<std::uint64_t> letters;

    /// All 2^|atoms| valuations.
    static atom_alphabet full(std::vector<formula> atoms);
  };

  /// Tableau translation (formula must be FP-free).
  nbw ltl_to_nbw(const formula& f, const atom_alphabet& ab);

  /// Letter valuation of a frame on the given atoms.
  std::uint64_t frame_letter(const frame& f, const std::vector<formula>& atoms,
                             const vocabulary& voc);

  /// NBW over an explicit frame alphabet (letter i is frames[i]).
  nbw nbw_from_symbolic_ltl(const formula& f, const std::vector<frame>& frames,
                            const vocabulary& voc);

  void print_dot(std::ostream& os, const nbw& a,
                 const std::function<std::string(letter_t)>& letter_name = {});
  void print_dot(std::ostream& os, const dpw& d,
                 const std::function<std::string(letter_t)>& letter_name = {});
}
