#pragma once

#include <cltl/completion.hh>
#include <cltl/formula.hh>
#include <cltl/frames.hh>
#include <cltl/omega.hh>
#include <cltl/parity.hh>

#include <map>
#include <tuple>
#include <unordered_map>

namespace cltl
{
  /// Look-ahead variables linked by atoms of f, as a group id per
  /// look-ahead index.  Groups are numbered from 0 in the order of
  /// their least member.
  std::vector<unsigned> ahead_groups(const formula& f, const vocabulary& voc);

  /// Frames of sizes 1..k+1, the input alphabet of the word automata.
  /// With several groups only canonical frames are kept: every term of a
  /// group lies strictly below every term of a later group, so a letter
  /// is a tuple of per-group frames.
  struct frame_alphabet
  {
    vocabulary voc;
    unsigned k = 0;
    std::vector<unsigned> group;     // per look-ahead variable
    std::vector<frame> frames;
    std::unordered_map<frame, letter_t, frame_hash> index;

    frame_alphabet(const vocabulary& voc, unsigned k,
                   std::size_t max_letters = default_max_states,
                   std::vector<unsigned> groups = {});
    letter_t letter(const frame& f) const;
    bool contains(const frame& f) const { return index.count(f) != 0; }
    bool canonical(const frame& f) const;
    std::uint32_t size() const { return frames.size(); }
  };

  /// Transition kinds of the chain automaton, for coverage accounting.
  enum class chain_move : std::uint8_t
  {
    idle,          // q0 loop
    guess,
    wait,
    x_step,
    y_step,
    both_step,
  };
  inline constexpr unsigned chain_move_count = 6;

  /// (move, forward?) pairs packed as move * 2 + (forward ? 0 : 1).
  using chain_family = unsigned;
  const char* chain_move_name(chain_move m);

  struct chain_automaton
  {
    nbw aut;
    /// For every state other than q0: (x, i, y, j, forward, strict).
    std::vector<std::tuple<unsigned, unsigned, unsigned, unsigned, bool, bool>> states;
    /// Families used by each edge, when requested.
    std::map<std::tuple<state_t, letter_t, state_t>, std::uint32_t> families;
  };

  /// Buchi automaton accepting frame words with an infinite forward or
  /// backward chain.  Chain states are entered on (k+1)-frames only.
  chain_automaton build_chain_nbw(const frame_alphabet& ab,
                                  bool record_families = false);

  /// Buchi automaton for the symbolic models of phi over the frame alphabet:
  /// the first k letters (growing frames) are skipped.
  nbw build_symbolic_nbw(const formula& phi, const frame_alphabet& ab);

  struct combined_stats
  {
    std::size_t symbolic_nbw = 0, symbolic_dpw = 0;
    std::size_t chain_nbw = 0, chain_dpw = 0;
    std::size_t combined = 0;
    bool symbolic_empty = false;
  };

  /// Deterministic parity automaton for symbolic models of phi without an
  /// infinite chain.
  dpw build_combined_dpw(const formula& phi, const frame_alphabet& ab,
                         std::size_t max_states = default_max_states,
                         combined_stats* stats = nullptr);

  struct singlesided_options
  {
    std::size_t max_states = default_max_states;
    /// Let Eve pick one successor frame per gap function up front (the
    /// tree-automaton reading) instead of answering Adam's choice.
    bool tuple_moves = false;
  };

  struct emptiness_vertex
  {
    enum kind_t : std::uint8_t { adam, eve, tuple, sink } kind = adam;
    state_t q = 0;
    frame f{};
    std::uint32_t gap = 0;        // index into the gap-function list
    std::vector<letter_t> choice{}; // tuple vertices
  };

  struct emptiness_game
  {
    vocabulary voc;
    unsigned k = 0;
    std::vector<gap_function> gaps;
    dpw aut;
    combined_stats auto_stats;
    parity_game game;
    std::vector<emptiness_vertex> vertices;
    std::size_t alphabet_size = 0;

    std::vector<std::string> labels() const;
  };

  emptiness_game build_emptiness_game(const game_spec& spec,
                                      const singlesided_options& opt = {});

  struct singlesided_result
  {
    verdict result;
    emptiness_game game;
    parity_solution solution;
  };

  singlesided_result decide_single_sided(const game_spec& spec,
                                         const singlesided_options& opt = {});
}
