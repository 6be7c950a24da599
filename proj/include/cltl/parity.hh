#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace cltl
{
  enum class player : std::uint8_t { eve, adam };

  inline player opponent(player p) { return p == player::eve ? player::adam : player::eve; }

  /// Min-parity game: a play is won by Eve iff the least priority seen
  /// infinitely often is even.  Every vertex needs a successor.
  struct parity_game
  {
    std::vector<player> owner;
    std::vector<unsigned> priority;
    std::vector<std::vector<std::uint32_t>> succ;
    std::uint32_t initial = 0;

    std::uint32_t add_vertex(player p, unsigned pri);
    void add_edge(std::uint32_t u, std::uint32_t v) { succ[u].push_back(v); }
    std::size_t num_vertices() const { return owner.size(); }
    std::size_t num_edges() const;
  };

  inline constexpr std::int64_t no_move = -1;

  struct parity_solution
  {
    std::vector<player> winner;
    /// Positional strategies, defined on the owner's vertices of its region.
    std::vector<std::int64_t> strategy_eve, strategy_adam;
  };

  /// Zielonka's recursive algorithm.
  parity_solution solve(const parity_game& g);

  /// Checks that both strategies stay in their regions and that every cycle
  /// the strategy permits has the right parity.
  bool verify_strategy(const parity_game& g, const parity_solution& s);

  void print_dot(std::ostream& os, const parity_game& g,
                 const std::vector<std::string>& labels = {});
}
