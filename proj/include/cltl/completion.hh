#pragma once

#include <cltl/formula.hh>
#include <cltl/frames.hh>
#include <cltl/omega.hh>
#include <cltl/parity.hh>

#include <json.hpp>

#include <map>
#include <optional>
#include <unordered_map>

namespace cltl
{
  enum class verdict { realizable, unrealizable };

  const char* verdict_name(verdict v);

  struct solve_options
  {
    std::size_t max_states = default_max_states;
    /// Colour vertices before the window is full with the initial DPW
    /// state's priority instead of the largest one.
    bool pre_window_initial_priority = false;
  };

  /// Vertex data of the completion game.
  struct completion_vertex
  {
    bool sys = false;             // the system moves next
    frame f;
    state_t q = 0;
    partial_frame pf;             // sys vertices only
  };

  struct completion_game
  {
    vocabulary voc;
    unsigned k = 0;
    std::vector<formula> atoms;
    dpw aut;
    parity_game game;
    std::vector<completion_vertex> vertices;
    std::size_t frame_count = 0;  // distinct frames over all vertices

    std::vector<std::string> labels() const;
  };

  /// Builds A_phi over atom valuations and the game on reachable frames.
  completion_game build_completion_game(const game_spec& spec,
                                        const solve_options& opt = {});

  struct completion_result
  {
    verdict result;
    completion_game game;
    parity_solution solution;
  };

  completion_result decide_completion(const game_spec& spec,
                                      const solve_options& opt = {});

  /// Finite-memory system strategy read off a winning solution.  The
  /// result must outlive the transducer.
  class completion_transducer
  {
  public:
    explicit completion_transducer(const completion_result& r);

    /// Feeds the environment's values for the next position and returns the
    /// system's values for it.
    std::map<std::string, rational>
    play_step(const std::map<std::string, rational>& env);

    void reset();
    std::uint32_t state() const { return cur_; }
    std::size_t num_states() const;
    nlohmann::json to_json() const;

  private:
    const completion_result& r_;
    std::uint32_t cur_;
    std::vector<valuation> window_;
  };
}
