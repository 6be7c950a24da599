#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace cltl
{
  /// Strongly connected components of the graph on 0..n-1; returns the
  /// component of every vertex (reverse topological numbering).
  std::vector<std::uint32_t> tarjan_scc(
      std::size_t n,
      const std::function<std::vector<std::uint32_t>(std::uint32_t)>& succ,
      std::uint32_t& count);
}
