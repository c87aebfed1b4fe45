#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pdp/generators.hpp"
#include "pdp/instance.hpp"

namespace pdp {

struct CorpusEntry {
  std::string name;
  Instance instance;
};

/// Grid with k random distinct terminal cells.
inline Instance random_grid(int rows, int cols, int k, std::uint64_t seed) {
  detail::Draw draw(seed);
  std::vector<GridCell> cells;
  for (int r = 1; r <= rows; ++r)
    for (int c = 1; c <= cols; ++c) cells.push_back({r, c});
  draw.shuffle(cells);
  std::vector<std::pair<GridCell, GridCell>> pairs;
  for (int i = 0; i < k; ++i) pairs.push_back({cells[static_cast<std::size_t>(2 * i)], cells[static_cast<std::size_t>(2 * i + 1)]});
  return gen_grid(rows, cols, pairs);
}

/// The shipped benchmark corpus: grids up to 5x5 and random plane graphs
/// with at most 14 vertices, k from 1 to 3. Deterministic.
inline std::vector<CorpusEntry> standard_corpus() {
  std::vector<CorpusEntry> out;
  for (int rows = 2; rows <= 5; ++rows) {
    for (int cols = rows; cols <= 5; ++cols) {
      for (int k = 1; k <= 3; ++k) {
        if (2 * k > rows * cols) continue;
        for (std::uint64_t seed = 0; seed < 6; ++seed) {
          const std::uint64_t mixed = seed * 1000 + static_cast<std::uint64_t>(rows * 100 + cols * 10 + k);
          out.push_back({"grid_" + std::to_string(rows) + "x" + std::to_string(cols) + "_k" + std::to_string(k) + "_s" + std::to_string(seed),
                         random_grid(rows, cols, k, mixed)});
        }
      }
    }
  }
  for (int n = 6; n <= 14; ++n) {
    for (int k = 1; k <= 3; ++k) {
      if (n < 2 * k + 2) continue;
      for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const std::uint64_t mixed = seed * 1000 + static_cast<std::uint64_t>(n * 10 + k);
        out.push_back({"rand_n" + std::to_string(n) + "_k" + std::to_string(k) + "_s" + std::to_string(seed),
                       gen_random_planar(n, k, mixed)});
      }
    }
  }
  return out;
}

}  // namespace pdp
