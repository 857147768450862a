#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rbg/reasoner.hpp"

namespace rbg {

// Nodes per second of the interpreter on breakthrough reported for 2014-era
// hardware; printed next to our own throughput for comparison.
constexpr std::int64_t kReferenceInterpreterNodesPerSecond = 5113725;

struct BenchRecord {
  std::string game;
  std::string command;        // "perft" or "mc"
  std::int64_t depth = 0;     // perft depth
  std::int64_t playouts = 0;  // mc playouts
  std::uint64_t perft = 0;    // perft: nodes at exactly `depth`
  std::uint64_t nodes = 0;    // visited game-tree nodes
  double elapsed_ms = 0;
  double nodes_per_second = 0;
  std::int64_t cap = 0;
  std::uint64_t seed = 0;

  std::string to_json() const;  // one line
};

struct PerftResult {
  std::uint64_t leaves = 0;  // nodes at exactly `depth`
  std::uint64_t nodes = 0;   // all nodes visited, root included
  std::uint64_t moves_applied = 0;
};

// Counts keeper completions reachable in exactly `depth` moves from `root`
// (which must already be a keeper completion).
PerftResult perft(const Game& game, const GameState& root, int depth, int threads = 1,
                  ReasonerOptions options = {});

struct McResult {
  std::int64_t playouts = 0;
  std::uint64_t nodes = 0;      // keeper completions visited, roots included
  std::uint64_t total_plies = 0;
  std::vector<double> mean_scores;  // per player
  std::vector<std::vector<std::int64_t>> final_scores;  // per playout
};

// Uniform random playouts: at every node all legal moves are generated and
// one is picked uniformly. Playout i uses its own generator seeded from
// (seed, i), so results do not depend on the thread count.
McResult monte_carlo(const Game& game, std::int64_t playouts, std::uint64_t seed, int threads = 1,
                     ReasonerOptions options = {}, std::int64_t max_plies = -1);

// Uniform integer in [0, n) from a 64-bit generator, by rejection sampling so
// that the result is the same on every platform.
template <class Engine>
std::uint64_t uniform_below(Engine& engine, std::uint64_t n) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x;
  do {
    x = engine();
  } while (x >= limit);
  return x % n;
}

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace rbg
