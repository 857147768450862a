#include "rbg/bench.hpp"

#include <json.hpp>
#include <random>
#include <stdexcept>
#include <thread>

namespace rbg {

std::string BenchRecord::to_json() const {
  nlohmann::json j = {{"game", game},
                      {"command", command},
                      {"nodes", nodes},
                      {"elapsed_ms", elapsed_ms},
                      {"nodes_per_second", nodes_per_second},
                      {"cap", cap},
                      {"seed", seed}};
  if (command == "perft") {
    j["depth"] = depth;
    j["perft"] = perft;
  }
  if (command == "mc") j["playouts"] = playouts;
  return j.dump();
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

void perft_node(Reasoner& r, const GameState& state, int depth, std::vector<std::vector<Move>>& buffers,
                PerftResult& acc) {
  ++acc.nodes;
  if (depth == 0) {
    ++acc.leaves;
    return;
  }
  auto& moves = buffers[static_cast<std::size_t>(depth)];
  r.legal_moves(state, moves);
  for (const auto& m : moves) {
    GameState child = state;
    r.apply_move(child, m);
    ++acc.moves_applied;
    perft_node(r, r.keeper_completion(std::move(child)), depth - 1, buffers, acc);
  }
}

template <class Work>
void run_workers(int threads, Work work) {
  if (threads <= 1) {
    work(0);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        work(t);
      } catch (...) {
        errors[static_cast<std::size_t>(t)] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

PerftResult perft(const Game& game, const GameState& root, int depth, int threads, ReasonerOptions options) {
  if (depth < 0) throw std::invalid_argument("perft depth must be non-negative");
  threads = std::max(threads, 1);
  PerftResult total;
  if (depth == 0 || threads == 1) {
    Reasoner r(game, options);
    std::vector<std::vector<Move>> buffers(static_cast<std::size_t>(depth) + 1);
    perft_node(r, root, depth, buffers, total);
  } else {
    Reasoner root_reasoner(game, options);
    std::vector<Move> moves = root_reasoner.legal_moves(root);
    std::vector<PerftResult> parts(static_cast<std::size_t>(threads));
    run_workers(threads, [&](int t) {
      Reasoner r(game, options);
      std::vector<std::vector<Move>> buffers(static_cast<std::size_t>(depth));
      for (std::size_t i = static_cast<std::size_t>(t); i < moves.size(); i += static_cast<std::size_t>(threads)) {
        GameState child = root;
        r.apply_move(child, moves[i]);
        ++parts[static_cast<std::size_t>(t)].moves_applied;
        perft_node(r, r.keeper_completion(std::move(child)), depth - 1, buffers, parts[static_cast<std::size_t>(t)]);
      }
    });
    total.nodes = 1;
    for (const auto& p : parts) {
      total.leaves += p.leaves;
      total.nodes += p.nodes;
      total.moves_applied += p.moves_applied;
    }
  }
  if (total.nodes != total.moves_applied + 1) throw std::logic_error("perft bookkeeping mismatch");
  return total;
}

McResult monte_carlo(const Game& game, std::int64_t playouts, std::uint64_t seed, int threads,
                     ReasonerOptions options, std::int64_t max_plies) {
  McResult result;
  result.playouts = std::max<std::int64_t>(playouts, 0);
  const std::size_t players = static_cast<std::size_t>(game.description().player_count());
  result.final_scores.assign(static_cast<std::size_t>(result.playouts), {});
  threads = std::max(1, threads);
  std::vector<std::uint64_t> nodes(static_cast<std::size_t>(threads), 0), plies(static_cast<std::size_t>(threads), 0);

  GameState root;
  {
    Reasoner r(game, options);
    root = r.keeper_completion(game.initial_state());
  }
  run_workers(threads, [&](int t) {
    Reasoner r(game, options);
    std::vector<Move> moves;
    for (std::int64_t i = t; i < result.playouts; i += threads) {
      std::mt19937_64 rng(splitmix64(seed + static_cast<std::uint64_t>(i)));
      GameState state = root;
      ++nodes[static_cast<std::size_t>(t)];
      for (std::int64_t ply = 0; max_plies < 0 || ply < max_plies; ++ply) {
        r.legal_moves(state, moves);
        if (moves.empty()) break;
        const auto pick = uniform_below(rng, moves.size());
        r.apply_move(state, moves[pick]);
        state = r.keeper_completion(std::move(state));
        ++nodes[static_cast<std::size_t>(t)];
        ++plies[static_cast<std::size_t>(t)];
      }
      result.final_scores[static_cast<std::size_t>(i)] = r.scores(state);
    }
  });
  for (int t = 0; t < threads; ++t) {
    result.nodes += nodes[static_cast<std::size_t>(t)];
    result.total_plies += plies[static_cast<std::size_t>(t)];
  }
  result.mean_scores.assign(players, 0.0);
  for (const auto& s : result.final_scores) {
    for (std::size_t p = 0; p < players; ++p) result.mean_scores[p] += static_cast<double>(s[p]);
  }
  if (result.playouts > 0) {
    for (auto& m : result.mean_scores) m /= static_cast<double>(result.playouts);
  }
  return result;
}

}  // namespace rbg
