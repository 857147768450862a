// Command-line front end: perft, flat Monte Carlo, HL->LL compilation,
// validation and simulation over .rbg descriptions.

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "rbg/analyzer.hpp"
#include "rbg/bench.hpp"
#include "rbg/hl_frontend.hpp"
#include "rbg/reasoner.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitRuntime = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

bool is_runtime_error(rbg::ErrorCode code) {
  return code == rbg::ErrorCode::StraightnessCapExceeded || code == rbg::ErrorCode::IllegalMove ||
         code == rbg::ErrorCode::KeeperNondeterminism || code == rbg::ErrorCode::UnknownIndex;
}

std::string game_name(const std::string& path) { return std::filesystem::path(path).stem().string(); }

// Loads and validates; ERROR diagnostics abort with the input exit code.
std::unique_ptr<rbg::Game> load_checked(const std::string& path) {
  auto game = rbg::load_game(read_file(path), path);
  auto diagnostics = rbg::validate(game->description());
  if (rbg::has_errors(diagnostics)) {
    for (const auto& d : diagnostics) {
      if (d.level == rbg::Level::Error) std::cerr << path << ": " << d.format() << "\n";
    }
    throw InputError("validation failed");
  }
  return game;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

std::string with_commas(std::uint64_t n) {
  std::string digits = std::to_string(n), out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i > 0 && (digits.size() - i) % 3 == 0) out += ',';
    out += digits[i];
  }
  return out;
}

struct Options {
  std::string file;
  int depth = 1;
  int threads = 1;
  bool json = false;
  std::int64_t playouts = 0;
  std::uint64_t seed = 0;
  std::int64_t max_plies = 200;
  std::int64_t cap = -1;
  bool debug_keeper = false;
  bool dump_json = false;
  bool dump_nfa = false;
  std::int64_t sample_playouts = 0;
};

rbg::ReasonerOptions reasoner_options(const Options& o) {
  rbg::ReasonerOptions r;
  r.cap = o.cap;
  r.debug_keeper = o.debug_keeper;
  return r;
}

int cmd_perft(const Options& o) {
  auto game = load_checked(o.file);
  rbg::Reasoner reasoner(*game, reasoner_options(o));
  auto start = std::chrono::steady_clock::now();
  auto root = reasoner.keeper_completion(game->initial_state());
  auto result = rbg::perft(*game, root, o.depth, o.threads, reasoner_options(o));
  rbg::BenchRecord rec;
  rec.game = game_name(o.file);
  rec.command = "perft";
  rec.depth = o.depth;
  rec.perft = result.leaves;
  rec.nodes = result.nodes;
  rec.elapsed_ms = elapsed_ms(start);
  rec.nodes_per_second = rec.elapsed_ms > 0 ? static_cast<double>(rec.nodes) / (rec.elapsed_ms / 1000.0) : 0.0;
  rec.cap = reasoner.cap();
  if (o.json) {
    std::cout << rec.to_json() << "\n";
    return 0;
  }
  std::printf("perft(%lld) = %llu nodes\n", static_cast<long long>(rec.depth),
              static_cast<unsigned long long>(rec.perft));
  std::printf("game       %s\n", rec.game.c_str());
  std::printf("visited    %s nodes\n", with_commas(rec.nodes).c_str());
  std::printf("time       %.1f ms\n", rec.elapsed_ms);
  std::printf("speed      %s nodes/s (reference interpreter, 2014 hardware: %s nodes/s)\n",
              with_commas(static_cast<std::uint64_t>(rec.nodes_per_second)).c_str(),
              with_commas(rbg::kReferenceInterpreterNodesPerSecond).c_str());
  std::printf("cap        %lld\n", static_cast<long long>(rec.cap));
  return 0;
}

int cmd_mc(const Options& o) {
  auto game = load_checked(o.file);
  auto start = std::chrono::steady_clock::now();
  auto result = rbg::monte_carlo(*game, o.playouts, o.seed, o.threads, reasoner_options(o));
  rbg::BenchRecord rec;
  rec.game = game_name(o.file);
  rec.command = "mc";
  rec.playouts = result.playouts;
  rec.nodes = result.nodes;
  rec.elapsed_ms = elapsed_ms(start);
  rec.nodes_per_second = rec.elapsed_ms > 0 ? static_cast<double>(rec.nodes) / (rec.elapsed_ms / 1000.0) : 0.0;
  rec.cap = rbg::Reasoner(*game, reasoner_options(o)).cap();
  rec.seed = o.seed;
  const auto& desc = game->description();
  if (o.json) {
    std::cout << rec.to_json() << "\n";
    return 0;
  }
  std::printf("game       %s\n", rec.game.c_str());
  std::printf("playouts   %lld (seed %llu)\n", static_cast<long long>(rec.playouts),
              static_cast<unsigned long long>(rec.seed));
  std::printf("visited    %s nodes, %s plies\n", with_commas(rec.nodes).c_str(),
              with_commas(result.total_plies).c_str());
  std::printf("time       %.1f ms\n", rec.elapsed_ms);
  std::printf("speed      %s nodes/s (reference interpreter, 2014 hardware: %s nodes/s on perft)\n",
              with_commas(static_cast<std::uint64_t>(rec.nodes_per_second)).c_str(),
              with_commas(rbg::kReferenceInterpreterNodesPerSecond).c_str());
  for (int p = 0; p < desc.player_count(); ++p) {
    std::printf("score      %-12s mean %.3f\n", desc.players[static_cast<std::size_t>(p)].name.c_str(),
                result.playouts > 0 ? result.mean_scores[static_cast<std::size_t>(p)] : 0.0);
  }
  return 0;
}

int cmd_compile(const Options& o) {
  std::cout << rbg::compile_hl_text(read_file(o.file));
  return 0;
}

// Largest number of modifiers before the switch over sampled moves. Only a
// lower bound on the real straightness.
std::int64_t sample_straightness(const rbg::Game& game, const Options& o) {
  rbg::Reasoner r(game, reasoner_options(o));
  std::int64_t best = 0;
  for (std::int64_t i = 0; i < o.sample_playouts; ++i) {
    std::mt19937_64 rng(rbg::splitmix64(o.seed + static_cast<std::uint64_t>(i)));
    auto state = game.initial_state();
    for (std::int64_t ply = 0; ply < o.max_plies; ++ply) {
      auto moves = r.legal_moves(state);
      if (moves.empty()) break;
      for (const auto& m : moves) best = std::max<std::int64_t>(best, static_cast<std::int64_t>(m.steps.size()) - 1);
      r.apply_move(state, moves[rbg::uniform_below(rng, moves.size())]);
    }
  }
  return best;
}

int cmd_validate(const Options& o) {
  auto game = rbg::load_game(read_file(o.file), o.file);
  auto diagnostics = rbg::validate(game->description());
  for (const auto& d : diagnostics) std::cout << d.format() << "\n";
  if (rbg::has_errors(diagnostics)) return kExitInput;
  if (o.dump_json) std::cout << rbg::description_to_json(game->description()) << "\n";
  if (o.dump_nfa) std::cout << rbg::nfa_to_dot(game->rules_nfa(), &game->description());
  if (o.debug_keeper) {
    rbg::ReasonerOptions ro = reasoner_options(o);
    ro.debug_keeper = true;
    rbg::Reasoner r(*game, ro);
    // Walk a few random plies, checking every keeper completion on the way.
    std::mt19937_64 rng(rbg::splitmix64(o.seed));
    auto state = r.keeper_completion(game->initial_state());
    std::int64_t plies = 0;
    for (; plies < o.max_plies; ++plies) {
      auto moves = r.legal_moves(state);
      if (moves.empty()) break;
      r.apply_move(state, moves[rbg::uniform_below(rng, moves.size())]);
      state = r.keeper_completion(std::move(state));
    }
    std::cout << "INFO KeeperDeterminism: keeper completions agreed along " << plies << " plies\n";
  }
  if (o.sample_playouts > 0) {
    std::cout << "INFO SampledStraightness: " << sample_straightness(*game, o) << " (lower bound from "
              << o.sample_playouts << " playouts)\n";
  }
  return 0;
}

int cmd_simulate(const Options& o) {
  auto game = load_checked(o.file);
  const auto& desc = game->description();
  rbg::Reasoner r(*game, reasoner_options(o));
  std::mt19937_64 rng(rbg::splitmix64(o.seed));
  auto state = r.keeper_completion(game->initial_state());
  std::cout << rbg::dump_state(desc, state);
  std::int64_t ply = 0;
  for (; ply < o.max_plies; ++ply) {
    auto moves = r.legal_moves(state);
    if (moves.empty()) break;
    const auto& move = moves[rbg::uniform_below(rng, moves.size())];
    std::cout << "ply " << ply + 1 << ": " << desc.player_name(state.semi.player) << " plays";
    for (const auto& s : move.steps) {
      std::cout << " (" << s.index << "," << desc.board.vertices[static_cast<std::size_t>(s.vertex)] << ")";
    }
    std::cout << "  [" << moves.size() << " legal]\n";
    r.apply_move(state, move);
    state = r.keeper_completion(std::move(state));
    std::cout << rbg::dump_state(desc, state);
  }
  std::cout << (ply < o.max_plies ? "terminal" : "stopped") << " after " << ply << " plies; scores:";
  auto scores = r.scores(state);
  for (int p = 0; p < desc.player_count(); ++p) {
    std::cout << " " << desc.players[static_cast<std::size_t>(p)].name << "=" << scores[static_cast<std::size_t>(p)];
  }
  std::cout << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regular Boardgames toolchain"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--cap", o.cap, "Maximum modifiers per move (default: strong straightness, else 1024)")
      ->envname("RBG_CAP");
  app.fallthrough();

  auto* perft = app.add_subcommand("perft", "Count game-tree nodes to a fixed depth");
  perft->add_option("file", o.file, "Game description")->required();
  perft->add_option("--depth", o.depth, "Depth in moves")->required()->check(CLI::NonNegativeNumber);
  perft->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
  perft->add_flag("--json", o.json, "Print one JSON record");

  auto* mc = app.add_subcommand("mc", "Flat Monte Carlo playouts");
  mc->add_option("file", o.file, "Game description")->required();
  mc->add_option("--playouts", o.playouts, "Number of playouts")->required()->check(CLI::NonNegativeNumber);
  mc->add_option("--seed", o.seed, "Random seed")->required();
  mc->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
  mc->add_flag("--json", o.json, "Print one JSON record");

  auto* compile = app.add_subcommand("compile", "Print the canonical LL form of a description");
  compile->add_option("file", o.file, "Game description")->required();

  auto* validate = app.add_subcommand("validate", "Static checks and diagnostics");
  validate->add_option("file", o.file, "Game description")->required();
  validate->add_flag("--debug-keeper", o.debug_keeper, "Check keeper determinism along a random playout");
  validate->add_flag("--dump-json", o.dump_json, "Print the parsed description as JSON");
  validate->add_flag("--dump-nfa", o.dump_nfa, "Print the rules automaton in DOT format");
  validate->add_option("--sample-straightness", o.sample_playouts,
                       "Estimate straightness from this many random playouts");
  validate->add_option("--seed", o.seed, "Random seed for sampling");
  validate->add_option("--max-plies", o.max_plies, "Playout length limit for sampling");

  auto* simulate = app.add_subcommand("simulate", "Play one random game and print it");
  simulate->add_option("file", o.file, "Game description")->required();
  simulate->add_option("--seed", o.seed, "Random seed")->required();
  simulate->add_option("--max-plies", o.max_plies, "Stop after this many plies")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*perft) return cmd_perft(o);
    if (*mc) return cmd_mc(o);
    if (*compile) return cmd_compile(o);
    if (*validate) return cmd_validate(o);
    if (*simulate) return cmd_simulate(o);
  } catch (const rbg::Error& e) {
    std::cerr << o.file << ": " << e.what() << "\n";
    return is_runtime_error(e.code()) ? kExitRuntime : kExitInput;
  } catch (const InputError& e) {
    std::cerr << e.what() << "\n";
    return kExitInput;
  }
  return kExitUsage;
}
