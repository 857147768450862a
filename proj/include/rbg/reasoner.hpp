#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "rbg/analyzer.hpp"
#include "rbg/automaton.hpp"
#include "rbg/description.hpp"
#include "rbg/game_state.hpp"

namespace rbg {

struct MoveStep {
  int index;   // modifier action index
  int vertex;  // position at which it was applied
  friend bool operator==(const MoveStep&, const MoveStep&) = default;
};

// Modifier applications of one move; the last one is a switch.
struct Move {
  std::vector<MoveStep> steps;
  friend bool operator==(const Move&, const Move&) = default;
};

std::string move_to_string(const Move& move);

// A parsed description with its automata. Pattern automata are built on first
// use; everything else is immutable, so one Game can serve many threads.
class Game {
 public:
  explicit Game(Description description);
  Game(const Game&) = delete;
  Game& operator=(const Game&) = delete;

  const Description& description() const { return desc_; }
  const RulesNfa& rules_nfa() const { return rules_nfa_; }
  const RulesNfa& pattern_nfa(int pattern_index) const;
  StraightValue strong_straightness() const { return straightness_; }
  std::int64_t default_cap() const;
  GameState initial_state() const { return rbg::initial_state(desc_); }

 private:
  Description desc_;
  RulesNfa rules_nfa_;
  StraightValue straightness_;
  mutable std::vector<std::unique_ptr<RulesNfa>> pattern_nfas_;
  std::unique_ptr<std::once_flag[]> pattern_once_;
};

// Compiles (HL or LL text), parses and builds the automata.
std::unique_ptr<Game> load_game(std::string_view text, std::string source_name = "<input>");
std::unique_ptr<Game> load_game_file(const std::string& path);

struct ReasonerOptions {
  std::int64_t cap = -1;      // modifier limit per move; negative = the game's default
  bool debug_keeper = false;  // keeper_completion checks that every keeper choice agrees
};

// Move generator: depth-first search over (automaton state, vertex) pairs,
// restarting the visited set whenever a modifier is applied.
// Not thread-safe; use one Reasoner per thread.
class Reasoner {
 public:
  explicit Reasoner(const Game& game, ReasonerOptions options = {});

  std::vector<Move> legal_moves(const GameState& state);
  void legal_moves(const GameState& state, std::vector<Move>& out);
  std::optional<Move> first_move(const GameState& state);

  // Replays the move; throws IllegalMove when a step does not apply.
  void apply_move(GameState& state, const Move& move) const;

  // Applies keeper moves (the first one found) until a regular player is to
  // move or the keeper is stuck.
  GameState keeper_completion(GameState state);

  bool is_terminal(const GameState& state) { return !first_move(state).has_value(); }
  std::vector<std::int64_t> scores(const GameState& state) const;

  // Validity of a pattern action at the state's position.
  bool eval_pattern(const Action& pattern, const GameState& state);

  std::int64_t cap() const { return cap_; }
  const Game& game() const { return game_; }

 private:
  void begin(const GameState& state);
  bool search(const RulesNfa& nfa, int flat, bool pattern_mode);
  bool pattern_holds(const Action& pattern);
  void push_frame();
  void pop_frame() { --depth_; }
  // Marks (flat, position) in the current frame; true if it was marked before.
  // Visited states and modifiers applied from this frame use separate halves
  // of the table: re-entering the frame's own entry state through the same
  // modifier is a longer move, not a duplicate.
  bool already(int flat, bool applied = false) {
    const std::size_t half = applied ? flat_capacity_ * vertex_count_ : 0;
    auto& slot = visited_[static_cast<std::size_t>(depth_)][half + static_cast<std::size_t>(flat) * vertex_count_ +
                                                             static_cast<std::size_t>(work_.semi.position)];
    if (slot == frame_stamp_[static_cast<std::size_t>(depth_)]) return true;
    slot = frame_stamp_[static_cast<std::size_t>(depth_)];
    return false;
  }
  void check_keeper_determinism(const GameState& state);

  const Game& game_;
  const Description& desc_;
  std::int64_t cap_;
  bool debug_keeper_;
  std::size_t vertex_count_;
  std::size_t flat_capacity_;

  GameState work_;
  std::vector<MoveStep> prefix_;
  std::vector<Move>* out_ = nullptr;
  bool first_only_ = false;
  std::int64_t applied_ = 0;

  int depth_ = 0;
  std::uint64_t next_stamp_ = 0;
  std::vector<std::vector<std::uint64_t>> visited_;
  std::vector<std::uint64_t> frame_stamp_;

  std::vector<std::vector<std::uint64_t>> memo_stamp_;  // by pattern index, per vertex
  std::vector<std::vector<char>> memo_value_;
};

}  // namespace rbg
