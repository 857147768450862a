#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rbg/description.hpp"

namespace rbg {

struct SemiState {
  int player = kKeeper;
  std::vector<int> pieces;                // per vertex
  std::vector<std::int64_t> variables;    // per variable
  int position = 0;
  std::vector<int> piece_counts;          // per piece

  friend bool operator==(const SemiState&, const SemiState&) = default;
};

struct GameState {
  SemiState semi;
  int rules_index = 0;

  friend bool operator==(const GameState&, const GameState&) = default;
};

SemiState initial_semi_state(const Description& desc);
GameState initial_state(const Description& desc);

// Empty on division by zero or when a value leaves the 64-bit range.
std::optional<std::int64_t> eval_arith(const ArithExpr& expr, const SemiState& state);

bool relation_holds(RelOp op, std::int64_t lhs, std::int64_t rhs);

// Store-old record of one action application.
struct UndoRecord {
  int position = 0;
  int rules_index = 0;
  int player = kKeeper;
  int vertex = kNone;      // set when a piece was replaced
  int piece = 0;
  int variable = kNone;    // set when a variable was assigned
  std::int64_t value = 0;
};

// Applies every kind of action except patterns (those need the reasoner and
// yield std::logic_error here). On failure the state is left untouched.
bool try_apply(const Description& desc, const Action& action, GameState& state, UndoRecord& undo);

void undo(GameState& state, const UndoRecord& record);

// Injective text encoding used to compare states across implementations.
std::string encode_state(const GameState& state);

// Board grid (by vertex) plus variable table, for debugging.
std::string dump_state(const Description& desc, const GameState& state);

}  // namespace rbg
