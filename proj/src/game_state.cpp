#include "rbg/game_state.hpp"

#include <limits>
#include <stdexcept>

namespace rbg {

SemiState initial_semi_state(const Description& desc) {
  SemiState s;
  s.player = kKeeper;
  s.pieces = desc.initial_pieces;
  s.variables.assign(desc.variables.size(), 0);
  s.position = desc.board.start_vertex;
  s.piece_counts.assign(desc.pieces.size(), 0);
  for (int p : s.pieces) ++s.piece_counts[static_cast<std::size_t>(p)];
  return s;
}

GameState initial_state(const Description& desc) { return GameState{initial_semi_state(desc), 0}; }

std::optional<std::int64_t> eval_arith(const ArithExpr& expr, const SemiState& state) {
  using Wide = __int128;
  constexpr Wide lo = std::numeric_limits<std::int64_t>::min();
  constexpr Wide hi = std::numeric_limits<std::int64_t>::max();
  // Expressions are tiny; a fixed buffer keeps evaluation allocation-free.
  constexpr std::size_t kInline = 32;
  std::int64_t inline_stack[kInline];
  std::vector<std::int64_t> heap;
  std::int64_t* stack = inline_stack;
  if (expr.postfix.size() > kInline) {
    heap.resize(expr.postfix.size());
    stack = heap.data();
  }
  std::size_t top = 0;
  for (const auto& t : expr.postfix) {
    switch (t.kind) {
      case ArithTerm::Kind::Constant:
        stack[top++] = t.value;
        break;
      case ArithTerm::Kind::Variable:
        stack[top++] = state.variables[static_cast<std::size_t>(t.id)];
        break;
      case ArithTerm::Kind::PieceCount:
        stack[top++] = state.piece_counts[static_cast<std::size_t>(t.id)];
        break;
      default: {
        Wide b = stack[--top];
        Wide a = stack[top - 1];
        Wide r = 0;
        switch (t.kind) {
          case ArithTerm::Kind::Add: r = a + b; break;
          case ArithTerm::Kind::Sub: r = a - b; break;
          case ArithTerm::Kind::Mul: r = a * b; break;
          default:
            if (b == 0) return std::nullopt;
            r = a / b;
        }
        if (r < lo || r > hi) return std::nullopt;
        stack[top - 1] = static_cast<std::int64_t>(r);
      }
    }
  }
  if (top != 1) return std::nullopt;
  return stack[0];
}

bool relation_holds(RelOp op, std::int64_t lhs, std::int64_t rhs) {
  switch (op) {
    case RelOp::Less: return lhs < rhs;
    case RelOp::LessEqual: return lhs <= rhs;
    case RelOp::Equal: return lhs == rhs;
    case RelOp::NotEqual: return lhs != rhs;
    case RelOp::Greater: return lhs > rhs;
    case RelOp::GreaterEqual: return lhs >= rhs;
  }
  return false;
}

bool try_apply(const Description& desc, const Action& action, GameState& state, UndoRecord& record) {
  SemiState& s = state.semi;
  record = UndoRecord{s.position, state.rules_index, s.player, kNone, 0, kNone, 0};
  switch (action.kind) {
    case ActionKind::Shift: {
      int next = desc.board.step(s.position, action.target);
      if (next == kNone) return false;
      s.position = next;
      break;
    }
    case ActionKind::On:
      if (!action.pieces[static_cast<std::size_t>(s.pieces[static_cast<std::size_t>(s.position)])]) return false;
      break;
    case ActionKind::Off: {
      int& cell = s.pieces[static_cast<std::size_t>(s.position)];
      record.vertex = s.position;
      record.piece = cell;
      --s.piece_counts[static_cast<std::size_t>(cell)];
      cell = action.target;
      ++s.piece_counts[static_cast<std::size_t>(cell)];
      break;
    }
    case ActionKind::Assignment: {
      auto value = eval_arith(action.lhs, s);
      const auto bound = desc.variables[static_cast<std::size_t>(action.target)].bound;
      if (!value || *value < 0 || *value > bound) return false;
      record.variable = action.target;
      record.value = s.variables[static_cast<std::size_t>(action.target)];
      s.variables[static_cast<std::size_t>(action.target)] = *value;
      break;
    }
    case ActionKind::Comparison: {
      auto lhs = eval_arith(action.lhs, s);
      if (!lhs) return false;
      auto rhs = eval_arith(action.rhs, s);
      if (!rhs || !relation_holds(action.op, *lhs, *rhs)) return false;
      break;
    }
    case ActionKind::Switch:
      s.player = action.target;
      break;
    case ActionKind::Pattern:
      throw std::logic_error("patterns are evaluated by the reasoner");
  }
  state.rules_index = action.index;
  return true;
}

void undo(GameState& state, const UndoRecord& record) {
  SemiState& s = state.semi;
  if (record.vertex != kNone) {
    int& cell = s.pieces[static_cast<std::size_t>(record.vertex)];
    --s.piece_counts[static_cast<std::size_t>(cell)];
    cell = record.piece;
    ++s.piece_counts[static_cast<std::size_t>(cell)];
  }
  if (record.variable != kNone) s.variables[static_cast<std::size_t>(record.variable)] = record.value;
  s.position = record.position;
  s.player = record.player;
  state.rules_index = record.rules_index;
}

std::string encode_state(const GameState& state) {
  const SemiState& s = state.semi;
  std::string out = "p" + std::to_string(s.player) + "|r" + std::to_string(state.rules_index) + "|s" +
                    std::to_string(s.position) + "|P";
  for (int p : s.pieces) out += std::to_string(p) + ",";
  out += "|V";
  for (auto v : s.variables) out += std::to_string(v) + ",";
  return out;
}

std::string dump_state(const Description& desc, const GameState& state) {
  const SemiState& s = state.semi;
  std::string out = "player: " + desc.player_name(s.player) + "  rules index: " + std::to_string(state.rules_index) +
                    "  position: " + desc.board.vertices[static_cast<std::size_t>(s.position)] + "\n";
  for (int v = 0; v < desc.board.vertex_count(); ++v) {
    out += "  " + desc.board.vertices[static_cast<std::size_t>(v)] + " " +
           desc.pieces[static_cast<std::size_t>(s.pieces[static_cast<std::size_t>(v)])] + "\n";
  }
  for (int i = 0; i < desc.variable_count(); ++i) {
    out += "  $" + desc.variables[static_cast<std::size_t>(i)].name + " = " +
           std::to_string(s.variables[static_cast<std::size_t>(i)]) + "\n";
  }
  return out;
}

}  // namespace rbg
