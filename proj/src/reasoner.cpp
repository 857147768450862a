#include "rbg/reasoner.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "rbg/hl_frontend.hpp"

namespace rbg {

std::string move_to_string(const Move& move) {
  std::string out;
  for (const auto& s : move.steps) {
    if (!out.empty()) out += ' ';
    out += "(" + std::to_string(s.index) + "," + std::to_string(s.vertex) + ")";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Game

Game::Game(Description description)
    : desc_(std::move(description)),
      rules_nfa_(build_nfa(*desc_.rules.root, desc_.rules.action_count())),
      straightness_(rbg::strong_straightness(desc_)),
      pattern_nfas_(static_cast<std::size_t>(desc_.rules.action_count()) + 1),
      pattern_once_(std::make_unique<std::once_flag[]>(static_cast<std::size_t>(desc_.rules.action_count()) + 1)) {}

const RulesNfa& Game::pattern_nfa(int pattern_index) const {
  const Action& a = desc_.rules.action(pattern_index);
  if (a.kind != ActionKind::Pattern) {
    throw Error(ErrorCode::UnknownIndex, "action " + std::to_string(pattern_index) + " is not a pattern");
  }
  const auto slot = static_cast<std::size_t>(pattern_index);
  std::call_once(pattern_once_[slot], [&] {
    pattern_nfas_[slot] = std::make_unique<RulesNfa>(build_nfa(*a.body, desc_.rules.action_count()));
  });
  return *pattern_nfas_[slot];
}

std::int64_t Game::default_cap() const {
  if (straightness_.is_finite()) return straightness_.value();
  if (straightness_.is_bottom()) return 0;
  return kDefaultCap;
}

std::unique_ptr<Game> load_game(std::string_view text, std::string source_name) {
  return std::make_unique<Game>(parse_description_text(text, std::move(source_name)));
}

std::unique_ptr<Game> load_game_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_game(buffer.str(), path);
}

// ---------------------------------------------------------------------------
// Reasoner

Reasoner::Reasoner(const Game& game, ReasonerOptions options)
    : game_(game),
      desc_(game.description()),
      cap_(options.cap >= 0 ? options.cap : game.default_cap()),
      debug_keeper_(options.debug_keeper),
      vertex_count_(static_cast<std::size_t>(desc_.board.vertex_count())),
      flat_capacity_(static_cast<std::size_t>(desc_.rules.action_count()) + 1),
      memo_stamp_(flat_capacity_),
      memo_value_(flat_capacity_) {}

void Reasoner::push_frame() {
  ++depth_;
  const auto d = static_cast<std::size_t>(depth_);
  if (visited_.size() <= d) {
    visited_.resize(d + 1);
    frame_stamp_.resize(d + 1, 0);
  }
  if (visited_[d].empty()) visited_[d].assign(2 * flat_capacity_ * vertex_count_, 0);
  frame_stamp_[d] = ++next_stamp_;
}

void Reasoner::begin(const GameState& state) {
  work_ = state;
  prefix_.clear();
  applied_ = 0;
  depth_ = -1;
  push_frame();
}

bool Reasoner::search(const RulesNfa& nfa, int flat, bool pattern_mode) {
  if (already(flat)) return false;
  if (pattern_mode && nfa.flat_accepting[static_cast<std::size_t>(flat)]) return true;
  SemiState& s = work_.semi;
  const int begin = nfa.flat_edge_begin[static_cast<std::size_t>(flat)];
  const int end = nfa.flat_edge_begin[static_cast<std::size_t>(flat) + 1];
  for (int k = begin; k < end; ++k) {
    const FlatEdge edge = nfa.flat_edges[static_cast<std::size_t>(k)];
    const Action& a = *desc_.rules.by_index[static_cast<std::size_t>(edge.action)];
    switch (a.kind) {
      case ActionKind::Shift: {
        const int from = s.position;
        const int to = desc_.board.step(from, a.target);
        if (to == kNone) break;
        s.position = to;
        const bool stop = search(nfa, edge.target, pattern_mode);
        s.position = from;
        if (stop) return true;
        break;
      }
      case ActionKind::On:
        if (a.pieces[static_cast<std::size_t>(s.pieces[static_cast<std::size_t>(s.position)])] &&
            search(nfa, edge.target, pattern_mode)) {
          return true;
        }
        break;
      case ActionKind::Comparison: {
        auto lhs = eval_arith(a.lhs, s);
        if (!lhs) break;
        auto rhs = eval_arith(a.rhs, s);
        if (rhs && relation_holds(a.op, *lhs, *rhs) && search(nfa, edge.target, pattern_mode)) return true;
        break;
      }
      case ActionKind::Pattern:
        if (pattern_holds(a) == a.positive && search(nfa, edge.target, pattern_mode)) return true;
        break;
      case ActionKind::Off:
      case ActionKind::Assignment: {
        // The same modifier at the same vertex leads to the same successor
        // no matter which automaton state it was read from.
        if (already(edge.target, true)) break;
        const int at = s.position;
        UndoRecord record;
        if (!try_apply(desc_, a, work_, record)) break;
        if (applied_ >= cap_) {
          undo(work_, record);
          throw Error(ErrorCode::StraightnessCapExceeded,
                      "more than " + std::to_string(cap_) + " modifiers without a switch (action " +
                          std::to_string(a.index) + ")",
                      a.span);
        }
        ++applied_;
        if (!pattern_mode) prefix_.push_back({a.index, at});
        push_frame();
        const bool stop = search(nfa, edge.target, pattern_mode);
        pop_frame();
        if (!pattern_mode) prefix_.pop_back();
        --applied_;
        undo(work_, record);
        if (stop) return true;
        break;
      }
      case ActionKind::Switch: {
        if (pattern_mode || already(edge.target, true)) break;
        Move move;
        move.steps.reserve(prefix_.size() + 1);
        move.steps = prefix_;
        move.steps.push_back({a.index, s.position});
        out_->push_back(std::move(move));
        if (first_only_) return true;
        break;
      }
    }
  }
  return false;
}

bool Reasoner::pattern_holds(const Action& pattern) {
  const auto slot = static_cast<std::size_t>(pattern.index);
  const auto vertex = static_cast<std::size_t>(work_.semi.position);
  const std::uint64_t node = frame_stamp_[static_cast<std::size_t>(depth_)];
  auto& stamps = memo_stamp_[slot];
  auto& values = memo_value_[slot];
  if (stamps.empty()) {
    stamps.assign(vertex_count_, 0);
    values.assign(vertex_count_, 0);
  }
  if (stamps[vertex] == node) return values[vertex] != 0;
  const RulesNfa& nfa = game_.pattern_nfa(pattern.index);
  const int saved_rules_index = work_.rules_index;
  push_frame();
  const bool found = search(nfa, 0, true);
  pop_frame();
  work_.rules_index = saved_rules_index;
  stamps[vertex] = node;
  values[vertex] = found ? 1 : 0;
  return found;
}

std::vector<Move> Reasoner::legal_moves(const GameState& state) {
  std::vector<Move> out;
  legal_moves(state, out);
  return out;
}

void Reasoner::legal_moves(const GameState& state, std::vector<Move>& out) {
  out.clear();
  const int start = game_.rules_nfa().flat_for_index(state.rules_index);
  begin(state);
  out_ = &out;
  first_only_ = false;
  search(game_.rules_nfa(), start, false);
  out_ = nullptr;
}

std::optional<Move> Reasoner::first_move(const GameState& state) {
  std::vector<Move> out;
  const int start = game_.rules_nfa().flat_for_index(state.rules_index);
  begin(state);
  out_ = &out;
  first_only_ = true;
  search(game_.rules_nfa(), start, false);
  out_ = nullptr;
  first_only_ = false;
  if (out.empty()) return std::nullopt;
  return std::move(out.front());
}

bool Reasoner::eval_pattern(const Action& pattern, const GameState& state) {
  if (pattern.kind != ActionKind::Pattern) throw std::invalid_argument("not a pattern action");
  begin(state);
  return pattern_holds(pattern) == pattern.positive;
}

void Reasoner::apply_move(GameState& state, const Move& move) const {
  if (move.steps.empty()) throw Error(ErrorCode::IllegalMove, "a move needs at least a switch");
  for (std::size_t i = 0; i < move.steps.size(); ++i) {
    const MoveStep& step = move.steps[i];
    if (step.index <= 0 || step.index > desc_.rules.action_count()) {
      throw Error(ErrorCode::IllegalMove, "step " + std::to_string(i) + " has no action " + std::to_string(step.index));
    }
    const Action& a = desc_.rules.action(step.index);
    const bool last = i + 1 == move.steps.size();
    if (!a.is_modifier() || (a.kind == ActionKind::Switch) != last) {
      throw Error(ErrorCode::IllegalMove, "step " + std::to_string(i) + " (action " + std::to_string(step.index) +
                                              ") is not a modifier in the right place");
    }
    if (step.vertex < 0 || step.vertex >= desc_.board.vertex_count()) {
      throw Error(ErrorCode::IllegalMove, "step " + std::to_string(i) + " names no vertex");
    }
    state.semi.position = step.vertex;
    UndoRecord record;
    if (!try_apply(desc_, a, state, record)) {
      throw Error(ErrorCode::IllegalMove,
                  "action " + std::to_string(step.index) + " is not valid at vertex " +
                      desc_.board.vertices[static_cast<std::size_t>(step.vertex)]);
    }
  }
}

void Reasoner::check_keeper_determinism(const GameState& state) {
  std::set<std::string> seen;
  std::set<std::string> completions;
  std::vector<GameState> stack{state};
  while (!stack.empty()) {
    GameState current = std::move(stack.back());
    stack.pop_back();
    if (!seen.insert(encode_state(current)).second) continue;
    std::vector<Move> moves;
    if (current.semi.player == kKeeper) legal_moves(current, moves);
    if (moves.empty()) {
      completions.insert(encode_state(current));
      if (completions.size() > 1) {
        throw Error(ErrorCode::KeeperNondeterminism, "keeper moves from one state lead to different completions");
      }
      continue;
    }
    for (const auto& m : moves) {
      GameState next = current;
      apply_move(next, m);
      stack.push_back(std::move(next));
    }
  }
}

GameState Reasoner::keeper_completion(GameState state) {
  if (state.semi.player != kKeeper) return state;
  if (debug_keeper_) check_keeper_determinism(state);
  while (state.semi.player == kKeeper) {
    auto move = first_move(state);
    if (!move) break;
    apply_move(state, *move);
  }
  return state;
}

std::vector<std::int64_t> Reasoner::scores(const GameState& state) const {
  return {state.semi.variables.begin(), state.semi.variables.begin() + desc_.player_count()};
}

}  // namespace rbg
