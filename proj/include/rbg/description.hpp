#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rbg/lexer.hpp"

namespace rbg {

constexpr int kKeeper = -1;  // the special player reached by `->>`
constexpr int kNone = -1;    // absent edge / unresolved index

// Owning pointer with value semantics (deep copy).
template <class T>
class Box {
 public:
  Box() = default;
  Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}
  Box(const Box& other) : ptr_(other.ptr_ ? std::make_unique<T>(*other.ptr_) : nullptr) {}
  Box(Box&&) noexcept = default;
  Box& operator=(const Box& other) {
    if (this != &other) ptr_ = other.ptr_ ? std::make_unique<T>(*other.ptr_) : nullptr;
    return *this;
  }
  Box& operator=(Box&&) noexcept = default;

  T& operator*() { return *ptr_; }
  const T& operator*() const { return *ptr_; }
  T* operator->() { return ptr_.get(); }
  const T* operator->() const { return ptr_.get(); }
  T* get() { return ptr_.get(); }
  const T* get() const { return ptr_.get(); }
  explicit operator bool() const { return ptr_ != nullptr; }

 private:
  std::unique_ptr<T> ptr_;
};

struct BoundedName {
  std::string name;
  std::int64_t bound = 0;
  SourceSpan span;
};

struct BoardGraph {
  std::vector<std::string> vertices;
  std::vector<std::string> directions;
  std::vector<int> delta;  // vertices.size() x directions.size(), kNone for no edge
  int start_vertex = 0;

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int direction_count() const { return static_cast<int>(directions.size()); }
  int step(int vertex, int direction) const {
    return delta[static_cast<std::size_t>(vertex) * directions.size() + static_cast<std::size_t>(direction)];
  }
  std::optional<int> find_vertex(const std::string& name) const;
  std::optional<int> find_direction(const std::string& name) const;
};

// Postfix (RPN) form of an arithmetic expression.
struct ArithTerm {
  enum class Kind { Constant, Variable, PieceCount, Add, Sub, Mul, Div };
  Kind kind = Kind::Constant;
  std::int64_t value = 0;  // Constant
  int id = 0;              // variable or piece index
  friend bool operator==(const ArithTerm&, const ArithTerm&) = default;
};

struct ArithExpr {
  std::vector<ArithTerm> postfix;
  friend bool operator==(const ArithExpr&, const ArithExpr&) = default;
};

enum class RelOp { Less, LessEqual, Equal, NotEqual, Greater, GreaterEqual };

enum class ActionKind { Shift, On, Off, Assignment, Comparison, Switch, Pattern };

struct Expr;

struct Action {
  ActionKind kind = ActionKind::Shift;
  int index = 0;             // position in the indexed rules, 1-based
  int target = 0;            // direction (Shift), piece (Off), variable (Assignment), player or kKeeper (Switch)
  std::vector<char> pieces;  // On: membership mask over piece indices
  ArithExpr lhs;             // Assignment value, Comparison left side
  ArithExpr rhs;             // Comparison right side
  RelOp op = RelOp::Equal;
  bool positive = true;      // Pattern: `{?` rather than `{!`
  Box<Expr> body;            // Pattern
  SourceSpan span;

  bool is_modifier() const {
    return kind == ActionKind::Off || kind == ActionKind::Assignment || kind == ActionKind::Switch;
  }
};

struct Expr {
  enum class Kind { Action, Concat, Sum, Star };
  Kind kind = Kind::Action;
  Action action;                // Kind::Action
  std::vector<Expr> children;   // Concat/Sum: two or more; Star: exactly one
};

bool structurally_equal(const Action& a, const Action& b);
bool structurally_equal(const Expr& a, const Expr& b);

// Rules with every action occurrence numbered 1..N left to right; a pattern
// is numbered before the actions of its body.
struct IndexedRules {
  std::unique_ptr<Expr> root;
  std::vector<const Action*> by_index;  // by_index[0] is null

  IndexedRules() = default;
  IndexedRules(IndexedRules&&) noexcept = default;
  IndexedRules& operator=(IndexedRules&&) noexcept = default;

  int action_count() const { return static_cast<int>(by_index.size()) - 1; }
  const Action& action(int index) const;  // throws UnknownIndex
};

IndexedRules index_rules(Expr rules);

struct Description {
  std::vector<BoundedName> players;
  std::vector<std::string> pieces;
  // Players first (player i is variable i), then the `#variables` entries.
  std::vector<BoundedName> variables;
  BoardGraph board;
  std::vector<int> initial_pieces;  // per vertex
  IndexedRules rules;
  // Directions used as shifts in the rules that no board edge carries.
  std::vector<int> edgeless_directions;

  int player_count() const { return static_cast<int>(players.size()); }
  int piece_count() const { return static_cast<int>(pieces.size()); }
  int variable_count() const { return static_cast<int>(variables.size()); }
  std::optional<int> find_piece(const std::string& name) const;
  std::optional<int> find_variable(const std::string& name) const;
  std::string player_name(int player) const;  // "keeper" for kKeeper
};

Description parse_description(const TokenStream& ll);

// Parse text that may use HL features: compiles to LL first.
Description parse_description_text(std::string_view text, std::string source_name = "<input>");

std::string print_arith(const ArithExpr& expr, const Description& desc);
std::string print_action(const Action& action, const Description& desc);
std::string print_rules(const Expr& expr, const Description& desc);
// Complete LL description text (round-trips through parse_description).
std::string print_description(const Description& desc);

// Vertices, edges, declarations and the indexed action table.
std::string description_to_json(const Description& desc, int indent = 2);

}  // namespace rbg
