#include <json.hpp>

#include "rbg/description.hpp"

namespace rbg {

std::optional<int> BoardGraph::find_vertex(const std::string& name) const {
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i] == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

std::optional<int> BoardGraph::find_direction(const std::string& name) const {
  for (std::size_t i = 0; i < directions.size(); ++i) {
    if (directions[i] == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

std::optional<int> Description::find_piece(const std::string& name) const {
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (pieces[i] == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

std::optional<int> Description::find_variable(const std::string& name) const {
  for (std::size_t i = 0; i < variables.size(); ++i) {
    if (variables[i].name == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

std::string Description::player_name(int player) const {
  if (player == kKeeper) return "keeper";
  return players.at(static_cast<std::size_t>(player)).name;
}

bool structurally_equal(const Action& a, const Action& b) {
  if (a.kind != b.kind || a.index != b.index) return false;
  switch (a.kind) {
    case ActionKind::Shift:
    case ActionKind::Off:
    case ActionKind::Switch:
      return a.target == b.target;
    case ActionKind::On:
      return a.pieces == b.pieces;
    case ActionKind::Assignment:
      return a.target == b.target && a.lhs == b.lhs;
    case ActionKind::Comparison:
      return a.lhs == b.lhs && a.op == b.op && a.rhs == b.rhs;
    case ActionKind::Pattern:
      return a.positive == b.positive && a.body && b.body && structurally_equal(*a.body, *b.body);
  }
  return false;
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == Expr::Kind::Action) return structurally_equal(a.action, b.action);
  if (a.children.size() != b.children.size()) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (!structurally_equal(a.children[i], b.children[i])) return false;
  }
  return true;
}

namespace {

void number_actions(Expr& e, std::vector<const Action*>& table) {
  if (e.kind != Expr::Kind::Action) {
    for (auto& child : e.children) number_actions(child, table);
    return;
  }
  e.action.index = static_cast<int>(table.size());
  table.push_back(&e.action);
  if (e.action.kind == ActionKind::Pattern) number_actions(*e.action.body, table);
}

}  // namespace

IndexedRules index_rules(Expr rules) {
  IndexedRules out;
  out.root = std::make_unique<Expr>(std::move(rules));
  out.by_index.push_back(nullptr);
  number_actions(*out.root, out.by_index);
  return out;
}

const Action& IndexedRules::action(int index) const {
  if (index <= 0 || index >= static_cast<int>(by_index.size())) {
    throw Error(ErrorCode::UnknownIndex, "no action has index " + std::to_string(index));
  }
  return *by_index[static_cast<std::size_t>(index)];
}

// ---------------------------------------------------------------------------
// Printing

namespace {

const char* relop_text(RelOp op) {
  switch (op) {
    case RelOp::Less: return "<";
    case RelOp::LessEqual: return "<=";
    case RelOp::Equal: return "==";
    case RelOp::NotEqual: return "!=";
    case RelOp::Greater: return ">";
    case RelOp::GreaterEqual: return ">=";
  }
  return "?";
}

bool needs_parens(const Expr& parent, const Expr& child) {
  if (child.kind == Expr::Kind::Action || child.kind == Expr::Kind::Star) return false;
  return !(parent.kind == Expr::Kind::Sum && child.kind == Expr::Kind::Concat);
}

}  // namespace

std::string print_arith(const ArithExpr& expr, const Description& desc) {
  struct Part {
    std::string text;
    int prec;
  };
  std::vector<Part> stack;
  for (const auto& t : expr.postfix) {
    switch (t.kind) {
      case ArithTerm::Kind::Constant:
        stack.push_back({std::to_string(t.value), 3});
        break;
      case ArithTerm::Kind::Variable:
        stack.push_back({desc.variables.at(static_cast<std::size_t>(t.id)).name, 3});
        break;
      case ArithTerm::Kind::PieceCount:
        stack.push_back({desc.pieces.at(static_cast<std::size_t>(t.id)), 3});
        break;
      default: {
        int prec = (t.kind == ArithTerm::Kind::Add || t.kind == ArithTerm::Kind::Sub) ? 1 : 2;
        const char* op = t.kind == ArithTerm::Kind::Add   ? " + "
                         : t.kind == ArithTerm::Kind::Sub ? " - "
                         : t.kind == ArithTerm::Kind::Mul ? " * "
                                                          : " / ";
        Part rhs = std::move(stack.back());
        stack.pop_back();
        Part lhs = std::move(stack.back());
        stack.pop_back();
        std::string l = lhs.prec < prec ? "(" + lhs.text + ")" : lhs.text;
        std::string r = rhs.prec <= prec ? "(" + rhs.text + ")" : rhs.text;
        stack.push_back({l + op + r, prec});
      }
    }
  }
  return stack.empty() ? std::string() : stack.back().text;
}

std::string print_action(const Action& a, const Description& desc) {
  switch (a.kind) {
    case ActionKind::Shift:
      return desc.board.directions.at(static_cast<std::size_t>(a.target));
    case ActionKind::On: {
      std::string out = "{";
      bool first = true;
      for (std::size_t p = 0; p < a.pieces.size(); ++p) {
        if (!a.pieces[p]) continue;
        if (!first) out += ", ";
        out += desc.pieces[p];
        first = false;
      }
      return out + "}";
    }
    case ActionKind::Off:
      return "[" + desc.pieces.at(static_cast<std::size_t>(a.target)) + "]";
    case ActionKind::Assignment:
      return "[$" + desc.variables.at(static_cast<std::size_t>(a.target)).name + " = " + print_arith(a.lhs, desc) +
             "]";
    case ActionKind::Comparison:
      return "{$" + print_arith(a.lhs, desc) + " " + relop_text(a.op) + " " + print_arith(a.rhs, desc) + "}";
    case ActionKind::Switch:
      return a.target == kKeeper ? "->>" : "->" + desc.player_name(a.target);
    case ActionKind::Pattern:
      return std::string(a.positive ? "{?" : "{!") + print_rules(*a.body, desc) + "}";
  }
  return "";
}

std::string print_rules(const Expr& e, const Description& desc) {
  auto child_text = [&](const Expr& child) {
    std::string s = print_rules(child, desc);
    return needs_parens(e, child) ? "(" + s + ")" : s;
  };
  switch (e.kind) {
    case Expr::Kind::Action:
      return print_action(e.action, desc);
    case Expr::Kind::Star: {
      const Expr& child = e.children.front();
      std::string s = print_rules(child, desc);
      return (child.kind == Expr::Kind::Action ? s : "(" + s + ")") + "*";
    }
    case Expr::Kind::Concat:
    case Expr::Kind::Sum: {
      std::string out;
      const char* sep = e.kind == Expr::Kind::Sum ? " + " : " ";
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i > 0) out += sep;
        out += child_text(e.children[i]);
      }
      return out;
    }
  }
  return "";
}

std::string print_description(const Description& desc) {
  auto bounded = [](auto begin, auto end) {
    std::string out;
    for (auto it = begin; it != end; ++it) {
      if (!out.empty()) out += ", ";
      out += it->name + "(" + std::to_string(it->bound) + ")";
    }
    return out;
  };
  std::string out = "#players = " + bounded(desc.players.begin(), desc.players.end()) + "\n";
  out += "#pieces = ";
  for (std::size_t i = 0; i < desc.pieces.size(); ++i) out += (i ? ", " : "") + desc.pieces[i];
  out += "\n#variables =";
  std::string vars = bounded(desc.variables.begin() + desc.player_count(), desc.variables.end());
  if (!vars.empty()) out += " " + vars;
  out += "\n#board =\n";
  const BoardGraph& b = desc.board;
  for (int v = 0; v < b.vertex_count(); ++v) {
    out += "  " + b.vertices[static_cast<std::size_t>(v)] + " [" +
           desc.pieces[static_cast<std::size_t>(desc.initial_pieces[static_cast<std::size_t>(v)])] + "] {";
    bool first = true;
    for (int d = 0; d < b.direction_count(); ++d) {
      int to = b.step(v, d);
      if (to == kNone) continue;
      if (!first) out += ", ";
      out += b.directions[static_cast<std::size_t>(d)] + ": " + b.vertices[static_cast<std::size_t>(to)];
      first = false;
    }
    out += "}\n";
  }
  out += "#rules =\n  " + print_rules(*desc.rules.root, desc) + "\n";
  return out;
}

std::string description_to_json(const Description& desc, int indent) {
  using nlohmann::json;
  json j;
  j["players"] = json::array();
  for (const auto& p : desc.players) j["players"].push_back({{"name", p.name}, {"bound", p.bound}});
  j["pieces"] = desc.pieces;
  j["variables"] = json::array();
  for (int i = 0; i < desc.variable_count(); ++i) {
    const auto& v = desc.variables[static_cast<std::size_t>(i)];
    j["variables"].push_back({{"name", v.name}, {"bound", v.bound}, {"player", i < desc.player_count()}});
  }
  const BoardGraph& b = desc.board;
  j["directions"] = b.directions;
  j["start"] = b.vertices[static_cast<std::size_t>(b.start_vertex)];
  j["vertices"] = json::array();
  for (int v = 0; v < b.vertex_count(); ++v) {
    json edges = json::object();
    for (int d = 0; d < b.direction_count(); ++d) {
      if (int to = b.step(v, d); to != kNone) {
        edges[b.directions[static_cast<std::size_t>(d)]] = b.vertices[static_cast<std::size_t>(to)];
      }
    }
    j["vertices"].push_back({{"name", b.vertices[static_cast<std::size_t>(v)]},
                             {"piece", desc.pieces[static_cast<std::size_t>(desc.initial_pieces[static_cast<std::size_t>(v)])]},
                             {"edges", edges}});
  }
  static const char* kinds[] = {"shift", "on", "off", "assignment", "comparison", "switch", "pattern"};
  j["actions"] = json::array();
  for (int i = 1; i <= desc.rules.action_count(); ++i) {
    const Action& a = desc.rules.action(i);
    json entry = {{"index", i},
                  {"kind", kinds[static_cast<int>(a.kind)]},
                  {"modifier", a.is_modifier()},
                  {"text", a.kind == ActionKind::Pattern ? std::string(a.positive ? "{?" : "{!") + "...}"
                                                         : print_action(a, desc)}};
    if (a.span.known()) {
      entry["line"] = a.span.line;
      entry["column"] = a.span.column;
    }
    j["actions"].push_back(entry);
  }
  return j.dump(indent);
}

}  // namespace rbg
