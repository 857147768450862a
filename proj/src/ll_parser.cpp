#include <algorithm>
#include <charconv>
#include <map>
#include <set>

#include "rbg/description.hpp"
#include "rbg/hl_frontend.hpp"

namespace rbg {

namespace {

using Tokens = std::vector<Token>;

struct Section {
  Token head;
  Tokens body;
};

class Cursor {
 public:
  Cursor(const Tokens& tokens, const Token& owner) : t_(tokens), owner_(owner) {}

  bool at_end() const { return i_ >= t_.size(); }
  bool check(TokenKind k) const { return !at_end() && t_[i_].is(k); }
  const Token& peek() const { return at_end() ? end_token() : t_[i_]; }
  const Token& take() { return t_[i_++]; }
  bool accept(TokenKind k) {
    if (!check(k)) return false;
    ++i_;
    return true;
  }
  const Token& expect(TokenKind k, const std::string& what) {
    if (!check(k)) fail("expected " + what);
    return t_[i_++];
  }
  [[noreturn]] void fail(const std::string& what) const {
    std::string found = at_end() ? "end of section" : "'" + t_[i_].text + "'";
    throw Error(ErrorCode::SyntaxError, what + ", found " + found + " in #" + owner_.text, peek().span);
  }

 private:
  const Token& end_token() const { return t_.empty() ? owner_ : t_.back(); }

  const Tokens& t_;
  const Token& owner_;
  std::size_t i_ = 0;
};

std::int64_t parse_nat(const Token& t) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
  if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
    throw Error(ErrorCode::SyntaxError, "number " + t.text + " does not fit in 64 bits", t.span);
  }
  return value;
}

class Parser {
 public:
  explicit Parser(const TokenStream& ll) : ll_(ll) {}

  Description run() {
    collect_sections();
    for (auto kind : {TokenKind::KwPlayers, TokenKind::KwPieces, TokenKind::KwVariables, TokenKind::KwBoard,
                      TokenKind::KwRules}) {
      if (!sections_.count(kind)) {
        std::string name(token_kind_name(kind));
        throw Error(ErrorCode::MissingSection, "missing #" + name + " section");
      }
    }
    parse_players(sections_.at(TokenKind::KwPlayers));
    parse_pieces(sections_.at(TokenKind::KwPieces));
    parse_variables(sections_.at(TokenKind::KwVariables));
    parse_board(sections_.at(TokenKind::KwBoard));
    Expr rules = parse_rules(sections_.at(TokenKind::KwRules));
    d_.rules = index_rules(std::move(rules));
    finish_edgeless_directions();
    return std::move(d_);
  }

 private:
  void collect_sections() {
    const Tokens& t = ll_.tokens;
    std::size_t i = 0;
    while (i < t.size()) {
      if (!t[i].is(TokenKind::Hash)) {
        throw Error(ErrorCode::SyntaxError, "expected '#' to start a section, found '" + t[i].text + "'", t[i].span);
      }
      if (i + 1 >= t.size() || !is_section_keyword(t[i + 1].kind)) {
        const Token& at = i + 1 < t.size() ? t[i + 1] : t[i];
        throw Error(ErrorCode::SyntaxError, "expected a section name after '#'", at.span);
      }
      if (i + 2 >= t.size() || !t[i + 2].is(TokenKind::Assign)) {
        throw Error(ErrorCode::SyntaxError, "expected '=' after #" + t[i + 1].text, t[i + 1].span);
      }
      Section s{t[i + 1], {}};
      std::size_t j = i + 3;
      while (j < t.size() && !t[j].is(TokenKind::Hash)) s.body.push_back(t[j++]);
      if (sections_.count(s.head.kind)) {
        throw Error(ErrorCode::DuplicateSection, "section #" + s.head.text + " is defined twice", s.head.span);
      }
      sections_.emplace(s.head.kind, std::move(s));
      i = j;
    }
  }

  // Names share one namespace across players, pieces, variables and
  // directions.
  void claim(const Token& name, const std::string& what) {
    auto [it, fresh] = names_.emplace(name.text, what);
    if (!fresh) {
      ErrorCode code = it->second == what ? ErrorCode::SyntaxError : ErrorCode::DisjointnessViolation;
      std::string detail = it->second == what ? what + " '" + name.text + "' is declared twice"
                                              : "'" + name.text + "' is declared both as " + it->second +
                                                    " and as " + what;
      throw Error(code, detail, name.span);
    }
  }

  std::vector<BoundedName> parse_bounded_list(const Section& s, bool allow_empty, const std::string& what) {
    Cursor c(s.body, s.head);
    std::vector<BoundedName> out;
    if (c.at_end() && allow_empty) return out;
    while (true) {
      const Token& name = c.expect(TokenKind::Ident, "a " + what + " name");
      claim(name, what);
      c.expect(TokenKind::LParen, "'(' and a bound after " + name.text);
      std::int64_t bound = parse_nat(c.expect(TokenKind::Nat, "a natural bound"));
      c.expect(TokenKind::RParen, "')'");
      out.push_back({name.text, bound, name.span});
      if (c.accept(TokenKind::Comma)) continue;
      if (!c.at_end()) c.fail("expected ',' or the end of the section");
      return out;
    }
  }

  void parse_players(const Section& s) {
    d_.players = parse_bounded_list(s, false, "player");
    d_.variables = d_.players;
  }

  void parse_variables(const Section& s) {
    auto vars = parse_bounded_list(s, true, "variable");
    d_.variables.insert(d_.variables.end(), vars.begin(), vars.end());
  }

  void parse_pieces(const Section& s) {
    Cursor c(s.body, s.head);
    while (true) {
      const Token& name = c.expect(TokenKind::Ident, "a piece name");
      claim(name, "piece");
      d_.pieces.push_back(name.text);
      if (c.accept(TokenKind::Comma)) continue;
      if (!c.at_end()) c.fail("expected ',' or the end of the section");
      return;
    }
  }

  int piece_of(const Token& name) const {
    if (auto p = d_.find_piece(name.text)) return *p;
    throw Error(ErrorCode::UndeclaredIdentifier, "'" + name.text + "' is not a declared piece", name.span);
  }

  int direction_of(const Token& name) {
    if (auto it = direction_ids_.find(name.text); it != direction_ids_.end()) return it->second;
    claim(name, "direction");
    int id = static_cast<int>(d_.board.directions.size());
    d_.board.directions.push_back(name.text);
    direction_ids_.emplace(name.text, id);
    return id;
  }

  void parse_board(const Section& s) {
    struct RawEdge {
      int direction;
      Token target;
    };
    struct RawNode {
      Token name;
      int piece;
      std::vector<RawEdge> edges;
    };
    std::vector<RawNode> nodes;
    std::map<std::string, int> vertex_ids;
    Cursor c(s.body, s.head);
    if (c.at_end()) c.fail("expected at least one board node");
    while (!c.at_end()) {
      RawNode node{c.expect(TokenKind::Ident, "a vertex name"), 0, {}};
      if (!vertex_ids.emplace(node.name.text, static_cast<int>(nodes.size())).second) {
        throw Error(ErrorCode::DuplicateVertex, "vertex '" + node.name.text + "' is defined twice", node.name.span);
      }
      c.expect(TokenKind::LBracket, "'[' and the initial piece");
      node.piece = piece_of(c.expect(TokenKind::Ident, "a piece name"));
      c.expect(TokenKind::RBracket, "']'");
      c.expect(TokenKind::LBrace, "'{' to open the edge list");
      std::set<int> labels;
      if (!c.accept(TokenKind::RBrace)) {
        while (true) {
          const Token& label = c.expect(TokenKind::Ident, "an edge label");
          int dir = direction_of(label);
          if (!labels.insert(dir).second) {
            throw Error(ErrorCode::DuplicateEdgeLabel,
                        "vertex '" + node.name.text + "' has two '" + label.text + "' edges", label.span);
          }
          c.expect(TokenKind::Colon, "':'");
          node.edges.push_back({dir, c.expect(TokenKind::Ident, "a target vertex")});
          if (c.accept(TokenKind::Comma)) continue;
          c.expect(TokenKind::RBrace, "',' or '}'");
          break;
        }
      }
      nodes.push_back(std::move(node));
    }
    BoardGraph& b = d_.board;
    for (const auto& n : nodes) {
      b.vertices.push_back(n.name.text);
      d_.initial_pieces.push_back(n.piece);
    }
    b.delta.assign(b.vertices.size() * b.directions.size(), kNone);
    for (std::size_t v = 0; v < nodes.size(); ++v) {
      for (const auto& e : nodes[v].edges) {
        auto it = vertex_ids.find(e.target.text);
        if (it == vertex_ids.end()) {
          throw Error(ErrorCode::UndeclaredIdentifier, "'" + e.target.text + "' is not a vertex", e.target.span);
        }
        b.delta[v * b.directions.size() + static_cast<std::size_t>(e.direction)] = it->second;
      }
    }
    b.start_vertex = 0;
    board_directions_ = b.directions.size();
  }

  // Directions first met in the rules have no edges; widen delta for them.
  void finish_edgeless_directions() {
    BoardGraph& b = d_.board;
    std::size_t dirs = b.directions.size();
    if (dirs == board_directions_) return;
    std::vector<int> delta(b.vertices.size() * dirs, kNone);
    for (std::size_t v = 0; v < b.vertices.size(); ++v) {
      std::copy_n(b.delta.begin() + static_cast<std::ptrdiff_t>(v * board_directions_), board_directions_,
                  delta.begin() + static_cast<std::ptrdiff_t>(v * dirs));
    }
    b.delta = std::move(delta);
    for (std::size_t k = board_directions_; k < dirs; ++k) d_.edgeless_directions.push_back(static_cast<int>(k));
  }

  // ---- rules

  Expr parse_rules(const Section& s) {
    Cursor c(s.body, s.head);
    if (c.at_end()) c.fail("expected a rules expression");
    Expr e = parse_sum(c, false);
    if (!c.at_end()) c.fail("expected an action, '+', '*' or the end of the rules");
    return e;
  }

  static bool starts_element(const Cursor& c) {
    switch (c.peek().kind) {
      case TokenKind::Ident:
      case TokenKind::LParen:
      case TokenKind::LBrace:
      case TokenKind::LBraceQuery:
      case TokenKind::LBraceBang:
      case TokenKind::LBraceDollar:
      case TokenKind::LBracket:
      case TokenKind::LBracketDollar:
      case TokenKind::Arrow:
      case TokenKind::DoubleArrow:
        return !c.at_end();
      default:
        return false;
    }
  }

  Expr parse_sum(Cursor& c, bool in_pattern) {
    Expr first = parse_concat(c, in_pattern);
    if (!c.check(TokenKind::Plus)) return first;
    Expr sum;
    sum.kind = Expr::Kind::Sum;
    sum.children.push_back(std::move(first));
    while (c.accept(TokenKind::Plus)) sum.children.push_back(parse_concat(c, in_pattern));
    return sum;
  }

  Expr parse_concat(Cursor& c, bool in_pattern) {
    if (!starts_element(c)) c.fail("expected an action or '('");
    Expr first = parse_element(c, in_pattern);
    if (!starts_element(c)) return first;
    Expr cat;
    cat.kind = Expr::Kind::Concat;
    cat.children.push_back(std::move(first));
    while (starts_element(c)) cat.children.push_back(parse_element(c, in_pattern));
    return cat;
  }

  Expr parse_element(Cursor& c, bool in_pattern) {
    Expr e;
    if (c.accept(TokenKind::LParen)) {
      e = parse_sum(c, in_pattern);
      c.expect(TokenKind::RParen, "')'");
    } else {
      e.kind = Expr::Kind::Action;
      e.action = parse_action(c, in_pattern);
    }
    if (c.accept(TokenKind::Star)) {
      Expr star;
      star.kind = Expr::Kind::Star;
      star.children.push_back(std::move(e));
      return star;
    }
    return e;
  }

  Action parse_action(Cursor& c, bool in_pattern) {
    const Token& t = c.take();
    Action a;
    a.span = t.span;
    switch (t.kind) {
      case TokenKind::Ident: {
        if (names_.count(t.text) && !direction_ids_.count(t.text)) {
          throw Error(ErrorCode::DisjointnessViolation,
                      "'" + t.text + "' is a " + names_.at(t.text) + ", not a direction", t.span);
        }
        a.kind = ActionKind::Shift;
        a.target = direction_of(t);
        break;
      }
      case TokenKind::LBrace: {
        a.kind = ActionKind::On;
        a.pieces.assign(d_.pieces.size(), 0);
        if (!c.accept(TokenKind::RBrace)) {
          while (true) {
            a.pieces[static_cast<std::size_t>(piece_of(c.expect(TokenKind::Ident, "a piece name")))] = 1;
            if (c.accept(TokenKind::Comma)) continue;
            c.expect(TokenKind::RBrace, "',' or '}'");
            break;
          }
        }
        break;
      }
      case TokenKind::LBracket: {
        a.kind = ActionKind::Off;
        a.target = piece_of(c.expect(TokenKind::Ident, "a piece name"));
        c.expect(TokenKind::RBracket, "']'");
        break;
      }
      case TokenKind::LBracketDollar: {
        a.kind = ActionKind::Assignment;
        const Token& var = c.expect(TokenKind::Ident, "a variable name");
        auto id = d_.find_variable(var.text);
        if (!id) throw Error(ErrorCode::UndeclaredIdentifier, "'" + var.text + "' is not a variable", var.span);
        a.target = *id;
        c.expect(TokenKind::Assign, "'='");
        a.lhs = parse_arith(c);
        c.expect(TokenKind::RBracket, "']'");
        break;
      }
      case TokenKind::LBraceDollar: {
        a.kind = ActionKind::Comparison;
        a.lhs = parse_arith(c);
        a.op = parse_relop(c);
        a.rhs = parse_arith(c);
        c.expect(TokenKind::RBrace, "'}'");
        break;
      }
      case TokenKind::Arrow: {
        a.kind = ActionKind::Switch;
        const Token& p = c.expect(TokenKind::Ident, "a player name");
        auto it = std::find_if(d_.players.begin(), d_.players.end(), [&](const auto& b) { return b.name == p.text; });
        if (it == d_.players.end()) {
          throw Error(ErrorCode::UndeclaredIdentifier, "'" + p.text + "' is not a player", p.span);
        }
        a.target = static_cast<int>(it - d_.players.begin());
        break;
      }
      case TokenKind::DoubleArrow:
        a.kind = ActionKind::Switch;
        a.target = kKeeper;
        break;
      case TokenKind::LBraceQuery:
      case TokenKind::LBraceBang: {
        a.kind = ActionKind::Pattern;
        a.positive = t.is(TokenKind::LBraceQuery);
        a.body = parse_sum(c, true);
        c.expect(TokenKind::RBrace, "'}' to close the pattern");
        break;
      }
      default:
        throw Error(ErrorCode::SyntaxError, "expected an action, found '" + t.text + "'", t.span);
    }
    (void)in_pattern;  // switches inside patterns are reported by the analyzer
    return a;
  }

  RelOp parse_relop(Cursor& c) {
    switch (c.peek().kind) {
      case TokenKind::Less: c.take(); return RelOp::Less;
      case TokenKind::LessEqual: c.take(); return RelOp::LessEqual;
      case TokenKind::Equal: c.take(); return RelOp::Equal;
      case TokenKind::NotEqual: c.take(); return RelOp::NotEqual;
      case TokenKind::Greater: c.take(); return RelOp::Greater;
      case TokenKind::GreaterEqual: c.take(); return RelOp::GreaterEqual;
      default: c.fail("expected one of < <= == != > >=");
    }
  }

  ArithExpr parse_arith(Cursor& c) {
    ArithExpr e;
    arith_sum(c, e);
    return e;
  }

  void arith_sum(Cursor& c, ArithExpr& out) {
    arith_product(c, out);
    while (c.check(TokenKind::Plus) || c.check(TokenKind::Minus)) {
      bool plus = c.take().is(TokenKind::Plus);
      arith_product(c, out);
      out.postfix.push_back({plus ? ArithTerm::Kind::Add : ArithTerm::Kind::Sub, 0, 0});
    }
  }

  void arith_product(Cursor& c, ArithExpr& out) {
    arith_atom(c, out);
    while (c.check(TokenKind::Star) || c.check(TokenKind::Slash)) {
      bool mul = c.take().is(TokenKind::Star);
      arith_atom(c, out);
      out.postfix.push_back({mul ? ArithTerm::Kind::Mul : ArithTerm::Kind::Div, 0, 0});
    }
  }

  void arith_atom(Cursor& c, ArithExpr& out) {
    if (c.accept(TokenKind::LParen)) {
      arith_sum(c, out);
      c.expect(TokenKind::RParen, "')'");
      return;
    }
    if (c.check(TokenKind::Nat)) {
      out.postfix.push_back({ArithTerm::Kind::Constant, parse_nat(c.take()), 0});
      return;
    }
    if (c.check(TokenKind::Ident)) {
      const Token& name = c.take();
      if (auto v = d_.find_variable(name.text)) {
        out.postfix.push_back({ArithTerm::Kind::Variable, 0, *v});
      } else if (auto p = d_.find_piece(name.text)) {
        out.postfix.push_back({ArithTerm::Kind::PieceCount, 0, *p});
      } else {
        throw Error(ErrorCode::UndeclaredIdentifier, "'" + name.text + "' is neither a variable nor a piece",
                    name.span);
      }
      return;
    }
    c.fail("expected a number, a variable, a piece or '('");
  }

  const TokenStream& ll_;
  std::map<TokenKind, Section> sections_;
  std::map<std::string, std::string> names_;
  std::map<std::string, int> direction_ids_;
  std::size_t board_directions_ = 0;
  Description d_;
};

}  // namespace

Description parse_description(const TokenStream& ll) { return Parser(ll).run(); }

Description parse_description_text(std::string_view text, std::string source_name) {
  return parse_description(compile_hl_to_ll(tokenize(text, std::move(source_name))));
}

}  // namespace rbg
