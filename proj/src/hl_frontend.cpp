#include "rbg/hl_frontend.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <utility>

namespace rbg {

namespace {

using Tokens = std::vector<Token>;

Token make_token(TokenKind kind, std::string text, SourceSpan span = {}) {
  return Token{kind, std::move(text), span};
}

[[noreturn]] void syntax_error(const std::string& what, const Token* at) {
  throw Error(ErrorCode::SyntaxError, what, at ? std::optional<SourceSpan>(at->span) : std::nullopt);
}

// One `#...` item of a description.
struct Item {
  Token hash;
  Token head;               // section keyword or macro name
  bool is_macro = false;
  MacroDef macro;           // when is_macro
  Tokens body;              // section content (when !is_macro)
};

std::vector<Item> split_items(const Tokens& tokens) {
  std::vector<Item> items;
  std::size_t i = 0;
  auto body_end = [&](std::size_t from) {
    std::size_t j = from;
    while (j < tokens.size() && !tokens[j].is(TokenKind::Hash)) ++j;
    return j;
  };
  while (i < tokens.size()) {
    if (!tokens[i].is(TokenKind::Hash)) syntax_error("expected '#' to start a section or macro", &tokens[i]);
    if (i + 1 >= tokens.size()) syntax_error("'#' at end of input", &tokens[i]);
    Item item;
    item.hash = tokens[i];
    item.head = tokens[i + 1];
    std::size_t j = i + 2;
    if (is_section_keyword(item.head.kind)) {
      if (j >= tokens.size() || !tokens[j].is(TokenKind::Assign)) {
        syntax_error("expected '=' after #" + item.head.text, &item.head);
      }
      std::size_t end = body_end(j + 1);
      item.body.assign(tokens.begin() + static_cast<std::ptrdiff_t>(j + 1),
                       tokens.begin() + static_cast<std::ptrdiff_t>(end));
      i = end;
    } else if (item.head.is(TokenKind::Ident)) {
      item.is_macro = true;
      item.macro.name = item.head.text;
      item.macro.span = item.head.span;
      if (j < tokens.size() && tokens[j].is(TokenKind::LParen)) {
        item.macro.has_params = true;
        ++j;
        while (true) {
          if (j >= tokens.size() || !tokens[j].is(TokenKind::Ident)) {
            syntax_error("expected macro parameter name", j < tokens.size() ? &tokens[j] : &item.head);
          }
          const std::string& p = tokens[j].text;
          if (std::find(item.macro.params.begin(), item.macro.params.end(), p) != item.macro.params.end()) {
            syntax_error("duplicate macro parameter '" + p + "'", &tokens[j]);
          }
          item.macro.params.push_back(p);
          ++j;
          if (j < tokens.size() && tokens[j].is(TokenKind::Semicolon)) {
            ++j;
            continue;
          }
          if (j < tokens.size() && tokens[j].is(TokenKind::RParen)) {
            ++j;
            break;
          }
          syntax_error("expected ';' or ')' in macro parameter list", j < tokens.size() ? &tokens[j] : &item.head);
        }
      }
      if (j >= tokens.size() || !tokens[j].is(TokenKind::Assign)) {
        syntax_error("expected '=' in definition of macro '" + item.macro.name + "'", &item.head);
      }
      std::size_t end = body_end(j + 1);
      item.macro.body.assign(tokens.begin() + static_cast<std::ptrdiff_t>(j + 1),
                             tokens.begin() + static_cast<std::ptrdiff_t>(end));
      i = end;
    } else {
      syntax_error("expected a section keyword or a macro name after '#'", &item.head);
    }
    items.push_back(std::move(item));
  }
  return items;
}

// Resolves every `a ~ b ~ ...` chain into a single re-lexed token.
Tokens paste(const Tokens& in) {
  Tokens out;
  out.reserve(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (in[i].is(TokenKind::Tilde)) {
      throw Error(ErrorCode::InvalidPaste, "'~' has no left operand", in[i].span);
    }
    if (i + 1 < in.size() && in[i + 1].is(TokenKind::Tilde)) {
      std::string text = in[i].text;
      SourceSpan span = in[i].span;
      while (i + 1 < in.size() && in[i + 1].is(TokenKind::Tilde)) {
        if (i + 2 >= in.size() || in[i + 2].is(TokenKind::Tilde)) {
          throw Error(ErrorCode::InvalidPaste, "'~' has no right operand", in[i + 1].span);
        }
        text += in[i + 2].text;
        i += 2;
      }
      std::vector<Token> lexed;
      try {
        lexed = tokenize(text).tokens;
      } catch (const Error&) {
        lexed.clear();
      }
      if (lexed.size() != 1) {
        throw Error(ErrorCode::InvalidPaste, "\"" + text + "\" is not a valid token", span);
      }
      lexed[0].span = span;
      out.push_back(std::move(lexed[0]));
    } else {
      out.push_back(in[i]);
    }
  }
  return out;
}

class Expander {
 public:
  explicit Expander(const ExpansionOptions& options) : limit_(options.depth_limit) {}

  void define(MacroDef def) {
    for (const auto& other : defs_) {
      if (other.name != def.name) continue;
      bool clash = other.has_params != def.has_params ||
                   (!def.has_params) || other.params.size() == def.params.size();
      if (clash) {
        throw Error(ErrorCode::DuplicateMacro,
                    "macro '" + def.name + "' conflicts with an earlier definition", def.span);
      }
    }
    defs_.push_back(std::move(def));
  }

  std::size_t defined() const { return defs_.size(); }

  // `visible` = number of macro definitions that precede the text.
  Tokens expand(const Tokens& in, std::size_t visible, int depth) const {
    if (depth > limit_) {
      throw Error(ErrorCode::RecursiveExpansionLimit,
                  "macro expansion deeper than " + std::to_string(limit_),
                  in.empty() ? std::nullopt : std::optional<SourceSpan>(in.front().span));
    }
    Tokens tokens = paste(in);
    Tokens out;
    out.reserve(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      const Token& t = tokens[i];
      if (t.is(TokenKind::Ident)) {
        if (const auto* plain = find(t.text, visible, std::nullopt)) {
          append(out, expand(plain->body, ordinal(plain), depth + 1));
          continue;
        }
        if (i + 1 < tokens.size() && tokens[i + 1].is(TokenKind::LParen) && has_family(t.text, visible)) {
          std::size_t close = 0;
          std::vector<Tokens> args = split_arguments(tokens, i + 1, close);
          const MacroDef* def = find(t.text, visible, args.size());
          if (def == nullptr) {
            throw Error(ErrorCode::ArityMismatch,
                        "macro '" + t.text + "' has no definition taking " + std::to_string(args.size()) +
                            " argument(s)",
                        t.span);
          }
          for (auto& arg : args) arg = expand(arg, visible, depth + 1);
          append(out, expand(substitute(*def, args), ordinal(def), depth + 1));
          i = close;
          continue;
        }
      }
      out.push_back(t);
    }
    return out;
  }

 private:
  static void append(Tokens& out, const Tokens& more) { out.insert(out.end(), more.begin(), more.end()); }

  std::size_t ordinal(const MacroDef* def) const { return static_cast<std::size_t>(def - defs_.data()); }

  // arity == nullopt looks for the parameterless macro.
  const MacroDef* find(const std::string& name, std::size_t visible, std::optional<std::size_t> arity) const {
    for (std::size_t k = 0; k < visible && k < defs_.size(); ++k) {
      const auto& d = defs_[k];
      if (d.name != name) continue;
      if (!arity && !d.has_params) return &d;
      if (arity && d.has_params && d.params.size() == *arity) return &d;
    }
    return nullptr;
  }

  bool has_family(const std::string& name, std::size_t visible) const {
    for (std::size_t k = 0; k < visible && k < defs_.size(); ++k) {
      if (defs_[k].name == name && defs_[k].has_params) return true;
    }
    return false;
  }

  // tokens[open] is '('. Splits on ';' at parenthesis depth 1.
  static std::vector<Tokens> split_arguments(const Tokens& tokens, std::size_t open, std::size_t& close) {
    std::vector<Tokens> args(1);
    int depth = 0;
    for (std::size_t j = open; j < tokens.size(); ++j) {
      const Token& t = tokens[j];
      if (t.is(TokenKind::LParen)) {
        if (depth++ == 0) continue;
      } else if (t.is(TokenKind::RParen)) {
        if (--depth == 0) {
          close = j;
          return args;
        }
      } else if (t.is(TokenKind::Semicolon) && depth == 1) {
        args.emplace_back();
        continue;
      }
      args.back().push_back(t);
    }
    syntax_error("unclosed macro argument list", &tokens[open]);
  }

  static Tokens substitute(const MacroDef& def, const std::vector<Tokens>& args) {
    Tokens out;
    for (const auto& t : def.body) {
      if (t.is(TokenKind::Ident)) {
        auto it = std::find(def.params.begin(), def.params.end(), t.text);
        if (it != def.params.end()) {
          append(out, args[static_cast<std::size_t>(it - def.params.begin())]);
          continue;
        }
      }
      out.push_back(t);
    }
    return out;
  }

  std::vector<MacroDef> defs_;
  int limit_;
};

// ---------------------------------------------------------------------------
// Generators

std::string coordinate_name(std::initializer_list<std::size_t> coords, bool wide) {
  std::string name = "v";
  bool first = true;
  for (std::size_t c : coords) {
    if (!first && wide) name += 'x';
    name += std::to_string(c);
    first = false;
  }
  return name;
}

class BoardBuilder {
 public:
  void add_vertex(std::string name, std::string piece) {
    index_[name] = board_.vertices.size();
    board_.vertices.push_back({std::move(name), std::move(piece)});
  }

  void add_edge(const std::string& from, const std::string& label, const std::string& to) {
    if (!seen_.insert({from, label}).second) {
      throw Error(ErrorCode::DuplicateEdgeLabel,
                  "generator labels collide: vertex " + from + " has two '" + label + "' edges");
    }
    board_.edges.push_back({from, label, to});
  }

  GeneratedBoard finish() {
    if (board_.vertices.empty()) throw Error(ErrorCode::EmptyBoard, "board has no vertices");
    std::stable_sort(board_.edges.begin(), board_.edges.end(), [&](const auto& a, const auto& b) {
      auto ia = index_.at(a.from), ib = index_.at(b.from);
      return ia != ib ? ia < ib : a.label < b.label;
    });
    return std::move(board_);
  }

 private:
  GeneratedBoard board_;
  std::map<std::string, std::size_t> index_;
  std::set<std::pair<std::string, std::string>> seen_;
};

bool fits_one_digit(std::size_t extent) { return extent <= 10; }

struct TokenCursor {
  const Tokens& t;
  std::size_t i = 0;

  bool at_end() const { return i >= t.size(); }
  const Token* peek() const { return at_end() ? nullptr : &t[i]; }
  bool check(TokenKind k) const { return !at_end() && t[i].is(k); }
  const Token& expect(TokenKind k, const char* what) {
    if (!check(k)) {
      syntax_error(std::string("expected ") + what, at_end() ? (t.empty() ? nullptr : &t.back()) : &t[i]);
    }
    return t[i++];
  }
};

std::vector<Cell> parse_board_line(TokenCursor& c) {
  c.expect(TokenKind::LBracket, "'[' to open a board line");
  std::vector<Cell> cells;
  while (true) {
    if (c.check(TokenKind::Ident)) {
      cells.emplace_back(c.t[c.i++].text);
    } else {
      cells.emplace_back(std::nullopt);
    }
    if (c.check(TokenKind::Comma)) {
      ++c.i;
      continue;
    }
    c.expect(TokenKind::RBracket, "',' or ']' in a board line");
    return cells;
  }
}

Grid parse_grid(TokenCursor& c) {
  Grid rows;
  while (c.check(TokenKind::LBracket)) rows.push_back(parse_board_line(c));
  return rows;
}

std::vector<std::string> parse_labels(TokenCursor& c, std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < n; ++k) {
    labels.push_back(c.expect(TokenKind::Ident, "a direction label").text);
    c.expect(TokenKind::Comma, "',' after a direction label");
  }
  return labels;
}

Tokens instantiate_board(const Tokens& body) {
  if (body.empty()) return body;
  TokenKind kind = body.front().kind;
  if (kind != TokenKind::KwRectangle && kind != TokenKind::KwHexagon && kind != TokenKind::KwCuboid) return body;
  TokenCursor c{body, 1};
  c.expect(TokenKind::LParen, "'(' after the generator name");
  GeneratedBoard board;
  try {
    if (kind == TokenKind::KwRectangle) {
      auto l = parse_labels(c, 4);
      board = generate_rectangle({l[0], l[1], l[2], l[3]}, parse_grid(c));
    } else if (kind == TokenKind::KwHexagon) {
      auto l = parse_labels(c, 6);
      board = generate_hexagon({l[0], l[1], l[2], l[3], l[4], l[5]}, parse_grid(c));
    } else {
      auto l = parse_labels(c, 6);
      std::vector<Grid> layers;
      while (c.check(TokenKind::LBracket)) {
        ++c.i;
        layers.push_back(parse_grid(c));
        c.expect(TokenKind::RBracket, "']' to close a cuboid layer");
      }
      board = generate_cuboid({l[0], l[1], l[2], l[3], l[4], l[5]}, layers);
    }
  } catch (const Error& e) {
    if (e.span()) throw;
    throw Error(e.code(), e.detail(), body.front().span);
  }
  c.expect(TokenKind::RParen, "')' to close the generator");
  if (!c.at_end()) syntax_error("unexpected tokens after the board generator", c.peek());
  Tokens out = board.to_tokens();
  for (auto& t : out) t.span = body.front().span;
  return out;
}

// ---------------------------------------------------------------------------
// Desugaring

bool is_opener(TokenKind k) {
  return k == TokenKind::LParen || k == TokenKind::LBrace || k == TokenKind::LBraceQuery ||
         k == TokenKind::LBraceBang || k == TokenKind::LBraceDollar || k == TokenKind::LBracket ||
         k == TokenKind::LBracketDollar;
}
bool is_closer(TokenKind k) {
  return k == TokenKind::RParen || k == TokenKind::RBrace || k == TokenKind::RBracket;
}

std::vector<Tokens> split_top_level_commas(const Tokens& content) {
  std::vector<Tokens> parts(1);
  int depth = 0;
  for (const auto& t : content) {
    if (is_opener(t.kind)) ++depth;
    if (is_closer(t.kind)) --depth;
    if (t.is(TokenKind::Comma) && depth == 0) {
      parts.emplace_back();
      continue;
    }
    parts.back().push_back(t);
  }
  return parts;
}

bool contains_assign(const Tokens& part) {
  return std::any_of(part.begin(), part.end(), [](const Token& t) { return t.is(TokenKind::Assign); });
}

Tokens rewrite_comma_brackets(const Tokens& in) {
  Tokens out;
  for (std::size_t i = 0; i < in.size(); ++i) {
    const Token& open = in[i];
    if (!open.is(TokenKind::LBracket) && !open.is(TokenKind::LBracketDollar)) {
      out.push_back(open);
      continue;
    }
    int depth = 0;
    std::size_t close = i;
    for (std::size_t j = i; j < in.size(); ++j) {
      if (is_opener(in[j].kind)) ++depth;
      if (is_closer(in[j].kind) && --depth == 0) {
        close = j;
        break;
      }
    }
    if (close == i) syntax_error("unclosed '" + open.text + "'", &open);
    Tokens content(in.begin() + static_cast<std::ptrdiff_t>(i + 1), in.begin() + static_cast<std::ptrdiff_t>(close));
    auto parts = split_top_level_commas(content);
    if (parts.size() == 1) {
      out.insert(out.end(), in.begin() + static_cast<std::ptrdiff_t>(i),
                 in.begin() + static_cast<std::ptrdiff_t>(close + 1));
    } else if (open.is(TokenKind::LBracketDollar)) {
      for (const auto& part : parts) {
        if (!contains_assign(part)) {
          throw Error(ErrorCode::MixedCommaList, "assignment list mixes in a non-assignment", open.span);
        }
        out.push_back(open);
        out.insert(out.end(), part.begin(), part.end());
        out.push_back(in[close]);
      }
    } else {
      out.push_back(make_token(TokenKind::LParen, "(", open.span));
      for (std::size_t k = 0; k < parts.size(); ++k) {
        if (contains_assign(parts[k])) {
          throw Error(ErrorCode::MixedCommaList, "off list mixes pieces and assignments", open.span);
        }
        if (k > 0) out.push_back(make_token(TokenKind::Plus, "+", open.span));
        out.push_back(open);
        out.insert(out.end(), parts[k].begin(), parts[k].end());
        out.push_back(in[close]);
      }
      out.push_back(make_token(TokenKind::RParen, ")", in[close].span));
    }
    i = close;
  }
  return out;
}

// Start of the element that ends at out.back(): an action or a group, with
// an optional trailing star.
std::size_t element_start(const Tokens& out, const Token& caret) {
  if (out.empty()) syntax_error("'^' has nothing to repeat", &caret);
  std::size_t j = out.size() - 1;
  if (out[j].is(TokenKind::Star)) {
    if (j == 0) syntax_error("'^' has nothing to repeat", &caret);
    --j;
  }
  const Token& last = out[j];
  if (is_closer(last.kind)) {
    int depth = 0;
    for (std::size_t k = j + 1; k-- > 0;) {
      if (is_closer(out[k].kind)) ++depth;
      if (is_opener(out[k].kind) && --depth == 0) return k;
    }
    syntax_error("unbalanced brackets before '^'", &caret);
  }
  if (last.is(TokenKind::Ident)) return (j > 0 && out[j - 1].is(TokenKind::Arrow)) ? j - 1 : j;
  if (last.is(TokenKind::DoubleArrow)) return j;
  syntax_error("'^' must follow an action or a parenthesized group", &caret);
}

Tokens expand_powers(const Tokens& in) {
  Tokens out;
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (!in[i].is(TokenKind::Caret)) {
      out.push_back(in[i]);
      continue;
    }
    if (i + 1 >= in.size() || !in[i + 1].is(TokenKind::Nat)) {
      syntax_error("'^' must be followed by a natural number", &in[i]);
    }
    const Token& count = in[i + 1];
    std::size_t n = 0;
    try {
      n = std::stoul(count.text);
    } catch (const std::exception&) {
      syntax_error("power is too large", &count);
    }
    if (n == 0) throw Error(ErrorCode::ZeroPower, "power must be at least 1", count.span);
    std::size_t start = element_start(out, in[i]);
    Tokens element(out.begin() + static_cast<std::ptrdiff_t>(start), out.end());
    for (std::size_t k = 1; k < n; ++k) out.insert(out.end(), element.begin(), element.end());
    ++i;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Printing

bool no_space_after(TokenKind k) {
  return k == TokenKind::LParen || k == TokenKind::LBracket || k == TokenKind::LBracketDollar ||
         k == TokenKind::LBrace || k == TokenKind::LBraceQuery || k == TokenKind::LBraceBang ||
         k == TokenKind::LBraceDollar || k == TokenKind::Arrow || k == TokenKind::Hash;
}
bool no_space_before(TokenKind k) {
  return k == TokenKind::RParen || k == TokenKind::RBracket || k == TokenKind::RBrace ||
         k == TokenKind::Comma || k == TokenKind::Star || k == TokenKind::Colon;
}

void append_formatted(std::string& line, const Token* prev, const Token& t) {
  if (prev != nullptr) {
    bool tight = (no_space_after(prev->kind) || no_space_before(t.kind)) && can_abut(*prev, t);
    if (!tight) line += ' ';
  }
  line += t.text;
}

std::string format_tokens(const Tokens& tokens) {
  std::string line;
  const Token* prev = nullptr;
  for (const auto& t : tokens) {
    append_formatted(line, prev, t);
    prev = &t;
  }
  return line;
}

int section_rank(TokenKind k) {
  switch (k) {
    case TokenKind::KwPlayers: return 0;
    case TokenKind::KwPieces: return 1;
    case TokenKind::KwVariables: return 2;
    case TokenKind::KwBoard: return 3;
    case TokenKind::KwRules: return 4;
    default: return 5;
  }
}

std::vector<Tokens> split_nodes(const Tokens& body) {
  std::vector<Tokens> nodes;
  Tokens current;
  for (const auto& t : body) {
    current.push_back(t);
    if (t.is(TokenKind::RBrace)) {
      nodes.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) nodes.push_back(std::move(current));
  return nodes;
}

std::vector<Tokens> split_after_switches(const Tokens& body) {
  std::vector<Tokens> lines;
  Tokens current;
  for (std::size_t i = 0; i < body.size(); ++i) {
    current.push_back(body[i]);
    bool ends = body[i].is(TokenKind::DoubleArrow) ||
                (body[i].is(TokenKind::Ident) && i > 0 && body[i - 1].is(TokenKind::Arrow));
    if (ends) {
      lines.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) lines.push_back(std::move(current));
  return lines;
}

}  // namespace

// ---------------------------------------------------------------------------

TokenStream expand_macros(const TokenStream& stream, const ExpansionOptions& options) {
  Expander expander(options);
  TokenStream out{{}, stream.source_name};
  for (auto& item : split_items(stream.tokens)) {
    if (item.is_macro) {
      expander.define(std::move(item.macro));
      continue;
    }
    out.tokens.push_back(item.hash);
    out.tokens.push_back(item.head);
    out.tokens.push_back(make_token(TokenKind::Assign, "=", item.head.span));
    auto body = expander.expand(item.body, expander.defined(), 0);
    out.tokens.insert(out.tokens.end(), body.begin(), body.end());
  }
  return out;
}

std::vector<Token> GeneratedBoard::to_tokens() const {
  Tokens out;
  std::size_t e = 0;
  for (const auto& v : vertices) {
    out.push_back(make_token(TokenKind::Ident, v.name));
    out.push_back(make_token(TokenKind::LBracket, "["));
    out.push_back(make_token(TokenKind::Ident, v.piece));
    out.push_back(make_token(TokenKind::RBracket, "]"));
    out.push_back(make_token(TokenKind::LBrace, "{"));
    bool first = true;
    for (; e < edges.size() && edges[e].from == v.name; ++e) {
      if (!first) out.push_back(make_token(TokenKind::Comma, ","));
      out.push_back(make_token(TokenKind::Ident, edges[e].label));
      out.push_back(make_token(TokenKind::Colon, ":"));
      out.push_back(make_token(TokenKind::Ident, edges[e].to));
      first = false;
    }
    out.push_back(make_token(TokenKind::RBrace, "}"));
  }
  return out;
}

GeneratedBoard generate_rectangle(const RectangleLabels& labels, const Grid& rows) {
  if (rows.empty()) throw Error(ErrorCode::EmptyBoard, "rectangle has no rows");
  const std::size_t width = rows.front().size();
  for (const auto& row : rows) {
    if (row.size() != width) throw Error(ErrorCode::RaggedRows, "all rectangle rows must have the same length");
  }
  const bool wide = !fits_one_digit(width) || !fits_one_digit(rows.size());
  auto present = [&](std::ptrdiff_t c, std::ptrdiff_t r) {
    return r >= 0 && c >= 0 && static_cast<std::size_t>(r) < rows.size() &&
           static_cast<std::size_t>(c) < width && rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  };
  auto name = [&](std::ptrdiff_t c, std::ptrdiff_t r) {
    return coordinate_name({static_cast<std::size_t>(c), static_cast<std::size_t>(r)}, wide);
  };
  BoardBuilder b;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < width; ++c) {
      if (rows[r][c]) b.add_vertex(name(c, r), *rows[r][c]);
    }
  }
  const std::array<std::tuple<const std::string*, int, int>, 4> dirs = {
      std::tuple{&labels.up, 0, -1}, std::tuple{&labels.down, 0, 1}, std::tuple{&labels.left, -1, 0},
      std::tuple{&labels.right, 1, 0}};
  for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(rows.size()); ++r) {
    for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(width); ++c) {
      if (!present(c, r)) continue;
      for (const auto& [label, dc, dr] : dirs) {
        if (present(c + dc, r + dr)) b.add_edge(name(c, r), *label, name(c + dc, r + dr));
      }
    }
  }
  return b.finish();
}

GeneratedBoard generate_hexagon(const HexagonLabels& labels, const Grid& rows) {
  if (rows.empty()) throw Error(ErrorCode::EmptyBoard, "hexagon has no rows");
  std::size_t k = 0;
  while (k + 1 < rows.size() && rows[k + 1].size() == rows[k].size() + 1) ++k;
  while (k + 1 < rows.size() && rows[k + 1].size() + 1 == rows[k].size()) ++k;
  if (k + 1 != rows.size() || rows.front().empty()) {
    throw Error(ErrorCode::InvalidHexShape,
                "hexagon rows must grow by one up to the widest row and then shrink by one");
  }
  std::size_t widest = 0;
  for (const auto& row : rows) widest = std::max(widest, row.size());
  const bool wide = !fits_one_digit(widest) || !fits_one_digit(rows.size());
  const auto height = static_cast<std::ptrdiff_t>(rows.size());
  auto present = [&](std::ptrdiff_t c, std::ptrdiff_t r) {
    return r >= 0 && r < height && c >= 0 && static_cast<std::size_t>(c) < rows[static_cast<std::size_t>(r)].size() &&
           rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  };
  auto len = [&](std::ptrdiff_t r) { return rows[static_cast<std::size_t>(r)].size(); };
  auto name = [&](std::ptrdiff_t c, std::ptrdiff_t r) {
    return coordinate_name({static_cast<std::size_t>(c), static_cast<std::size_t>(r)}, wide);
  };
  BoardBuilder b;
  for (std::ptrdiff_t r = 0; r < height; ++r) {
    for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(len(r)); ++c) {
      if (present(c, r)) b.add_vertex(name(c, r), *rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
    }
  }
  for (std::ptrdiff_t r = 0; r < height; ++r) {
    for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(len(r)); ++c) {
      if (!present(c, r)) continue;
      auto link = [&](const std::string& label, std::ptrdiff_t tc, std::ptrdiff_t tr) {
        if (present(tc, tr)) b.add_edge(name(c, r), label, name(tc, tr));
      };
      link(labels.east, c + 1, r);
      link(labels.west, c - 1, r);
      if (r > 0) {
        // The row above is either one shorter (we are in the growing half)
        // or one longer.
        std::ptrdiff_t shift = len(r - 1) < len(r) ? -1 : 0;
        link(labels.north_west, c + shift, r - 1);
        link(labels.north_east, c + shift + 1, r - 1);
      }
      if (r + 1 < height) {
        std::ptrdiff_t shift = len(r + 1) > len(r) ? 0 : -1;
        link(labels.south_west, c + shift, r + 1);
        link(labels.south_east, c + shift + 1, r + 1);
      }
    }
  }
  return b.finish();
}

GeneratedBoard generate_cuboid(const CuboidLabels& labels, const std::vector<Grid>& layers) {
  if (layers.empty() || layers.front().empty()) throw Error(ErrorCode::EmptyBoard, "cuboid has no cells");
  const std::size_t height = layers.front().size();
  const std::size_t width = layers.front().front().size();
  for (const auto& layer : layers) {
    if (layer.size() != height) throw Error(ErrorCode::RaggedLayers, "cuboid layers must be congruent");
    for (const auto& row : layer) {
      if (row.size() != width) throw Error(ErrorCode::RaggedLayers, "cuboid layers must be congruent");
    }
  }
  const bool wide = !fits_one_digit(width) || !fits_one_digit(height) || !fits_one_digit(layers.size());
  const auto depth = static_cast<std::ptrdiff_t>(layers.size());
  auto present = [&](std::ptrdiff_t c, std::ptrdiff_t r, std::ptrdiff_t z) {
    return z >= 0 && z < depth && r >= 0 && static_cast<std::size_t>(r) < height && c >= 0 &&
           static_cast<std::size_t>(c) < width &&
           layers[static_cast<std::size_t>(z)][static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  };
  auto name = [&](std::ptrdiff_t c, std::ptrdiff_t r, std::ptrdiff_t z) {
    return coordinate_name({static_cast<std::size_t>(c), static_cast<std::size_t>(r), static_cast<std::size_t>(z)},
                           wide);
  };
  BoardBuilder b;
  for (std::ptrdiff_t z = 0; z < depth; ++z) {
    for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(height); ++r) {
      for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(width); ++c) {
        if (present(c, r, z)) {
          b.add_vertex(name(c, r, z),
                       *layers[static_cast<std::size_t>(z)][static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
        }
      }
    }
  }
  const std::array<std::tuple<const std::string*, int, int, int>, 6> dirs = {
      std::tuple{&labels.up, 0, -1, 0},   std::tuple{&labels.down, 0, 1, 0},
      std::tuple{&labels.left, -1, 0, 0}, std::tuple{&labels.right, 1, 0, 0},
      std::tuple{&labels.front, 0, 0, 1}, std::tuple{&labels.back, 0, 0, -1}};
  for (std::ptrdiff_t z = 0; z < depth; ++z) {
    for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(height); ++r) {
      for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(width); ++c) {
        if (!present(c, r, z)) continue;
        for (const auto& [label, dc, dr, dz] : dirs) {
          if (present(c + dc, r + dr, z + dz)) b.add_edge(name(c, r, z), *label, name(c + dc, r + dr, z + dz));
        }
      }
    }
  }
  return b.finish();
}

TokenStream instantiate_generators(const TokenStream& stream) {
  TokenStream out{{}, stream.source_name};
  for (const auto& item : split_items(stream.tokens)) {
    if (item.is_macro) syntax_error("macro definition left after expansion", &item.head);
    out.tokens.push_back(item.hash);
    out.tokens.push_back(item.head);
    out.tokens.push_back(make_token(TokenKind::Assign, "=", item.head.span));
    Tokens body = item.head.is(TokenKind::KwBoard) ? instantiate_board(item.body) : item.body;
    out.tokens.insert(out.tokens.end(), body.begin(), body.end());
  }
  return out;
}

TokenStream desugar(const TokenStream& stream) {
  return TokenStream{expand_powers(rewrite_comma_brackets(stream.tokens)), stream.source_name};
}

TokenStream compile_hl_to_ll(const TokenStream& stream, const ExpansionOptions& options) {
  return desugar(instantiate_generators(expand_macros(stream, options)));
}

std::string print_ll(const TokenStream& ll) {
  auto items = split_items(ll.tokens);
  std::stable_sort(items.begin(), items.end(),
                   [](const Item& a, const Item& b) { return section_rank(a.head.kind) < section_rank(b.head.kind); });
  std::string out;
  for (const auto& item : items) {
    if (item.is_macro) syntax_error("macro definition in LL output", &item.head);
    out += "#" + item.head.text + " =";
    if (item.head.is(TokenKind::KwBoard) || item.head.is(TokenKind::KwRules)) {
      auto lines = item.head.is(TokenKind::KwBoard) ? split_nodes(item.body) : split_after_switches(item.body);
      out += '\n';
      for (const auto& line : lines) out += "  " + format_tokens(line) + '\n';
    } else {
      if (!item.body.empty()) out += ' ' + format_tokens(item.body);
      out += '\n';
    }
  }
  return out;
}

std::string compile_hl_text(std::string_view source, const ExpansionOptions& options) {
  return print_ll(compile_hl_to_ll(tokenize(source), options));
}

}  // namespace rbg
