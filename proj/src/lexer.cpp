#include "rbg/lexer.hpp"

#include <array>
#include <utility>

namespace rbg {

namespace {

struct Literal {
  std::string_view text;
  TokenKind kind;
};

// Longest literals first so that the first match is the greedy one.
constexpr std::array kPunctuation = {
    Literal{"->>", TokenKind::DoubleArrow}, Literal{"->", TokenKind::Arrow},
    Literal{"{?", TokenKind::LBraceQuery},  Literal{"{!", TokenKind::LBraceBang},
    Literal{"{$", TokenKind::LBraceDollar}, Literal{"[$", TokenKind::LBracketDollar},
    Literal{"!=", TokenKind::NotEqual},     Literal{"==", TokenKind::Equal},
    Literal{"<=", TokenKind::LessEqual},    Literal{">=", TokenKind::GreaterEqual},
    Literal{"(", TokenKind::LParen},        Literal{")", TokenKind::RParen},
    Literal{"{", TokenKind::LBrace},        Literal{"}", TokenKind::RBrace},
    Literal{"[", TokenKind::LBracket},      Literal{"]", TokenKind::RBracket},
    Literal{"~", TokenKind::Tilde},         Literal{"#", TokenKind::Hash},
    Literal{"-", TokenKind::Minus},         Literal{"+", TokenKind::Plus},
    Literal{"^", TokenKind::Caret},         Literal{"/", TokenKind::Slash},
    Literal{"*", TokenKind::Star},          Literal{",", TokenKind::Comma},
    Literal{";", TokenKind::Semicolon},     Literal{":", TokenKind::Colon},
    Literal{"$", TokenKind::Dollar},        Literal{"=", TokenKind::Assign},
    Literal{"!", TokenKind::Bang},          Literal{"?", TokenKind::Query},
    Literal{"<", TokenKind::Less},          Literal{">", TokenKind::Greater},
};

constexpr std::array kKeywords = {
    Literal{"players", TokenKind::KwPlayers},     Literal{"pieces", TokenKind::KwPieces},
    Literal{"variables", TokenKind::KwVariables}, Literal{"rules", TokenKind::KwRules},
    Literal{"board", TokenKind::KwBoard},         Literal{"hexagon", TokenKind::KwHexagon},
    Literal{"rectangle", TokenKind::KwRectangle}, Literal{"cuboid", TokenKind::KwCuboid},
};

bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_separators();
      if (pos_ >= src_.size()) break;
      out.push_back(next_token());
    }
    return out;
  }

 private:
  SourceSpan here(std::size_t length) const { return SourceSpan{line_, column_, pos_, length}; }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      if (src_[pos_] == '\n') {
        ++line_;
        column_ = 1;
      } else {
        ++column_;
      }
      ++pos_;
    }
  }

  void skip_separators() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (is_space(c)) {
        advance(1);
      } else if (src_.compare(pos_, 2, "//") == 0) {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance(1);
      } else if (src_.compare(pos_, 2, "/*") == 0) {
        SourceSpan start = here(2);
        std::size_t close = src_.find("*/", pos_ + 2);
        if (close == std::string_view::npos) {
          throw Error(ErrorCode::UnterminatedComment, "unterminated /* comment", start);
        }
        advance(close + 2 - pos_);
      } else {
        return;
      }
    }
  }

  Token next_token() {
    char c = src_[pos_];
    if (is_alpha(c)) {
      std::size_t end = pos_ + 1;
      while (end < src_.size() && (is_alpha(src_[end]) || is_digit(src_[end]))) ++end;
      std::string_view text = src_.substr(pos_, end - pos_);
      TokenKind kind = TokenKind::Ident;
      for (const auto& kw : kKeywords) {
        if (kw.text == text) kind = kw.kind;
      }
      return take(kind, end - pos_);
    }
    if (is_digit(c)) {
      std::size_t end = pos_ + 1;
      while (end < src_.size() && is_digit(src_[end])) ++end;
      return take(TokenKind::Nat, end - pos_);
    }
    for (const auto& lit : kPunctuation) {
      if (src_.compare(pos_, lit.text.size(), lit.text) == 0) return take(lit.kind, lit.text.size());
    }
    std::string shown = (static_cast<unsigned char>(c) < 0x20 || static_cast<unsigned char>(c) >= 0x7f)
                            ? "byte 0x" + to_hex(static_cast<unsigned char>(c))
                            : std::string("'") + c + "'";
    throw Error(ErrorCode::UnexpectedCharacter, "unexpected " + shown, here(1));
  }

  Token take(TokenKind kind, std::size_t length) {
    Token t{kind, std::string(src_.substr(pos_, length)), here(length)};
    advance(length);
    return t;
  }

  static std::string to_hex(unsigned char c) {
    const char* digits = "0123456789abcdef";
    return {digits[c >> 4], digits[c & 15]};
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::uint32_t line_ = 1;
  std::uint32_t column_ = 1;
};

}  // namespace

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnexpectedCharacter: return "UnexpectedCharacter";
    case ErrorCode::UnterminatedComment: return "UnterminatedComment";
    case ErrorCode::InvalidPaste: return "InvalidPaste";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::DuplicateMacro: return "DuplicateMacro";
    case ErrorCode::RecursiveExpansionLimit: return "RecursiveExpansionLimit";
    case ErrorCode::RaggedRows: return "RaggedRows";
    case ErrorCode::RaggedLayers: return "RaggedLayers";
    case ErrorCode::EmptyBoard: return "EmptyBoard";
    case ErrorCode::InvalidHexShape: return "InvalidHexShape";
    case ErrorCode::ZeroPower: return "ZeroPower";
    case ErrorCode::MixedCommaList: return "MixedCommaList";
    case ErrorCode::MissingSection: return "MissingSection";
    case ErrorCode::DuplicateSection: return "DuplicateSection";
    case ErrorCode::DuplicateVertex: return "DuplicateVertex";
    case ErrorCode::UndeclaredIdentifier: return "UndeclaredIdentifier";
    case ErrorCode::DisjointnessViolation: return "DisjointnessViolation";
    case ErrorCode::DuplicateEdgeLabel: return "DuplicateEdgeLabel";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownIndex: return "UnknownIndex";
    case ErrorCode::StraightnessCapExceeded: return "StraightnessCapExceeded";
    case ErrorCode::IllegalMove: return "IllegalMove";
    case ErrorCode::KeeperNondeterminism: return "KeeperNondeterminism";
  }
  return "Unknown";
}

std::string Error::format(ErrorCode code, const std::string& message,
                          const std::optional<SourceSpan>& span) {
  std::string out(error_code_name(code));
  out += ": ";
  out += message;
  if (span && span->known()) {
    out += " (" + std::to_string(span->line) + ":" + std::to_string(span->column) + ")";
  }
  return out;
}

TokenStream tokenize(std::string_view source, std::string source_name) {
  return TokenStream{Lexer(source).run(), std::move(source_name)};
}

std::string_view token_kind_name(TokenKind kind) {
  switch (kind) {
    case TokenKind::Ident: return "identifier";
    case TokenKind::Nat: return "number";
    default: break;
  }
  for (const auto& lit : kPunctuation) {
    if (lit.kind == kind) return lit.text;
  }
  for (const auto& kw : kKeywords) {
    if (kw.kind == kind) return kw.text;
  }
  return "?";
}

bool is_section_keyword(TokenKind kind) {
  return kind == TokenKind::KwPlayers || kind == TokenKind::KwPieces ||
         kind == TokenKind::KwVariables || kind == TokenKind::KwRules || kind == TokenKind::KwBoard;
}

std::string join_tokens(const std::vector<Token>& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t.text;
  }
  return out;
}

bool can_abut(const Token& left, const Token& right) {
  std::vector<Token> lexed;
  try {
    lexed = Lexer(left.text + right.text).run();
  } catch (const Error&) {
    return false;
  }
  return lexed.size() == 2 && same_lexeme(lexed[0], left) && same_lexeme(lexed[1], right);
}

}  // namespace rbg
