#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rbg/error.hpp"

namespace rbg {

enum class TokenKind : std::uint8_t {
  Ident,
  Nat,
  LParen,          // (
  RParen,          // )
  LBrace,          // {
  LBraceQuery,     // {?
  LBraceBang,      // {!
  LBraceDollar,    // {$
  RBrace,          // }
  LBracket,        // [
  LBracketDollar,  // [$
  RBracket,        // ]
  Tilde,           // ~
  Hash,            // #
  Minus,           // -
  Plus,            // +
  Caret,           // ^
  Slash,           // /
  Star,            // *
  Comma,           // ,
  Semicolon,       // ;
  Colon,           // :
  Dollar,          // $
  Assign,          // =
  Arrow,           // ->
  DoubleArrow,     // ->>
  Bang,            // !
  Query,           // ?
  NotEqual,        // !=
  Equal,           // ==
  Less,            // <
  LessEqual,       // <=
  Greater,         // >
  GreaterEqual,    // >=
  KwPlayers,
  KwPieces,
  KwVariables,
  KwRules,
  KwBoard,
  KwHexagon,
  KwRectangle,
  KwCuboid,
};

struct Token {
  TokenKind kind;
  std::string text;
  SourceSpan span;

  bool is(TokenKind k) const { return kind == k; }
};

// Compares kind and text only; spans are provenance, not identity.
inline bool same_lexeme(const Token& a, const Token& b) {
  return a.kind == b.kind && a.text == b.text;
}

struct TokenStream {
  std::vector<Token> tokens;
  std::string source_name;
};

// Greedy (maximal munch) tokenization. Whitespace, `//` line comments and
// non-nesting `/* */` block comments separate tokens and are dropped.
TokenStream tokenize(std::string_view source, std::string source_name = "<input>");

std::string_view token_kind_name(TokenKind kind);

// The five `#name` section keywords of a description.
bool is_section_keyword(TokenKind kind);

// Token texts joined by single spaces.
std::string join_tokens(const std::vector<Token>& tokens);

// True when the two lexemes, written without a separator, lex back to the
// same two tokens.
bool can_abut(const Token& left, const Token& right);

}  // namespace rbg
