#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rbg {

// Position of a lexeme in its source text. Lines and columns are 1-based.
struct SourceSpan {
  std::uint32_t line = 0;
  std::uint32_t column = 0;
  std::size_t offset = 0;
  std::size_t length = 0;

  bool known() const { return line != 0; }
  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

enum class ErrorCode {
  // lexer
  UnexpectedCharacter,
  UnterminatedComment,
  // HL front end
  InvalidPaste,
  ArityMismatch,
  DuplicateMacro,
  RecursiveExpansionLimit,
  RaggedRows,
  RaggedLayers,
  EmptyBoard,
  InvalidHexShape,
  ZeroPower,
  MixedCommaList,
  // LL parser
  MissingSection,
  DuplicateSection,
  DuplicateVertex,
  UndeclaredIdentifier,
  DisjointnessViolation,
  DuplicateEdgeLabel,
  SyntaxError,
  // automaton
  UnknownIndex,
  // reasoner
  StraightnessCapExceeded,
  IllegalMove,
  KeeperNondeterminism,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, std::optional<SourceSpan> span = std::nullopt)
      : std::runtime_error(format(code, message, span)),
        code_(code),
        detail_(std::move(message)),
        span_(span) {}

  ErrorCode code() const { return code_; }
  const std::string& detail() const { return detail_; }
  const std::optional<SourceSpan>& span() const { return span_; }

 private:
  static std::string format(ErrorCode code, const std::string& message,
                            const std::optional<SourceSpan>& span);

  ErrorCode code_;
  std::string detail_;
  std::optional<SourceSpan> span_;
};

}  // namespace rbg
