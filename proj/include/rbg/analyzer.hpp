#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rbg/description.hpp"

namespace rbg {

// Natural number extended with BOTTOM (empty maximum) and INFINITE.
// Order: BOTTOM < n < INFINITE. Addition: BOTTOM absorbs everything,
// otherwise INFINITE absorbs.
class StraightValue {
 public:
  enum class Kind { Bottom, Finite, Infinite };

  static StraightValue finite(std::int64_t n) { return StraightValue(Kind::Finite, n); }
  static StraightValue infinite() { return StraightValue(Kind::Infinite, 0); }
  static StraightValue bottom() { return StraightValue(Kind::Bottom, 0); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_infinite() const { return kind_ == Kind::Infinite; }
  bool is_bottom() const { return kind_ == Kind::Bottom; }
  std::int64_t value() const { return value_; }  // meaningful when finite

  friend StraightValue operator+(StraightValue a, StraightValue b);
  friend bool operator<(StraightValue a, StraightValue b);
  friend bool operator==(StraightValue a, StraightValue b) { return a.kind_ == b.kind_ && a.value_ == b.value_; }
  friend StraightValue max(StraightValue a, StraightValue b) { return a < b ? b : a; }

  std::string to_string() const;  // "3", "inf" or "bottom"

 private:
  StraightValue(Kind kind, std::int64_t value) : kind_(kind), value_(value) {}
  Kind kind_;
  std::int64_t value_;
};

struct StraightQuad {
  StraightValue msuff = StraightValue::bottom();
  StraightValue mpref = StraightValue::bottom();
  StraightValue mfact = StraightValue::bottom();
  StraightValue mword = StraightValue::bottom();
};

// One bottom-up pass. `visits`, when given, receives the number of AST nodes
// evaluated (pattern bodies included).
StraightQuad straight_quad(const Expr& expr, std::size_t* visits = nullptr);

StraightValue strong_straightness(const Description& desc);

constexpr std::int64_t kDefaultCap = 1024;

// Strong straightness when finite, `fallback` otherwise.
std::int64_t recommended_cap(const Description& desc, std::int64_t fallback = kDefaultCap);

enum class Level { Error, Warning, Info };

struct Diagnostic {
  Level level;
  std::string code;
  std::string message;
  SourceSpan span;

  std::string format() const;  // "LEVEL code: message (line:col)"
};

std::vector<Diagnostic> validate(const Description& desc);

bool has_errors(const std::vector<Diagnostic>& diagnostics);

}  // namespace rbg
