#include "rbg/analyzer.hpp"

namespace rbg {

StraightValue operator+(StraightValue a, StraightValue b) {
  if (a.is_bottom() || b.is_bottom()) return StraightValue::bottom();
  if (a.is_infinite() || b.is_infinite()) return StraightValue::infinite();
  return StraightValue::finite(a.value() + b.value());
}

bool operator<(StraightValue a, StraightValue b) {
  if (a.kind() != b.kind()) return static_cast<int>(a.kind()) < static_cast<int>(b.kind());
  return a.is_finite() && a.value() < b.value();
}

std::string StraightValue::to_string() const {
  switch (kind_) {
    case Kind::Bottom: return "bottom";
    case Kind::Infinite: return "inf";
    case Kind::Finite: break;
  }
  return std::to_string(value_);
}

namespace {

using SV = StraightValue;

StraightQuad of_action(const Action& a, std::size_t* visits) {
  const SV zero = SV::finite(0), one = SV::finite(1);
  switch (a.kind) {
    case ActionKind::Off:
    case ActionKind::Assignment:
      return {one, one, one, one};
    case ActionKind::Switch:
      return {zero, zero, zero, SV::bottom()};
    case ActionKind::Pattern: {
      SV inner = straight_quad(*a.body, visits).mpref;
      return {zero, inner, inner, zero};
    }
    default:
      return {zero, zero, zero, zero};
  }
}

StraightQuad concat(const StraightQuad& a, const StraightQuad& b) {
  StraightQuad r;
  r.msuff = max(a.msuff + b.mword, b.msuff);
  r.mpref = max(a.mpref, a.mword + b.mpref);
  r.mfact = max(max(a.mfact, a.msuff + b.mpref), b.mfact);
  r.mword = a.mword + b.mword;
  return r;
}

StraightQuad star(const StraightQuad& e) {
  if (e.mword.is_infinite() || (e.mword.is_finite() && e.mword.value() > 0)) {
    return {SV::infinite(), SV::infinite(), SV::infinite(), SV::infinite()};
  }
  return {e.msuff, e.mpref, max(e.msuff + e.mpref, e.mfact), SV::finite(0)};
}

bool contains_switch(const Expr& e) {
  if (e.kind == Expr::Kind::Action) {
    if (e.action.kind == ActionKind::Switch) return true;
    return e.action.kind == ActionKind::Pattern && contains_switch(*e.action.body);
  }
  for (const auto& c : e.children) {
    if (contains_switch(c)) return true;
  }
  return false;
}

void find_switches_in_patterns(const Expr& e, bool in_pattern, std::vector<const Action*>& out) {
  if (e.kind == Expr::Kind::Action) {
    if (in_pattern && e.action.kind == ActionKind::Switch) out.push_back(&e.action);
    if (e.action.kind == ActionKind::Pattern) find_switches_in_patterns(*e.action.body, true, out);
    return;
  }
  for (const auto& c : e.children) find_switches_in_patterns(c, in_pattern, out);
}

void find_shifts(const Expr& e, int direction, const Action*& first) {
  if (first) return;
  if (e.kind == Expr::Kind::Action) {
    if (e.action.kind == ActionKind::Shift && e.action.target == direction) first = &e.action;
    if (e.action.kind == ActionKind::Pattern) find_shifts(*e.action.body, direction, first);
    return;
  }
  for (const auto& c : e.children) find_shifts(c, direction, first);
}

}  // namespace

StraightQuad straight_quad(const Expr& e, std::size_t* visits) {
  if (visits) ++*visits;
  switch (e.kind) {
    case Expr::Kind::Action:
      return of_action(e.action, visits);
    case Expr::Kind::Sum: {
      StraightQuad r = straight_quad(e.children.front(), visits);
      for (std::size_t i = 1; i < e.children.size(); ++i) {
        StraightQuad c = straight_quad(e.children[i], visits);
        r = {max(r.msuff, c.msuff), max(r.mpref, c.mpref), max(r.mfact, c.mfact), max(r.mword, c.mword)};
      }
      return r;
    }
    case Expr::Kind::Concat: {
      StraightQuad r = straight_quad(e.children.front(), visits);
      for (std::size_t i = 1; i < e.children.size(); ++i) r = concat(r, straight_quad(e.children[i], visits));
      return r;
    }
    case Expr::Kind::Star:
      return star(straight_quad(e.children.front(), visits));
  }
  return {};
}

StraightValue strong_straightness(const Description& desc) { return straight_quad(*desc.rules.root).mfact; }

std::int64_t recommended_cap(const Description& desc, std::int64_t fallback) {
  StraightValue s = strong_straightness(desc);
  if (s.is_finite()) return s.value();
  if (s.is_bottom()) return 0;
  return fallback;
}

std::string Diagnostic::format() const {
  const char* lv = level == Level::Error ? "ERROR" : level == Level::Warning ? "WARNING" : "INFO";
  std::string out = std::string(lv) + " " + code + ": " + message;
  if (span.known()) out += " (" + std::to_string(span.line) + ":" + std::to_string(span.column) + ")";
  return out;
}

std::vector<Diagnostic> validate(const Description& desc) {
  std::vector<Diagnostic> out;
  std::vector<const Action*> bad;
  find_switches_in_patterns(*desc.rules.root, false, bad);
  for (const Action* a : bad) {
    out.push_back({Level::Error, "PatternContainsSwitch", "patterns may not contain switches", a->span});
  }
  if (!contains_switch(*desc.rules.root)) {
    out.push_back({Level::Warning, "NoSwitchInRules", "the rules contain no switch, so no move is ever legal", {}});
  }
  for (int d : desc.edgeless_directions) {
    const Action* first = nullptr;
    find_shifts(*desc.rules.root, d, first);
    out.push_back({Level::Warning, "DirectionWithoutEdges",
                   "direction '" + desc.board.directions[static_cast<std::size_t>(d)] +
                       "' labels no board edge; shifts along it always fail",
                   first ? first->span : SourceSpan{}});
  }
  StraightValue s = strong_straightness(desc);
  if (s.is_infinite()) {
    out.push_back({Level::Warning, "InfiniteStrongStraightness",
                   "strong straightness is unbounded; the game may still be proper but the move search relies on "
                   "the runtime cap (default " + std::to_string(kDefaultCap) + ", see --cap)",
                   {}});
  }
  out.push_back({Level::Info, "StrongStraightness",
                 "strong straightness " + s.to_string() + ", recommended cap " +
                     std::to_string(recommended_cap(desc)),
                 {}});
  return out;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  for (const auto& d : diagnostics) {
    if (d.level == Level::Error) return true;
  }
  return false;
}

}  // namespace rbg
