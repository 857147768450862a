// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "oracle/breakthrough_movegen.hpp"
#include "oracle/oracle.hpp"
#include "rbg/analyzer.hpp"
#include "rbg/automaton.hpp"
#include "rbg/bench.hpp"
#include "rbg/hl_frontend.hpp"
#include "unit/support.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << " " << id << ": " << detail << std::endl;
  if (!ok) ++failures;
}

// Runs a criterion, turning an escaping exception into a failure.
void criterion(int id, const std::function<std::pair<bool, std::string>()>& body) {
  try {
    auto [ok, detail] = body();
    report(id, ok, detail);
  } catch (const std::exception& e) {
    report(id, false, std::string("exception: ") + e.what());
  }
}

rbg::GameState root_of(const rbg::Game& game, rbg::ReasonerOptions options = {}) {
  rbg::Reasoner r(game, options);
  return r.keeper_completion(game.initial_state());
}

std::string expand(const std::string& src) { return rbg::join_tokens(rbg::expand_macros(rbg::tokenize(src)).tokens); }

// Frozen from the hand-written move generator in tests/oracle.
constexpr std::uint64_t kBreakthroughPerft[] = {1, 22, 484, 11132, 256036};

std::pair<bool, std::string> c1() {
  auto game = rbg::load_game_file(rbg::test::source_path("games/breakthrough.rbg"));
  const auto start = Clock::now();
  const auto r = rbg::perft(*game, root_of(*game), 1);
  const double t = seconds_since(start);
  std::ostringstream out;
  out << "breakthrough perft(1) = " << r.leaves << " in " << t << " s";
  return {r.leaves == 22 && t < 1.0, out.str()};
}

std::pair<bool, std::string> c2() {
  const std::string ll = rbg::compile_hl_text(rbg::test::read_source("games/breakthrough.rbg"));
  const std::string fragment =
      "((up*+down*)(left*+right*)){w}[e]up({e}+(left+right){e,b})->>"
      "[w][$white=100][$black=0]({!up}->>{}+{?up}->black)";
  const bool ok = rbg::test::squeeze(ll).find(fragment) != std::string::npos;
  return {ok, ok ? "compiled rules contain the unrolled white turn" : "fragment not found in compiled LL"};
}

std::pair<bool, std::string> c3() {
  using rbg::StraightValue;
  auto quad = [](const std::string& rules) {
    auto desc = rbg::test::tiny_description(rules);
    return rbg::straight_quad(*desc.rules.root);
  };
  const auto fin = StraightValue::finite;
  // Quoted values: (3, 4, 4, bottom), 3 and 4; breakthrough 3.
  const auto a = quad("[a]{b}{?[c][d]}[e]->>[f]({g}+[h])[i]");
  const auto b = quad("[a]->>[b][c][d]->>[e][f]").mfact;
  const auto c = quad("[a][b](->>+[c])[d]").mword;
  auto fig1 = rbg::parse_description_text(rbg::test::read_source("games/breakthrough.rbg"));
  const auto s = rbg::strong_straightness(fig1);
  const bool ok = a.msuff == fin(3) && a.mpref == fin(4) && a.mfact == fin(4) && a.mword.is_bottom() &&
                  b == fin(3) && c == fin(4) && s == fin(3);
  return {ok, "quad (" + a.msuff.to_string() + ", " + a.mpref.to_string() + ", " + a.mfact.to_string() + ", " +
                  a.mword.to_string() + ") expected (3, 4, 4, bottom); mfact " + b.to_string() + " expected 3; mword " +
                  c.to_string() + " expected 4; breakthrough strong straightness " + s.to_string() + " expected 3"};
}

std::pair<bool, std::string> c4() {
  struct Case {
    std::string src;
    std::string expected;  // empty: must fail with InvalidPaste
  };
  const std::vector<Case> cases = {
      {"#m0 = m1 #m1 = x #rules = m0", "# rules = m1"},
      {"#m1 = x #m2 = m1 #rules = m2", "# rules = x"},
      {"#m3(a;b) = a + b #m4 = m3(x;y) #rules = m4", "# rules = x + y"},
      {"#m3(a;b) = a + b #m5 = m3(;) #rules = m5", "# rules = +"},
      {"#m3(a;b) = a + b #m6 = m3 #rules = m6", "# rules = m3"},
      {"#m1 = x #m7 = m1(x) #rules = m7", "# rules = x ( x )"},
      {"#m1 = x~y #m2 = m1 #rules = m2", "# rules = xy"},
      {"#m3(a;b) = a~b #m4 = m3(x;y) #rules = m4", "# rules = xy"},
      {"#m3(a;b) = a~b #m5 = m3(8;y) #rules = m5", ""},
      {"#m3(a;b) = a~b #m6 = m3(1;2) #rules = m6", "# rules = 12"},
      {"#m3(a;b) = a~b #m7 = m3(x~y;z) #rules = m7", "# rules = xyz"},
  };
  int good = 0;
  std::string wrong;
  for (const auto& c : cases) {
    std::string got;
    try {
      got = expand(c.src);
    } catch (const rbg::Error& e) {
      got = e.what();
      if (c.expected.empty() && e.code() == rbg::ErrorCode::InvalidPaste) got.clear();
    }
    if (got == c.expected) {
      ++good;
    } else {
      wrong += "; `" + c.src + "` gave `" + got + "`";
    }
  }
  return {good == static_cast<int>(cases.size()),
          std::to_string(good) + "/" + std::to_string(cases.size()) + " macro examples" + wrong};
}

std::pair<bool, std::string> c5() {
  const std::string head = "#players = p(1)\n#pieces = e\n#variables =\n#rules = ->p\n#board = ";
  auto generated = rbg::parse_description_text(
      head + "hexagon(northWest, northEast, east, southEast, southWest, west,\n  [e,e]\n [e,e,e]\n  [e,e])");
  auto listed = rbg::parse_description_text(
      head +
      "v00[e]{east:v10,southEast:v11,southWest:v01}\n"
      "v10[e]{southEast:v21,southWest:v11,west:v00}\n"
      "v01[e]{east:v11,northEast:v00,southEast:v02}\n"
      "v11[e]{east:v21,northEast:v10,northWest:v00,southEast:v12,southWest:v02,west:v01}\n"
      "v21[e]{northWest:v10,southWest:v12,west:v11}\n"
      "v02[e]{east:v12,northEast:v11,northWest:v01}\n"
      "v12[e]{northEast:v21,northWest:v11,west:v02}\n");
  auto edges = [](const rbg::BoardGraph& b) {
    std::set<std::tuple<std::string, std::string, std::string>> out;
    for (int v = 0; v < b.vertex_count(); ++v) {
      for (int d = 0; d < b.direction_count(); ++d) {
        const int t = b.step(v, d);
        if (t != rbg::kNone) out.emplace(b.vertices[v], b.directions[d], b.vertices[t]);
      }
    }
    return out;
  };
  std::map<std::string, int> pieces_generated, pieces_listed;
  for (int v = 0; v < generated.board.vertex_count(); ++v) {
    pieces_generated[generated.board.vertices[v]] = generated.initial_pieces[v];
  }
  for (int v = 0; v < listed.board.vertex_count(); ++v) pieces_listed[listed.board.vertices[v]] = listed.initial_pieces[v];
  const bool ok = generated.board.vertex_count() == 7 && edges(generated.board) == edges(listed.board) &&
                  generated.board.vertices[generated.board.start_vertex] ==
                      listed.board.vertices[listed.board.start_vertex] &&
                  pieces_generated == pieces_listed;
  return {ok, std::to_string(edges(generated.board).size()) + " labelled edges, 7 vertices"};
}

std::pair<bool, std::string> c6() {
  const auto start = Clock::now();
  std::uint64_t checked = 0;
  bool ok = true;
  for (const char* name : {"breakthrough3x3", "tictactoe"}) {
    auto game = rbg::test::corpus_game(name);
    const auto& desc = game->description();
    rbg::Reasoner r(*game);
    std::function<void(const rbg::GameState&, int)> walk = [&](const rbg::GameState& s, int depth) {
      if (depth == 0 || !ok) return;
      std::map<std::string, rbg::GameState> engine;
      for (const auto& m : r.legal_moves(s)) {
        rbg::GameState next = s;
        r.apply_move(next, m);
        next = r.keeper_completion(next);
        engine.emplace(rbg::encode_state(next), next);
      }
      std::set<std::string> oracle;
      for (const auto& m : rbg::oracle::oracle_legal_moves(desc, s)) {
        auto completions = rbg::oracle::oracle_keeper_completions(desc, rbg::oracle::oracle_apply(desc, s, m));
        if (completions.size() != 1) ok = false;
        oracle.insert(completions.begin(), completions.end());
      }
      std::set<std::string> engine_keys;
      for (const auto& [key, state] : engine) engine_keys.insert(key);
      if (engine_keys != oracle) ok = false;
      ++checked;
      for (const auto& [key, state] : engine) walk(state, depth - 1);
    };
    auto root = r.keeper_completion(game->initial_state());
    const auto oracle_roots = rbg::oracle::oracle_keeper_completions(desc, game->initial_state());
    if (oracle_roots != std::set<std::string>{rbg::encode_state(root)}) ok = false;
    walk(root, 3);
  }
  const double t = seconds_since(start);
  ok = ok && t < 120;
  std::ostringstream out;
  out << checked << " nodes compared in " << t << " s";
  return {ok, out.str()};
}

std::pair<bool, std::string> c7() {
  std::mt19937 rng(2024);
  const std::vector<std::string> atoms = {"l", "r", "u"};
  std::function<std::string(int)> gen = [&](int budget) -> std::string {
    if (budget <= 1) return atoms[rng() % atoms.size()];
    switch (rng() % 3) {
      case 0: return "(" + gen(budget / 2) + " " + gen(budget - budget / 2) + ")";
      case 1: return "(" + gen(budget / 2) + " + " + gen(budget - budget / 2) + ")";
      default: return "(" + gen(budget - 1) + ")*";
    }
  };
  constexpr int kPrefix = 5;
  constexpr int kSuffix = 4;
  std::uint64_t comparisons = 0;
  std::uint64_t disagreements = 0;
  for (int round = 0; round < 500; ++round) {
    const std::string rules = gen(1 + static_cast<int>(rng() % 6));
    auto d = rbg::parse_description_text("#players = p(1) #pieces = e #variables = #board = v [e] {l: v, r: v, u: v} "
                                         "#rules = " + rules);
    const int n = d.rules.action_count();
    auto nfa = rbg::build_nfa(*d.rules.root, n);
    rbg::oracle::Terms terms;
    // Derivative terms of every prefix, grouped by the last action.
    std::map<int, std::set<int>> reached;
    std::vector<int> level{terms.from_expr(*d.rules.root)};
    reached[0].insert(level[0]);
    for (int len = 1; len <= kPrefix; ++len) {
      std::vector<int> next;
      std::set<int> seen;
      for (int t : level) {
        for (int a = 1; a <= n; ++a) {
          const int dt = terms.derive(t, a);
          if (dt == rbg::oracle::Terms::kNull) continue;
          reached[a].insert(dt);
          if (seen.insert(dt).second) next.push_back(dt);
        }
      }
      level = std::move(next);
    }
    std::vector<std::vector<int>> suffixes{{}};
    for (std::size_t i = 0; i < suffixes.size(); ++i) {
      if (static_cast<int>(suffixes[i].size()) == kSuffix) continue;
      for (int a = 1; a <= n; ++a) {
        auto w = suffixes[i];
        w.push_back(a);
        suffixes.push_back(std::move(w));
      }
    }
    for (const auto& [index, term_set] : reached) {
      for (int term : term_set) {
        for (const auto& w : suffixes) {
          int t = term;
          for (int a : w) t = terms.derive(t, a);
          ++comparisons;
          if (terms.nullable(t) != rbg::continuation_accepts(nfa, index, w)) ++disagreements;
          if ((t != rbg::oracle::Terms::kNull) != rbg::continuation_membership(nfa, index, w)) ++disagreements;
        }
      }
    }
  }
  return {disagreements == 0, "500 expressions, " + std::to_string(comparisons) + " prefix/suffix pairs, " +
                                  std::to_string(disagreements) + " disagreements"};
}

std::pair<bool, std::string> c8() {
  rbg::ReasonerOptions debug;
  debug.debug_keeper = true;
  bool ok = true;
  std::string detail;
  for (const char* name : {"breakthrough", "breakthrough3x3", "tictactoe", "connect4", "reversi"}) {
    auto game = rbg::test::corpus_game(name);
    try {
      rbg::perft(*game, root_of(*game, debug), 2, 1, debug);
    } catch (const rbg::Error& e) {
      ok = false;
      detail += std::string(name) + ": " + e.what() + "; ";
    }
  }
  auto fixture = rbg::test::corpus_game("keeper_nondeterminism");
  bool fired = false;
  try {
    root_of(*fixture, debug);
  } catch (const rbg::Error& e) {
    fired = e.code() == rbg::ErrorCode::KeeperNondeterminism;
  }
  ok = ok && fired;
  if (detail.empty()) detail = "corpus passes the keeper check, fixture ";
  detail += fired ? "raises KeeperNondeterminism" : "does not raise KeeperNondeterminism";
  return {ok, detail};
}

std::pair<bool, std::string> c9() {
  auto game = rbg::test::corpus_game("breakthrough");
  const auto root = root_of(*game);
  std::ostringstream out;
  bool ok = true;
  rbg::oracle::BreakthroughBoard reference;
  for (int depth = 1; depth <= 3; ++depth) ok = ok && reference.perft(depth) == kBreakthroughPerft[depth];
  for (int depth = 1; depth <= 4; ++depth) {
    const auto leaves = rbg::perft(*game, root, depth).leaves;
    ok = ok && leaves == kBreakthroughPerft[depth];
    out << leaves << (depth < 4 ? " " : "");
  }
  const auto mc = rbg::monte_carlo(*game, 100, 1);
  for (const auto& s : mc.final_scores) {
    ok = ok && s.size() == 2 && s[0] + s[1] == 100 && (s[0] == 0 || s[0] == 100);
  }
  ok = ok && mc.final_scores.size() == 100;
  out << "; 100 playouts, scores in {0,100} summing to 100";
  return {ok, "perft 1-4 = " + out.str()};
}

std::pair<bool, std::string> c10() {
  auto game = rbg::test::corpus_game("breakthrough");
  const auto root = root_of(*game);
  const auto start = Clock::now();
  const auto r = rbg::perft(*game, root, 4);
  const double t = seconds_since(start);
  const double rate = static_cast<double>(r.nodes) / t;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%.0f nodes/s on breakthrough perft(4) (reference interpreter: %lld nodes/s)", rate,
                static_cast<long long>(rbg::kReferenceInterpreterNodesPerSecond));
  return {rate >= 100000, buf};
}

}  // namespace

int main() {
  criterion(1, c1);
  criterion(2, c2);
  criterion(3, c3);
  criterion(4, c4);
  criterion(5, c5);
  criterion(6, c6);
  criterion(7, c7);
  criterion(8, c8);
  criterion(9, c9);
  criterion(10, c10);
  return failures == 0 ? 0 : 1;
}
