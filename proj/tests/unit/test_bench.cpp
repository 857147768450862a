#include <doctest.h>

#include <json.hpp>

#include "rbg/bench.hpp"
#include "support.hpp"

namespace {

rbg::GameState root_of(const rbg::Game& game) {
  rbg::Reasoner r(game);
  return r.keeper_completion(game.initial_state());
}

}  // namespace

TEST_CASE("perft small depths") {
  auto game = rbg::test::corpus_game("tictactoe");
  const auto root = root_of(*game);
  CHECK(rbg::perft(*game, root, 0).leaves == 1);
  CHECK(rbg::perft(*game, root, 0).nodes == 1);
  const auto three = rbg::perft(*game, root, 3);
  CHECK(three.leaves == 504);
  CHECK(three.nodes == 1 + 9 + 72 + 504);
  const auto threaded = rbg::perft(*game, root, 3, 3);
  CHECK(threaded.leaves == three.leaves);
  CHECK(threaded.nodes == three.nodes);
}

TEST_CASE("perft on the rest of the corpus") {
  struct Row {
    const char* game;
    int depth;
    std::uint64_t leaves;
  };
  for (const Row& row : {Row{"breakthrough3x3", 3, 174}, Row{"connect4", 3, 343}, Row{"reversi", 3, 56},
                         Row{"keeper_nondeterminism", 1, 0}}) {
    auto game = rbg::test::corpus_game(row.game);
    CHECK_MESSAGE(rbg::perft(*game, root_of(*game), row.depth, 2).leaves == row.leaves, row.game);
  }
}

TEST_CASE("monte carlo is reproducible per seed") {
  auto game = rbg::test::corpus_game("breakthrough3x3");
  const auto a = rbg::monte_carlo(*game, 40, 7);
  const auto b = rbg::monte_carlo(*game, 40, 7, 4);
  CHECK(a.final_scores == b.final_scores);
  CHECK(a.nodes == b.nodes);
  CHECK(a.total_plies == b.total_plies);
  const auto c = rbg::monte_carlo(*game, 40, 8);
  CHECK(a.final_scores != c.final_scores);
}

TEST_CASE("zero playouts") {
  auto game = rbg::test::corpus_game("tictactoe");
  const auto r = rbg::monte_carlo(*game, 0, 1);
  CHECK(r.nodes == 0);
  CHECK(r.final_scores.empty());
}

TEST_CASE("breakthrough playouts end with one winner") {
  auto game = rbg::test::corpus_game("breakthrough");
  const auto r = rbg::monte_carlo(*game, 20, 99);
  REQUIRE(r.final_scores.size() == 20);
  for (const auto& s : r.final_scores) {
    REQUIRE(s.size() == 2);
    CHECK(((s[0] == 100 && s[1] == 0) || (s[0] == 0 && s[1] == 100)));
  }
  CHECK(r.mean_scores[0] + r.mean_scores[1] == doctest::Approx(100));
}

TEST_CASE("ply limit") {
  auto game = rbg::test::corpus_game("breakthrough");
  const auto r = rbg::monte_carlo(*game, 3, 5, 1, {}, 4);
  CHECK(r.total_plies == 12);
}

TEST_CASE("uniform_below stays in range") {
  std::uint64_t state = 1;
  auto engine = [&] { return state = rbg::splitmix64(state); };
  std::vector<int> hits(5, 0);
  for (int i = 0; i < 5000; ++i) ++hits[rbg::uniform_below(engine, 5)];
  for (int h : hits) CHECK(h > 800);
}

TEST_CASE("bench record JSON") {
  rbg::BenchRecord rec;
  rec.game = "tictactoe";
  rec.command = "perft";
  rec.depth = 3;
  rec.perft = 504;
  rec.nodes = 586;
  rec.cap = 2;
  auto j = nlohmann::json::parse(rec.to_json());
  CHECK(j["perft"] == 504);
  CHECK(j["depth"] == 3);
  CHECK(j["game"] == "tictactoe");
  CHECK_FALSE(j.contains("playouts"));
  rec.command = "mc";
  rec.playouts = 10;
  j = nlohmann::json::parse(rec.to_json());
  CHECK(j["playouts"] == 10);
  CHECK_FALSE(j.contains("perft"));
}
