#include <doctest.h>

#include <map>
#include <set>

#include "rbg/hl_frontend.hpp"
#include "support.hpp"

using rbg::ErrorCode;

namespace {

std::string expand(const std::string& src) { return rbg::join_tokens(rbg::expand_macros(rbg::tokenize(src)).tokens); }

template <class F>
ErrorCode error_of(F&& f) {
  try {
    f();
  } catch (const rbg::Error& e) {
    return e.code();
  }
  FAIL("no error");
  return ErrorCode::SyntaxError;
}

rbg::Grid grid(std::initializer_list<std::initializer_list<const char*>> rows) {
  rbg::Grid g;
  for (const auto& r : rows) {
    std::vector<rbg::Cell> row;
    for (const char* c : r) row.push_back(c ? rbg::Cell(c) : std::nullopt);
    g.push_back(row);
  }
  return g;
}

// (vertex, label) -> target, by name.
std::map<std::pair<std::string, std::string>, std::string> edge_map(const rbg::BoardGraph& b) {
  std::map<std::pair<std::string, std::string>, std::string> out;
  for (int v = 0; v < b.vertex_count(); ++v) {
    for (int d = 0; d < b.direction_count(); ++d) {
      int t = b.step(v, d);
      if (t != rbg::kNone) out[{b.vertices[v], b.directions[d]}] = b.vertices[t];
    }
  }
  return out;
}

const rbg::RectangleLabels kRect{"up", "down", "left", "right"};

}  // namespace

TEST_CASE("macro visibility follows definition order") {
  CHECK(expand("#m0 = m1 #m1 = x #rules = m0") == "# rules = m1");
  CHECK(expand("#m1 = x #m2 = m1 #rules = m2") == "# rules = x");
  CHECK(expand("#m3(a;b) = a + b #m4 = m3(x;y) #rules = m4") == "# rules = x + y");
  CHECK(expand("#m3(a;b) = a + b #m5 = m3(;) #rules = m5") == "# rules = +");
  CHECK(expand("#m3(a;b) = a + b #m6 = m3 #rules = m6") == "# rules = m3");
  CHECK(expand("#m1 = x #m7 = m1(x) #rules = m7") == "# rules = x ( x )");
}

TEST_CASE("token pasting") {
  CHECK(expand("#m1 = x~y #m2 = m1 #rules = m2") == "# rules = xy");
  CHECK(expand("#m3(a;b) = a~b #rules = m3(x;y)") == "# rules = xy");
  CHECK(expand("#m3(a;b) = a~b #rules = m3(1;2)") == "# rules = 12");
  CHECK(expand("#m3(a;b) = a~b #rules = m3(x~y;z)") == "# rules = xyz");
  CHECK(error_of([] { expand("#m3(a;b) = a~b #rules = m3(8;y)"); }) == ErrorCode::InvalidPaste);
  CHECK(error_of([] { expand("#m = +~+ #rules = m"); }) == ErrorCode::InvalidPaste);
  CHECK(expand("#m = -~> #rules = m") == "# rules = ->");
  CHECK(expand("#m = -~>~> #rules = m") == "# rules = ->>");
}

TEST_CASE("macro definitions: overloading by arity") {
  CHECK_NOTHROW(expand("#m1 = x #m2(a) = a #m2(a;b) = a+b #rules = m2(p) m2(p;q)"));
  CHECK(expand("#m2(a) = a #m2(a;b) = a+b #rules = m2(p) m2(p;q)") == "# rules = p p + q");
  CHECK(error_of([] { expand("#m2(a) = a #m2(b) = b"); }) == ErrorCode::DuplicateMacro);
  CHECK(error_of([] { expand("#m2(a) = a #m2 = x"); }) == ErrorCode::DuplicateMacro);
  CHECK(error_of([] { expand("#m2 = x #m2(a) = a"); }) == ErrorCode::DuplicateMacro);
  CHECK(error_of([] { expand("#m3(a;b) = a #rules = m3(x)"); }) == ErrorCode::ArityMismatch);
  CHECK(error_of([] { expand("#m(a;a) = a"); }) == ErrorCode::SyntaxError);
}

TEST_CASE("arguments are spliced verbatim") {
  CHECK(expand("#m(a) = [a] #rules = m(x, y)") == "# rules = [ x , y ]");
  CHECK(expand("#m(a) = a* #rules = m(up + down)") == "# rules = up + down *");
  CHECK(expand("#m(a;b) = b a #rules = m((p;q);r)") == "# rules = r ( p ; q )");
}

TEST_CASE("expansion depth limit") {
  std::string src = "#m0 = x";
  for (int i = 1; i <= 6; ++i) src += " #m" + std::to_string(i) + " = m" + std::to_string(i - 1);
  src += " #rules = m6";
  rbg::ExpansionOptions shallow;
  shallow.depth_limit = 3;
  CHECK(error_of([&] { rbg::expand_macros(rbg::tokenize(src), shallow); }) == ErrorCode::RecursiveExpansionLimit);
  CHECK(rbg::join_tokens(rbg::expand_macros(rbg::tokenize(src)).tokens) == "# rules = x");
}

TEST_CASE("rectangle generator") {
  auto full = rbg::generate_rectangle(kRect, grid({{"e", "e", "e"}, {"e", "e", "e"}, {"e", "e", "e"}}));
  CHECK(full.vertices.size() == 9);
  CHECK(full.edges.size() == 24);
  CHECK(full.vertices[0].name == "v00");
  int centre_degree = 0;
  for (const auto& e : full.edges) centre_degree += e.from == "v11";
  CHECK(centre_degree == 4);

  auto holed = rbg::generate_rectangle(kRect, grid({{"e", "e", "e"}, {"e", nullptr, "e"}, {"e", "e", "e"}}));
  CHECK(holed.vertices.size() == 8);
  for (const auto& e : holed.edges) {
    CHECK(e.from != "v11");
    CHECK(e.to != "v11");
  }
  CHECK(holed.edges.size() == 16);

  auto single = rbg::generate_rectangle(kRect, grid({{"e"}}));
  CHECK(single.vertices.size() == 1);
  CHECK(single.edges.empty());

  CHECK(error_of([] { rbg::generate_rectangle(kRect, grid({{"e", "e"}, {"e"}})); }) == ErrorCode::RaggedRows);
  CHECK(error_of([] { rbg::generate_rectangle(kRect, rbg::Grid{}); }) == ErrorCode::EmptyBoard);
  CHECK(error_of([] { rbg::generate_rectangle(kRect, grid({{nullptr}})); }) == ErrorCode::EmptyBoard);
}

TEST_CASE("start vertex is the first present cell") {
  auto b = rbg::generate_rectangle(kRect, grid({{nullptr, "e"}, {"e", "e"}}));
  CHECK(b.vertices[0].name == "v10");
}

TEST_CASE("wide boards use a separator in names") {
  rbg::Grid row(1);
  for (int i = 0; i < 11; ++i) row[0].push_back(rbg::Cell("e"));
  auto b = rbg::generate_rectangle(kRect, row);
  CHECK(b.vertices[10].name == "v10x0");
  auto reparsed = rbg::tokenize(rbg::join_tokens(b.to_tokens()));
  CHECK(reparsed.tokens.size() == b.to_tokens().size());
}

TEST_CASE("hexagon generator matches the explicit 7-vertex board") {
  const std::string explicit_board =
      "v00[e]{east:v10,southEast:v11,southWest:v01}\n"
      "v10[e]{southEast:v21,southWest:v11,west:v00}\n"
      "v01[e]{east:v11,northEast:v00,southEast:v02}\n"
      "v11[e]{east:v21,northEast:v10,northWest:v00,southEast:v12,southWest:v02,west:v01}\n"
      "v21[e]{northWest:v10,southWest:v12,west:v11}\n"
      "v02[e]{east:v12,northEast:v11,northWest:v01}\n"
      "v12[e]{northEast:v21,northWest:v11,west:v02}\n";
  const std::string head = "#players = p(1)\n#pieces = e\n#variables =\n#rules = ->p\n#board = ";
  auto generated = rbg::parse_description_text(
      head + "hexagon(northWest, northEast, east, southEast, southWest, west,\n  [e,e]\n [e,e,e]\n  [e,e])");
  auto listed = rbg::parse_description_text(head + explicit_board);
  CHECK(generated.board.vertices == listed.board.vertices);
  CHECK(generated.board.start_vertex == listed.board.start_vertex);
  CHECK(edge_map(generated.board) == edge_map(listed.board));
  CHECK(generated.initial_pieces == listed.initial_pieces);
}

TEST_CASE("hexagon shapes") {
  const rbg::HexagonLabels labels{"nw", "ne", "e", "se", "sw", "w"};
  auto row = [](int n) { return std::vector<rbg::Cell>(static_cast<std::size_t>(n), rbg::Cell("e")); };
  CHECK(error_of([&] { rbg::generate_hexagon(labels, {row(4), row(5), row(6), row(6)}); }) ==
        ErrorCode::InvalidHexShape);
  CHECK(error_of([&] { rbg::generate_hexagon(labels, {row(2), row(4)}); }) == ErrorCode::InvalidHexShape);
  CHECK_NOTHROW(rbg::generate_hexagon(labels, {row(4), row(5), row(6), row(5), row(4), row(3)}));
  auto single = rbg::generate_hexagon(labels, {row(1)});
  CHECK(single.vertices.size() == 1);
  CHECK(single.edges.empty());
  // Every edge has its reverse under the opposite label.
  auto big = rbg::generate_hexagon(labels, {row(3), row(4), row(5), row(4), row(3)});
  const std::map<std::string, std::string> opposite = {{"nw", "se"}, {"se", "nw"}, {"ne", "sw"},
                                                       {"sw", "ne"}, {"e", "w"},   {"w", "e"}};
  std::set<std::tuple<std::string, std::string, std::string>> edges;
  for (const auto& e : big.edges) edges.emplace(e.from, e.label, e.to);
  for (const auto& e : big.edges) CHECK(edges.count({e.to, opposite.at(e.label), e.from}) == 1);
  CHECK(big.vertices.size() == 19);
  CHECK(big.edges.size() == 2 * 42);
}

TEST_CASE("cuboid generator") {
  const rbg::CuboidLabels labels{"up", "down", "left", "right", "front", "back"};
  auto two = rbg::generate_cuboid(labels, {grid({{"a"}}), grid({{"b"}})});
  CHECK(two.vertices.size() == 2);
  CHECK(two.edges.size() == 2);
  auto one = rbg::generate_cuboid(labels, {grid({{"a"}})});
  CHECK(one.vertices.size() == 1);
  CHECK(one.edges.empty());
  CHECK(error_of([&] { rbg::generate_cuboid(labels, {grid({{"a", "a"}}), grid({{"b"}})}); }) ==
        ErrorCode::RaggedLayers);
  CHECK(error_of([&] { rbg::generate_cuboid(labels, {}); }) == ErrorCode::EmptyBoard);

  auto desc = rbg::parse_description_text(
      "#players = p(1)\n#pieces = e, w, b\n#variables =\n#rules = ->p\n"
      "#board = cuboid(up, down, left, right, front, back,\n"
      "  [[e,e,e]\n   [e,e,e]]\n  [[w,w,w]\n   [w,w,w]]\n  [[b,b,b]\n   [b,b,b]])");
  CHECK(desc.board.vertex_count() == 18);
  const int back = *desc.board.find_direction("back");
  const int e = *desc.find_piece("e");
  const int b = *desc.find_piece("b");
  int reached = 0;
  for (int v = 0; v < desc.board.vertex_count(); ++v) {
    if (desc.initial_pieces[v] != b) continue;
    int t = desc.board.step(v, back);
    REQUIRE(t != rbg::kNone);
    t = desc.board.step(t, back);
    REQUIRE(t != rbg::kNone);
    CHECK(desc.initial_pieces[t] == e);
    CHECK(desc.board.step(t, back) == rbg::kNone);
    ++reached;
  }
  CHECK(reached == 6);
}

TEST_CASE("desugaring") {
  auto sugar = [](const std::string& s) { return rbg::join_tokens(rbg::desugar(rbg::tokenize(s)).tokens); };
  CHECK(sugar("#rules = up^8") == "# rules = up up up up up up up up");
  CHECK(sugar("#rules = up^1") == "# rules = up");
  CHECK(sugar("#rules = (up left)^2") == "# rules = ( up left ) ( up left )");
  CHECK(sugar("#rules = {? up}^2") == "# rules = {? up } {? up }");
  CHECK(sugar("#rules = [$ player1 = 0,player2 = 100]") == "# rules = [$ player1 = 0 ] [$ player2 = 100 ]");
  CHECK(sugar("#rules = [a, b, c]") == "# rules = ( [ a ] + [ b ] + [ c ] )");
  CHECK(error_of([&] { sugar("#rules = up^0"); }) == ErrorCode::ZeroPower);
  CHECK(error_of([&] { sugar("#rules = [$ x = 1, a]"); }) == ErrorCode::MixedCommaList);
}

TEST_CASE("comma offs keep precedence") {
  auto desc = rbg::test::tiny_description("->p up [a, b]*");
  const auto& root = *desc.rules.root;
  REQUIRE(root.kind == rbg::Expr::Kind::Concat);
  REQUIRE(root.children.size() == 3);
  CHECK(root.children[2].kind == rbg::Expr::Kind::Star);
  CHECK(root.children[2].children[0].kind == rbg::Expr::Kind::Sum);
}

TEST_CASE("compiling LL output again is the identity") {
  for (const char* game : {"breakthrough", "breakthrough3x3", "tictactoe", "connect4", "reversi"}) {
    const std::string once = rbg::compile_hl_text(rbg::test::read_source(std::string("games/") + game + ".rbg"));
    CHECK(rbg::compile_hl_text(once) == once);
  }
}

TEST_CASE("the turn macro produces the same block for both colours") {
  auto desc = rbg::parse_description_text(rbg::test::read_source("games/breakthrough.rbg"));
  const auto& star = desc.rules.root->children.at(1);
  REQUIRE(star.kind == rbg::Expr::Kind::Star);
  const auto& body = star.children.at(0);
  const std::string printed = rbg::print_rules(body, desc);
  const std::string manual =
      "((up* + down*) (left* + right*)) {w} [e] up ({e} + (left + right) {e, b}) ->> [w] [$white = 100] "
      "[$black = 0] ({!up} ->> {} + {?up} ->black) "
      "((up* + down*) (left* + right*)) {b} [e] down ({e} + (left + right) {e, w}) ->> [b] [$black = 100] "
      "[$white = 0] ({!down} ->> {} + {?down} ->white)";
  CHECK(rbg::test::squeeze(printed) == rbg::test::squeeze(manual));
}

TEST_CASE("generators may come from macros") {
  auto desc = rbg::parse_description_text(
      "#line(piece) = [piece,piece,piece]\n#players = white(1), black(1)\n"
      "#pieces = blackPawn, empty, whitePawn\n#variables =\n"
      "#board = rectangle(up,down,left,right, line(blackPawn) line(empty) line(whitePawn))\n#rules = ->white");
  CHECK(desc.board.vertex_count() == 9);
  CHECK(desc.pieces[desc.initial_pieces[0]] == "blackPawn");
  CHECK(desc.pieces[desc.initial_pieces[8]] == "whitePawn");
}
