#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rbg/lexer.hpp"

namespace rbg {

struct MacroDef {
  std::string name;
  std::vector<std::string> params;
  bool has_params = false;  // `#m(a) = ...` as opposed to `#m = ...`
  std::vector<Token> body;
  SourceSpan span;
};

struct ExpansionOptions {
  int depth_limit = 64;
};

// Consumes every macro definition and substitutes all later instantiations.
// The result contains only `#section = ...` items, in source order.
TokenStream expand_macros(const TokenStream& stream, const ExpansionOptions& options = {});

// ---------------------------------------------------------------------------
// Board generators

using Cell = std::optional<std::string>;  // absent = omitted vertex
using Grid = std::vector<std::vector<Cell>>;

struct GeneratedEdge {
  std::string from;
  std::string label;
  std::string to;
  friend bool operator==(const GeneratedEdge&, const GeneratedEdge&) = default;
};

struct GeneratedBoard {
  struct Vertex {
    std::string name;
    std::string piece;
  };
  std::vector<Vertex> vertices;  // vertices[0] is the starting vertex
  std::vector<GeneratedEdge> edges;

  // LL `#board` body: one node per vertex, edges sorted by label.
  std::vector<Token> to_tokens() const;
};

struct RectangleLabels {
  std::string up, down, left, right;
};
struct HexagonLabels {
  std::string north_west, north_east, east, south_east, south_west, west;
};
struct CuboidLabels {
  std::string up, down, left, right, front, back;
};

GeneratedBoard generate_rectangle(const RectangleLabels& labels, const Grid& rows);
GeneratedBoard generate_hexagon(const HexagonLabels& labels, const Grid& rows);
// layers[0] is the back layer; `front` moves towards later layers.
GeneratedBoard generate_cuboid(const CuboidLabels& labels, const std::vector<Grid>& layers);

// Replaces a `rectangle(...)`, `hexagon(...)` or `cuboid(...)` board section
// body with the equivalent explicit node list. Other sections are untouched.
TokenStream instantiate_generators(const TokenStream& stream);

// `E^n`, comma separated offs and comma separated assignments.
TokenStream desugar(const TokenStream& stream);

// expand_macros -> instantiate_generators -> desugar.
TokenStream compile_hl_to_ll(const TokenStream& stream, const ExpansionOptions& options = {});

// Canonical LL text: sections in the order players, pieces, variables, board,
// rules; one board node per line; rules broken after every switch, indented
// by two spaces. Output re-lexes to the same token sequence.
std::string print_ll(const TokenStream& ll);

// Convenience: tokenize, compile and print.
std::string compile_hl_text(std::string_view source, const ExpansionOptions& options = {});

}  // namespace rbg
