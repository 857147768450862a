#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "rbg/description.hpp"
#include "rbg/reasoner.hpp"

namespace rbg::test {

inline std::string source_path(const std::string& relative) { return std::string(RBG_SOURCE_DIR) + "/" + relative; }

inline std::string read_source(const std::string& relative) {
  std::ifstream in(source_path(relative), std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline std::unique_ptr<Game> corpus_game(const std::string& name) {
  return load_game(read_source("games/" + name + ".rbg"), name);
}

// A one-vertex game whose rules are `rules`; every single-letter identifier
// a..i is a piece, so `[a]` and `{b}` parse.
inline std::string tiny_game(const std::string& rules, const std::string& extra_vertices = "") {
  return "#players = p(5), q(5)\n#pieces = a, b, c, d, e, f, g, h, i\n#variables = x(3)\n"
         "#board = v [a] {}\n" +
         extra_vertices + "#rules = " + rules + "\n";
}

inline Description tiny_description(const std::string& rules) { return parse_description_text(tiny_game(rules)); }

// Whitespace-free concatenation, for token-for-token comparisons.
inline std::string squeeze(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (c != ' ' && c != '\n' && c != '\t' && c != '\r') out += c;
  }
  return out;
}

}  // namespace rbg::test
