#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>

#include "rbg/analyzer.hpp"
#include "rbg/bench.hpp"
#include "rbg/hl_frontend.hpp"
#include "rbg/reasoner.hpp"

namespace py = pybind11;

namespace {

// A loaded game plus one reasoner for single-threaded queries from Python.
struct PyGame {
  std::unique_ptr<rbg::Game> game;
  std::unique_ptr<rbg::Reasoner> reasoner;

  explicit PyGame(std::unique_ptr<rbg::Game> g) : game(std::move(g)), reasoner(std::make_unique<rbg::Reasoner>(*game)) {}

  const rbg::Description& desc() const { return game->description(); }
};

std::optional<std::int64_t> finite_or_none(rbg::StraightValue v) {
  if (v.is_finite()) return v.value();
  if (v.is_bottom()) return 0;
  return std::nullopt;
}

rbg::ReasonerOptions options_with_cap(std::int64_t cap) {
  rbg::ReasonerOptions o;
  o.cap = cap;
  return o;
}

}  // namespace

PYBIND11_MODULE(_rbg, m) {
  m.doc() = "Regular boardgames: parsing, move generation and benchmarks";

  py::register_exception<rbg::Error>(m, "RbgError", PyExc_ValueError);

  py::class_<rbg::GameState>(m, "GameState")
      .def_property_readonly("player", [](const rbg::GameState& s) { return s.semi.player; })
      .def_property_readonly("position", [](const rbg::GameState& s) { return s.semi.position; })
      .def_property_readonly("rules_index", [](const rbg::GameState& s) { return s.rules_index; })
      .def_property_readonly("pieces", [](const rbg::GameState& s) { return s.semi.pieces; })
      .def_property_readonly("variables", [](const rbg::GameState& s) { return s.semi.variables; })
      .def("__eq__", [](const rbg::GameState& a, const rbg::GameState& b) { return a == b; })
      .def("__hash__", [](const rbg::GameState& s) { return py::hash(py::bytes(rbg::encode_state(s))); });

  py::class_<rbg::Move>(m, "Move")
      .def_property_readonly("steps",
                             [](const rbg::Move& mv) {
                               std::vector<std::pair<int, int>> out;
                               for (const auto& s : mv.steps) out.emplace_back(s.index, s.vertex);
                               return out;
                             })
      .def("__eq__", [](const rbg::Move& a, const rbg::Move& b) { return a == b; })
      .def("__str__", &rbg::move_to_string)
      .def("__repr__", [](const rbg::Move& mv) { return "Move(" + rbg::move_to_string(mv) + ")"; });

  py::class_<PyGame>(m, "Game")
      .def_property_readonly("players",
                             [](const PyGame& g) {
                               std::vector<std::string> out;
                               for (const auto& p : g.desc().players) out.push_back(p.name);
                               return out;
                             })
      .def_property_readonly("pieces", [](const PyGame& g) { return g.desc().pieces; })
      .def_property_readonly("vertices", [](const PyGame& g) { return g.desc().board.vertices; })
      .def_property_readonly("action_count", [](const PyGame& g) { return g.desc().rules.action_count(); })
      .def_property_readonly("strong_straightness",
                             [](const PyGame& g) { return finite_or_none(g.game->strong_straightness()); })
      .def("initial_state", [](PyGame& g) { return g.reasoner->keeper_completion(g.game->initial_state()); },
           "Keeper completion of the initial state.")
      .def("legal_moves", [](PyGame& g, const rbg::GameState& s) { return g.reasoner->legal_moves(s); })
      .def(
          "apply",
          [](PyGame& g, const rbg::GameState& s, const rbg::Move& mv) {
            rbg::GameState next = s;
            g.reasoner->apply_move(next, mv);
            return g.reasoner->keeper_completion(next);
          },
          "Plays a move and runs the keeper.")
      .def("is_terminal", [](PyGame& g, const rbg::GameState& s) { return g.reasoner->is_terminal(s); })
      .def("scores", [](PyGame& g, const rbg::GameState& s) { return g.reasoner->scores(s); })
      .def(
          "perft",
          [](PyGame& g, int depth, int threads, std::int64_t cap) {
            rbg::PerftResult r;
            {
              py::gil_scoped_release release;
              const auto options = options_with_cap(cap);
              rbg::Reasoner local(*g.game, options);
              r = rbg::perft(*g.game, local.keeper_completion(g.game->initial_state()), depth, threads, options);
            }
            return r.leaves;
          },
          py::arg("depth"), py::arg("threads") = 1, py::arg("cap") = -1)
      .def(
          "monte_carlo",
          [](PyGame& g, std::int64_t playouts, std::uint64_t seed, int threads, std::int64_t max_plies) {
            rbg::McResult r;
            {
              py::gil_scoped_release release;
              r = rbg::monte_carlo(*g.game, playouts, seed, threads, {}, max_plies);
            }
            py::dict d;
            d["playouts"] = r.playouts;
            d["nodes"] = r.nodes;
            d["total_plies"] = r.total_plies;
            d["mean_scores"] = r.mean_scores;
            d["final_scores"] = r.final_scores;
            return d;
          },
          py::arg("playouts"), py::arg("seed"), py::arg("threads") = 1, py::arg("max_plies") = -1);

  m.def(
      "load_game", [](const std::string& text, const std::string& name) { return PyGame(rbg::load_game(text, name)); },
      py::arg("text"), py::arg("name") = "<input>", "Compiles and loads a description from text.");
  m.def("load_game_file", [](const std::string& path) { return PyGame(rbg::load_game_file(path)); });
  m.def(
      "compile", [](const std::string& text) { return rbg::compile_hl_text(text); },
      "Canonical low-level text of a description.");
  m.def(
      "straightness",
      [](const std::string& text) {
        return finite_or_none(rbg::strong_straightness(rbg::parse_description_text(text)));
      },
      "Strong straightness of a description; None when unbounded.");
}
