#pragma once

#include <string>
#include <vector>

#include "rbg/description.hpp"

namespace rbg {

struct NfaTransition {
  int label;   // action index, or 0 for an epsilon move
  int target;
};

struct FlatEdge {
  int action;
  int target;  // flat state entered by reading `action`
};

// Thompson automaton of one rules expression (the top-level rules or one
// pattern body). Pattern actions are single symbols here; their bodies get
// automata of their own.
//
// The flattened view has one state per action occurrence of the expression
// (the state entered by that action) plus state 0 for the start. Its edges
// are the action-labelled transitions reachable through epsilon moves.
struct RulesNfa {
  std::vector<std::vector<NfaTransition>> transitions;
  int initial = 0;
  int final_state = 0;
  std::vector<int> action_entry;             // by action index; kNone outside this expression
  std::vector<std::vector<int>> closure;     // epsilon closure per state, DFS order

  std::vector<int> flat_of_action;           // by action index; kNone outside this expression
  std::vector<int> action_of_flat;           // 0 for the start state
  std::vector<int> flat_edge_begin;          // CSR offsets, size flat_count() + 1
  std::vector<FlatEdge> flat_edges;
  std::vector<char> flat_accepting;

  int state_count() const { return static_cast<int>(transitions.size()); }
  int flat_count() const { return static_cast<int>(action_of_flat.size()); }
  int transition_count() const;

  // Thompson state reached after `index`, the initial state for 0.
  int state_for_index(int index) const;  // throws UnknownIndex
  int flat_for_index(int index) const;   // throws UnknownIndex
};

// `action_count` is the number of indices in the whole description, so that
// lookups by global action index work for pattern automata too.
RulesNfa build_nfa(const Expr& rules, int action_count);

// True iff `word` is a prefix of some word of the continuation language after
// `from_index`.
bool continuation_membership(const RulesNfa& nfa, int from_index, const std::vector<int>& word);

// True iff `word` belongs to the continuation language itself.
bool continuation_accepts(const RulesNfa& nfa, int from_index, const std::vector<int>& word);

// Graphviz rendering of the epsilon form.
std::string nfa_to_dot(const RulesNfa& nfa, const Description* desc = nullptr);

}  // namespace rbg
