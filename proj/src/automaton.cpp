#include "rbg/automaton.hpp"

#include <algorithm>

namespace rbg {

namespace {

class Builder {
 public:
  Builder(RulesNfa& nfa, int action_count) : nfa_(nfa) {
    nfa_.action_entry.assign(static_cast<std::size_t>(action_count) + 1, kNone);
  }

  struct Fragment {
    int start;
    int end;
  };

  Fragment build(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::Action: {
        int s = add_state(), t = add_state();
        link(s, e.action.index, t);
        nfa_.action_entry[static_cast<std::size_t>(e.action.index)] = t;
        return {s, t};
      }
      case Expr::Kind::Concat: {
        Fragment whole = build(e.children.front());
        for (std::size_t i = 1; i < e.children.size(); ++i) {
          Fragment next = build(e.children[i]);
          link(whole.end, 0, next.start);
          whole.end = next.end;
        }
        return whole;
      }
      case Expr::Kind::Sum: {
        int s = add_state();
        std::vector<int> ends;
        for (const auto& child : e.children) {
          Fragment f = build(child);
          link(s, 0, f.start);
          ends.push_back(f.end);
        }
        int t = add_state();
        for (int end : ends) link(end, 0, t);
        return {s, t};
      }
      case Expr::Kind::Star: {
        int s = add_state();
        Fragment body = build(e.children.front());
        int t = add_state();
        link(s, 0, body.start);
        link(s, 0, t);
        link(body.end, 0, body.start);
        link(body.end, 0, t);
        return {s, t};
      }
    }
    return {0, 0};
  }

 private:
  int add_state() {
    nfa_.transitions.emplace_back();
    return static_cast<int>(nfa_.transitions.size()) - 1;
  }
  void link(int from, int label, int to) { nfa_.transitions[static_cast<std::size_t>(from)].push_back({label, to}); }

  RulesNfa& nfa_;
};

void compute_closures(RulesNfa& nfa) {
  const std::size_t n = nfa.transitions.size();
  nfa.closure.assign(n, {});
  std::vector<int> mark(n, -1);
  std::vector<int> stack;
  for (std::size_t q = 0; q < n; ++q) {
    auto& out = nfa.closure[q];
    stack.assign(1, static_cast<int>(q));
    mark[q] = static_cast<int>(q);
    while (!stack.empty()) {
      int s = stack.back();
      stack.pop_back();
      out.push_back(s);
      const auto& ts = nfa.transitions[static_cast<std::size_t>(s)];
      // Reverse push keeps the traversal in transition order.
      for (auto it = ts.rbegin(); it != ts.rend(); ++it) {
        if (it->label == 0 && mark[static_cast<std::size_t>(it->target)] != static_cast<int>(q)) {
          mark[static_cast<std::size_t>(it->target)] = static_cast<int>(q);
          stack.push_back(it->target);
        }
      }
    }
  }
}

void flatten(RulesNfa& nfa) {
  nfa.flat_of_action.assign(nfa.action_entry.size(), kNone);
  nfa.action_of_flat.assign(1, 0);
  std::vector<int> thompson_of_flat{nfa.initial};
  for (std::size_t a = 1; a < nfa.action_entry.size(); ++a) {
    if (nfa.action_entry[a] == kNone) continue;
    nfa.flat_of_action[a] = static_cast<int>(nfa.action_of_flat.size());
    nfa.action_of_flat.push_back(static_cast<int>(a));
    thompson_of_flat.push_back(nfa.action_entry[a]);
  }
  nfa.flat_edge_begin.assign(1, 0);
  nfa.flat_accepting.clear();
  for (int q : thompson_of_flat) {
    bool accepting = false;
    for (int s : nfa.closure[static_cast<std::size_t>(q)]) {
      if (s == nfa.final_state) accepting = true;
      for (const auto& t : nfa.transitions[static_cast<std::size_t>(s)]) {
        if (t.label != 0) nfa.flat_edges.push_back({t.label, nfa.flat_of_action[static_cast<std::size_t>(t.label)]});
      }
    }
    nfa.flat_accepting.push_back(accepting ? 1 : 0);
    nfa.flat_edge_begin.push_back(static_cast<int>(nfa.flat_edges.size()));
  }
}

std::vector<int> step_set(const RulesNfa& nfa, const std::vector<int>& current, int symbol) {
  std::vector<char> seen(nfa.transitions.size(), 0);
  std::vector<int> next;
  for (int q : current) {
    for (const auto& t : nfa.transitions[static_cast<std::size_t>(q)]) {
      if (t.label != symbol || symbol == 0) continue;
      for (int s : nfa.closure[static_cast<std::size_t>(t.target)]) {
        if (!seen[static_cast<std::size_t>(s)]) {
          seen[static_cast<std::size_t>(s)] = 1;
          next.push_back(s);
        }
      }
    }
  }
  return next;
}

std::vector<int> run(const RulesNfa& nfa, int from_index, const std::vector<int>& word) {
  std::vector<int> current = nfa.closure[static_cast<std::size_t>(nfa.state_for_index(from_index))];
  for (int symbol : word) {
    if (current.empty()) break;
    current = step_set(nfa, current, symbol);
  }
  return current;
}

}  // namespace

int RulesNfa::transition_count() const {
  int n = 0;
  for (const auto& ts : transitions) n += static_cast<int>(ts.size());
  return n;
}

int RulesNfa::state_for_index(int index) const {
  if (index == 0) return initial;
  if (index < 0 || index >= static_cast<int>(action_entry.size()) ||
      action_entry[static_cast<std::size_t>(index)] == kNone) {
    throw Error(ErrorCode::UnknownIndex, "action index " + std::to_string(index) + " is not part of this expression");
  }
  return action_entry[static_cast<std::size_t>(index)];
}

int RulesNfa::flat_for_index(int index) const {
  if (index == 0) return 0;
  state_for_index(index);
  return flat_of_action[static_cast<std::size_t>(index)];
}

RulesNfa build_nfa(const Expr& rules, int action_count) {
  RulesNfa nfa;
  Builder builder(nfa, action_count);
  auto whole = builder.build(rules);
  nfa.initial = whole.start;
  nfa.final_state = whole.end;
  compute_closures(nfa);
  flatten(nfa);
  return nfa;
}

bool continuation_membership(const RulesNfa& nfa, int from_index, const std::vector<int>& word) {
  // Every Thompson state can reach the final state, so a nonempty state set
  // means the word extends to an accepted one.
  return !run(nfa, from_index, word).empty();
}

bool continuation_accepts(const RulesNfa& nfa, int from_index, const std::vector<int>& word) {
  auto states = run(nfa, from_index, word);
  return std::find(states.begin(), states.end(), nfa.final_state) != states.end();
}

std::string nfa_to_dot(const RulesNfa& nfa, const Description* desc) {
  std::string out = "digraph rules {\n  rankdir=LR;\n  node [shape=circle];\n";
  out += "  start [shape=point];\n  start -> q" + std::to_string(nfa.initial) + ";\n";
  out += "  q" + std::to_string(nfa.final_state) + " [shape=doublecircle];\n";
  for (int q = 0; q < nfa.state_count(); ++q) {
    for (const auto& t : nfa.transitions[static_cast<std::size_t>(q)]) {
      std::string label = "&epsilon;";
      if (t.label != 0) {
        label = std::to_string(t.label);
        if (desc != nullptr) {
          std::string text = print_action(desc->rules.action(t.label), *desc);
          std::string escaped;
          for (char ch : text) {
            if (ch == '"' || ch == '\\') escaped += '\\';
            escaped += ch;
          }
          label = escaped + " (" + label + ")";
        }
      }
      out += "  q" + std::to_string(q) + " -> q" + std::to_string(t.target) + " [label=\"" + label + "\"];\n";
    }
  }
  return out + "}\n";
}

}  // namespace rbg
