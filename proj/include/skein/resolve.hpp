#pragma once

// Base-point machinery and resolving trees: ordered traversal from one base
// point per component, bad-crossing detection, the untangled predicate, and
// the standard tree construction (branch on switch/smooth at the first bad
// crossing until every leaf is untangled).

#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "skein/diagram.hpp"
#include "skein/error.hpp"

namespace skein {

// One base point per strand component (an edge; base points sit inside an
// edge, never on a crossing) plus the traversal order of components.
struct BasePoints {
  std::vector<int> comp_order;  // permutation of strand component positions
  std::vector<int> base_edge;   // base_edge[i] lies on component comp_order[i]
};

using BaseStrategy = std::function<BasePoints(const Diagram&)>;

inline BasePoints default_base_points(const Diagram& d) {
  BasePoints bp;
  for (int k = 0; k < d.num_strand_components(); ++k) {
    bp.comp_order.push_back(k);
    bp.base_edge.push_back(d.component_edges(k).front());
  }
  return bp;
}

inline BaseStrategy default_strategy() {
  return [](const Diagram& d) { return default_base_points(d); };
}

// Deterministic pseudo-random strategy: the same diagram value always gets
// the same base points for a fixed salt, which keeps memoized evaluation
// coherent while exercising arbitrary choices.
inline BaseStrategy salted_strategy(uint64_t salt) {
  return [salt](const Diagram& d) {
    std::string s = d.serialize();
    uint64_t h = 1469598103934665603ull ^ salt;
    for (char c : s) {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ull;
    }
    std::mt19937_64 rng(h);
    BasePoints bp = default_base_points(d);
    for (size_t i = bp.comp_order.size(); i > 1; --i)
      std::swap(bp.comp_order[i - 1], bp.comp_order[rng() % i]);
    for (size_t i = 0; i < bp.comp_order.size(); ++i) {
      const auto& comp = d.component_edges(bp.comp_order[i]);
      bp.base_edge[i] = comp[rng() % comp.size()];
    }
    return bp;
  };
}

inline void validate_base_points(const Diagram& d, const BasePoints& bp) {
  check(bp.comp_order.size() == static_cast<size_t>(d.num_strand_components()) &&
            bp.base_edge.size() == bp.comp_order.size(),
        Err::Internal, "one base point per component");
  std::vector<bool> seen(d.num_strand_components(), false);
  for (size_t i = 0; i < bp.comp_order.size(); ++i) {
    int k = bp.comp_order[i];
    check(k >= 0 && k < d.num_strand_components() && !seen[k], Err::Internal,
          "component order is not a permutation");
    seen[k] = true;
    check(d.component_of_edge(bp.base_edge[i]) == k, Err::Internal,
          "base edge not on its component");
  }
}

// Crossings first met through their under-strand, in traversal order.
inline std::vector<int> bad_crossings(const Diagram& d, const BasePoints& bp) {
  validate_base_points(d, bp);
  std::vector<char> met(d.num_crossings(), 0);
  std::vector<int> bad;
  for (size_t i = 0; i < bp.comp_order.size(); ++i) {
    int start = bp.base_edge[i];
    int cur = start;
    do {
      int h = d.mate(cur);
      int c = Diagram::dart_crossing(h);
      if (!met[c]) {
        met[c] = 1;
        if (Diagram::dart_port(h) == 0) bad.push_back(c);
      }
      cur = d.next_edge(cur);
    } while (cur != start);
  }
  return bad;
}

inline int bad_count(const Diagram& d, const BasePoints& bp) {
  return static_cast<int>(bad_crossings(d, bp).size());
}

inline bool is_untangled(const Diagram& d, const BasePoints& bp) {
  return bad_crossings(d, bp).empty();
}

// First bad crossing or -1 when the diagram is untangled.
inline int first_bad_crossing(const Diagram& d, const BasePoints& bp) {
  auto bad = bad_crossings(d, bp);
  return bad.empty() ? -1 : bad.front();
}

// Switch every bad crossing. The result is untangled with respect to the same
// base points, which are returned mapped through the switches.
inline std::pair<Diagram, BasePoints> make_untangled(const Diagram& d, const BasePoints& bp) {
  auto bad = bad_crossings(d, bp);
  Diagram out = d;
  BasePoints nbp = bp;
  for (int c : bad) {
    for (auto& e : nbp.base_edge) e = out.switch_dart_map(c, e);
    out = out.with_switch(c);
  }
  return {std::move(out), std::move(nbp)};
}

// --- resolving trees ----------------------------------------------------------

enum class Convention { modern, old };

// Under the modern convention a positive crossing is L+ and resolves with |;
// the old flag inverts the roles of L+ and L-, i.e. swaps | and *.
inline bool resolves_with_pipe(int sign, Convention conv) {
  return (sign > 0) == (conv == Convention::modern);
}

struct ResolvingTree {
  struct Node {
    bool leaf = false;
    int leaf_components = 0;  // n for leaves
    int crossing_label = 0;   // diagram label of the branching crossing
    int sign = 0;             // +1 / -1
    std::unique_ptr<Node> switched, smoothed;
  };
  std::unique_ptr<Node> root;
  size_t node_count = 0;

  int internal_nodes() const { return count(root.get(), false); }
  int leaves() const { return count(root.get(), true); }

 private:
  static int count(const Node* n, bool leaves) {
    if (!n) return 0;
    if (n->leaf) return leaves ? 1 : 0;
    return (leaves ? 0 : 1) + count(n->switched.get(), leaves) +
           count(n->smoothed.get(), leaves);
  }
};

namespace detail {

inline std::unique_ptr<ResolvingTree::Node> build_tree_node(
    const Diagram& d, const BasePoints& bp, const BaseStrategy& strategy,
    size_t& budget) {
  check(budget > 0, Err::TreeTooLarge, "resolving tree exceeds the node cap");
  --budget;
  auto node = std::make_unique<ResolvingTree::Node>();
  int p = first_bad_crossing(d, bp);
  if (p < 0) {
    node->leaf = true;
    node->leaf_components = d.num_components();
    return node;
  }
  node->crossing_label = d.crossing_label(p);
  node->sign = d.sign(p);
  // switched child keeps the same base points (mapped through the switch);
  // the smoothed child re-chooses via the strategy since its components
  // changed.
  BasePoints sbp = bp;
  for (auto& e : sbp.base_edge) e = d.switch_dart_map(p, e);
  Diagram sw = d.with_switch(p);
  node->switched = build_tree_node(sw, sbp, strategy, budget);
  Diagram sm = d.with_smooth(p);
  node->smoothed = build_tree_node(sm, strategy(sm), strategy, budget);
  return node;
}

}  // namespace detail

inline ResolvingTree build_resolving_tree(const Diagram& d, const BaseStrategy& strategy,
                                          size_t node_cap = 1000000) {
  ResolvingTree t;
  size_t budget = node_cap;
  t.root = detail::build_tree_node(d, strategy(d), strategy, budget);
  t.node_count = node_cap - budget;
  return t;
}

inline ResolvingTree build_resolving_tree(const Diagram& d) {
  return build_resolving_tree(d, default_strategy());
}

// Fold the tree through an algebra: leaves become constants, a node with a
// positive crossing (modern convention) combines its children with |, a
// negative one with *.
template <class Algebra>
typename Algebra::Value fold_tree(const ResolvingTree::Node* node, const Algebra& alg,
                                  Convention conv = Convention::modern) {
  if (node->leaf) return alg.constant(node->leaf_components);
  auto sw = fold_tree(node->switched.get(), alg, conv);
  auto sm = fold_tree(node->smoothed.get(), alg, conv);
  return resolves_with_pipe(node->sign, conv) ? alg.pipe(sw, sm) : alg.star(sw, sm);
}

template <class Algebra>
typename Algebra::Value fold_tree(const ResolvingTree& t, const Algebra& alg,
                                  Convention conv = Convention::modern) {
  return fold_tree<Algebra>(t.root.get(), alg, conv);
}

// --- tree export ---------------------------------------------------------------

inline void export_json_node(const ResolvingTree::Node* n, std::string& out) {
  if (n->leaf) {
    out += "{\"leaf\": " + std::to_string(n->leaf_components) + "}";
    return;
  }
  out += "{\"crossing\": " + std::to_string(n->crossing_label) + ", \"sign\": \"" +
         (n->sign > 0 ? "+" : "-") + "\", \"switched\": ";
  export_json_node(n->switched.get(), out);
  out += ", \"smoothed\": ";
  export_json_node(n->smoothed.get(), out);
  out += "}";
}

inline void export_dot_node(const ResolvingTree::Node* n, std::string& out, int& next_id,
                            int my_id) {
  if (n->leaf) {
    out += "  n" + std::to_string(my_id) + " [shape=box,label=\"a" +
           std::to_string(n->leaf_components) + "\"];\n";
    return;
  }
  out += "  n" + std::to_string(my_id) + " [label=\"c" + std::to_string(n->crossing_label) +
         " (" + (n->sign > 0 ? "+" : "-") + ")\"];\n";
  int sw = next_id++;
  int sm = next_id++;
  out += "  n" + std::to_string(my_id) + " -> n" + std::to_string(sw) +
         " [label=\"switch\"];\n";
  out += "  n" + std::to_string(my_id) + " -> n" + std::to_string(sm) +
         " [label=\"smooth\"];\n";
  export_dot_node(n->switched.get(), out, next_id, sw);
  export_dot_node(n->smoothed.get(), out, next_id, sm);
}

inline std::string export_tree(const ResolvingTree& t, const std::string& format) {
  if (format == "json") {
    std::string out;
    export_json_node(t.root.get(), out);
    return out;
  }
  if (format == "dot") {
    std::string out = "digraph resolving_tree {\n";
    int next_id = 1;
    export_dot_node(t.root.get(), out, next_id, 0);
    out += "}\n";
    return out;
  }
  fail(Err::UnknownFormat, format);
}

}  // namespace skein
