#pragma once

// Concept-graphs of CIL terms and their Graphviz rendering.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "cil/cil.hpp"

namespace cil {

struct GraphVertex {
  enum class Kind { Root, Internal, Folded, Exists, Bar, Loose, Variable };
  Kind kind;
  std::string label;
};

/// Open digraph built inductively over the term.  A wire is the list of
/// vertices whose open edges meet at one anchor; fusing wires concatenates
/// the lists.  Constants are shared terminals, one per name.
struct ConceptGraph {
  std::vector<GraphVertex> vertices;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::vector<std::size_t>> wires;  // left to right
  std::size_t root = 0;

  std::size_t open_edge_count() const { return wires.size(); }
};

ConceptGraph concept_graph(const TermPtr& t);
std::string to_dot(const ConceptGraph& g, const std::string& name = "T");
std::string dot_export(const TermPtr& t);

}  // namespace cil
