#include "cil/dot.hpp"

#include <map>
#include <sstream>

namespace cil {

namespace {

using Wires = std::vector<std::vector<std::size_t>>;

struct Fragment {
  std::size_t root;
  Wires wires;
};

class Builder {
 public:
  ConceptGraph g;

  Fragment build(const TermPtr& t) {
    switch (kind(t)) {
      case Kind::Prim: {
        const auto& name = as<Prim>(t).name;
        if (t->sort < 0) return {constant(name), {}};
        auto v = vertex(GraphVertex::Kind::Root, name);
        return {v, Wires(static_cast<std::size_t>(t->sort), std::vector<std::size_t>{v})};
      }
      case Kind::PseudoVar:
        return {vertex(GraphVertex::Kind::Variable, as<PseudoVar>(t).name), {}};
      case Kind::Comb:
        return comb(as<Comb>(t));
      case Kind::Link: {
        const auto& n = as<Link>(t);
        auto f = build(n.body);
        Wires out;
        for (const auto& b : n.seq.blocks()) {
          auto& w = out.emplace_back();
          for (auto i : b) w.insert(w.end(), f.wires[i].begin(), f.wires[i].end());
        }
        return {f.root, std::move(out)};
      }
      case Kind::Per: {
        const auto& n = as<Per>(t);
        auto f = build(n.body);
        Wires out(f.wires.size());
        for (std::size_t i = 0; i < f.wires.size(); ++i) out[n.seq(i)] = f.wires[i];
        return {f.root, std::move(out)};
      }
      case Kind::Dum: {
        const auto& n = as<Dum>(t);
        auto f = build(n.body);
        Wires out;
        std::size_t k = 0;
        for (bool orig : n.seq.mask()) {
          if (orig)
            out.push_back(f.wires[k++]);
          else
            out.push_back({vertex(GraphVertex::Kind::Loose, "")});
        }
        return {f.root, std::move(out)};
      }
      case Kind::Neg: {
        auto f = build(as<Neg>(t).body);
        auto r = vertex(GraphVertex::Kind::Root, "¬");
        link_root(r, f.root);
        Wires out;
        for (const auto& w : f.wires) {
          auto bar = vertex(GraphVertex::Kind::Bar, "¬");
          for (auto s : w) g.edges.emplace_back(s, bar);
          out.push_back({bar});
        }
        return {r, std::move(out)};
      }
      case Kind::Conj: {
        const auto& n = as<Conj>(t);
        auto r = vertex(GraphVertex::Kind::Root, "&");
        auto a = build(n.left);
        auto b = build(n.right);
        link_root(r, a.root);
        link_root(r, b.root);
        Wires out = a.wires;
        for (std::size_t i = 0; i < out.size(); ++i) out[i].insert(out[i].end(), b.wires[i].begin(), b.wires[i].end());
        return {r, std::move(out)};
      }
      case Kind::Ex: {
        const auto& n = as<Ex>(t);
        auto f = build(n.body);
        Wires out;
        for (std::size_t i = 0; i < n.seq.size(); ++i) {
          if (!n.seq[i]) {
            out.push_back(f.wires[i]);
            continue;
          }
          auto e = vertex(GraphVertex::Kind::Exists, "∃");
          for (auto s : f.wires[i]) g.edges.emplace_back(s, e);
        }
        return {f.root, std::move(out)};
      }
    }
    return {0, {}};
  }

 private:
  std::map<std::string, std::size_t> consts_;

  std::size_t vertex(GraphVertex::Kind k, std::string label) {
    g.vertices.push_back({k, std::move(label)});
    return g.vertices.size() - 1;
  }

  std::size_t constant(const std::string& name) {
    auto it = consts_.find(name);
    if (it != consts_.end()) return it->second;
    auto v = vertex(GraphVertex::Kind::Root, name);
    consts_.emplace(name, v);
    return v;
  }

  void link_root(std::size_t from, std::size_t to) {
    if (g.vertices[to].kind == GraphVertex::Kind::Root) g.vertices[to].kind = GraphVertex::Kind::Internal;
    g.edges.emplace_back(from, to);
  }

  Fragment comb(const Comb& n) {
    auto head = build(n.head);
    Wires out;
    for (std::size_t i = 0; i < n.seq.size(); ++i) {
      if (n.seq.is_star(i)) {
        out.push_back(head.wires[i]);
        continue;
      }
      auto a = build(n.args[n.seq.arg_index(i)]);
      for (auto s : head.wires[i]) link_root(s, a.root);
      if (head.wires[i].empty()) link_root(head.root, a.root);
      std::size_t folded = a.wires.size() - static_cast<std::size_t>(n.seq[i]);
      for (std::size_t k = 0; k < a.wires.size(); ++k) {
        if (k >= folded) {
          out.push_back(a.wires[k]);
          continue;
        }
        auto f = vertex(GraphVertex::Kind::Folded, "");
        for (auto s : a.wires[k]) g.edges.emplace_back(s, f);
      }
    }
    return {head.root, std::move(out)};
  }
};

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string attributes(const GraphVertex& v) {
  using K = GraphVertex::Kind;
  switch (v.kind) {
    case K::Root:
    case K::Internal:
      return "label=" + quote(v.label) + ", shape=ellipse";
    case K::Folded:
      return "label=\"\", shape=circle, style=filled, fillcolor=black, width=0.15";
    case K::Exists:
      return "label=\"∃\", shape=plaintext";
    case K::Bar:
      return "label=\"¬\", shape=box, style=filled, fillcolor=lightgray, height=0.1";
    case K::Loose:
      return "label=\"\", shape=point";
    case K::Variable:
      return "label=" + quote(v.label) + ", shape=box";
  }
  return "";
}

}  // namespace

ConceptGraph concept_graph(const TermPtr& t) {
  Builder b;
  auto f = b.build(t);
  b.g.root = f.root;
  b.g.wires = std::move(f.wires);
  return std::move(b.g);
}

std::string to_dot(const ConceptGraph& g, const std::string& name) {
  std::ostringstream o;
  o << "digraph " << quote(name) << " {\n";
  o << "  rankdir=TB;\n  node [fontname=\"Helvetica\"];\n  edge [arrowsize=0.6];\n";
  for (std::size_t i = 0; i < g.vertices.size(); ++i) o << "  v" << i << " [" << attributes(g.vertices[i]) << "];\n";
  o << "  { rank=source; v" << g.root << "; }\n";
  for (const auto& [a, b] : g.edges) o << "  v" << a << " -> v" << b << ";\n";
  for (std::size_t w = 0; w < g.wires.size(); ++w) {
    o << "  a" << w << " [label=\"\", shape=point, style=invis];\n";
    for (auto s : g.wires[w]) o << "  v" << s << " -> a" << w << " [arrowhead=none];\n";
  }
  if (!g.wires.empty()) {
    o << "  { rank=sink;";
    for (std::size_t w = 0; w < g.wires.size(); ++w) o << " a" << w << ";";
    o << " }\n";
    for (std::size_t w = 1; w < g.wires.size(); ++w) o << "  a" << w - 1 << " -> a" << w << " [style=invis];\n";
  }
  o << "}\n";
  return o.str();
}

std::string dot_export(const TermPtr& t) { return to_dot(concept_graph(t)); }

}  // namespace cil
