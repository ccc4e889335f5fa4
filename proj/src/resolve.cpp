#include "curvelab/resolve.hpp"

#include <functional>
#include <sstream>

namespace curvelab {

DualGraph BlowupTree::dual_graph() const {
  DualGraph g;
  for (const auto& n : nodes) g.self_intersection.push_back(n.self_intersection);
  g.edges.assign(edges.begin(), edges.end());
  g.attachments.assign(nodes.size(), 0);
  for (const auto& leaf : leaves) {
    for (int d : leaf.through) g.attachments[static_cast<std::size_t>(d)] += 1;
  }
  return g;
}

namespace {

std::vector<std::vector<int>> adjacency(const DualGraph& g) {
  std::vector<std::vector<int>> adj(g.self_intersection.size());
  for (auto [a, b] : g.edges) {
    adj[static_cast<std::size_t>(a)].push_back(b);
    adj[static_cast<std::size_t>(b)].push_back(a);
  }
  return adj;
}

std::string vertex_label(const DualGraph& g, int v) {
  return std::to_string(g.self_intersection[static_cast<std::size_t>(v)]) + "," +
         std::to_string(g.attachments[static_cast<std::size_t>(v)]);
}

}  // namespace

std::string DualGraph::to_dot(const std::string& name) const {
  std::ostringstream os;
  os << "graph " << name << " {\n";
  for (std::size_t i = 0; i < self_intersection.size(); ++i) {
    os << "  E" << i << " [label=\"E" << i << " (" << self_intersection[i] << ")\"];\n";
  }
  for (auto [a, b] : edges) os << "  E" << a << " -- E" << b << ";\n";
  int s = 0;
  for (std::size_t i = 0; i < attachments.size(); ++i) {
    for (int k = 0; k < attachments[i]; ++k, ++s) {
      os << "  C" << s << " [shape=point];\n  E" << i << " -- C" << s << " [style=dashed];\n";
    }
  }
  os << "}\n";
  return os.str();
}

std::string DualGraph::to_ascii() const {
  const auto adj = adjacency(*this);
  const std::size_t n = adj.size();
  if (n == 0) return "(empty)\n";
  auto cell = [&](std::size_t v) {
    std::string s = "E" + std::to_string(v) + "(" + std::to_string(self_intersection[v]) + ")";
    if (attachments[v]) s += std::string(static_cast<std::size_t>(attachments[v]), '*');
    return s;
  };
  // A path prints as a chain; anything else as an adjacency list.
  std::size_t ends = 0, start = 0;
  bool path = edges.size() + 1 == n;
  for (std::size_t v = 0; v < n; ++v) {
    if (adj[v].size() > 2) path = false;
    if (adj[v].size() <= 1) {
      if (ends++ == 0) start = v;
    }
  }
  std::ostringstream os;
  if (path && (n == 1 || ends == 2)) {
    std::size_t prev = n, cur = start;
    for (std::size_t i = 0; i < n; ++i) {
      if (i) os << " - ";
      os << cell(cur);
      std::size_t next = n;
      for (int w : adj[cur]) {
        if (static_cast<std::size_t>(w) != prev) next = static_cast<std::size_t>(w);
      }
      prev = cur;
      cur = next;
    }
    os << "\n";
  } else {
    for (std::size_t v = 0; v < n; ++v) {
      os << cell(v) << ":";
      for (int w : adj[v]) os << " E" << w;
      os << "\n";
    }
  }
  return os.str();
}

std::string DualGraph::canonical_form() const {
  const auto adj = adjacency(*this);
  const int n = static_cast<int>(adj.size());
  std::vector<int> component(static_cast<std::size_t>(n), -1);
  std::vector<std::string> parts;
  for (int s = 0; s < n; ++s) {
    if (component[static_cast<std::size_t>(s)] >= 0) continue;
    std::vector<int> verts{s};
    component[static_cast<std::size_t>(s)] = s;
    for (std::size_t i = 0; i < verts.size(); ++i) {
      for (int w : adj[static_cast<std::size_t>(verts[i])]) {
        if (component[static_cast<std::size_t>(w)] < 0) {
          component[static_cast<std::size_t>(w)] = s;
          verts.push_back(w);
        }
      }
    }
    std::size_t edge_count = 0;
    for (int v : verts) edge_count += adj[static_cast<std::size_t>(v)].size();
    if (edge_count / 2 + 1 != verts.size()) throw resolve_error("dual graph component is not a tree");
    // Centers by repeatedly stripping leaves.
    std::map<int, std::size_t> degree;
    for (int v : verts) degree[v] = adj[static_cast<std::size_t>(v)].size();
    std::vector<int> layer;
    for (int v : verts) {
      if (degree[v] <= 1) layer.push_back(v);
    }
    std::size_t remaining = verts.size();
    while (remaining > 2) {
      remaining -= layer.size();
      std::vector<int> next;
      for (int v : layer) {
        for (int w : adj[static_cast<std::size_t>(v)]) {
          if (--degree[w] == 1) next.push_back(w);
        }
        degree[v] = 0;
      }
      layer = std::move(next);
    }
    std::function<std::string(int, int)> encode = [&](int v, int from) {
      std::vector<std::string> kids;
      for (int w : adj[static_cast<std::size_t>(v)]) {
        if (w != from) kids.push_back(encode(w, v));
      }
      std::sort(kids.begin(), kids.end());
      std::string s = "(" + vertex_label(*this, v);
      for (const auto& k : kids) s += k;
      return s + ")";
    };
    std::string best;
    for (int c : layer) {
      std::string e = encode(c, -1);
      if (best.empty() || e < best) best = e;
    }
    parts.push_back(best);
  }
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (const auto& p : parts) out += p;
  return out;
}

bool verify_ledger(const BlowupTree& tree, std::string* why) {
  const std::size_t n = tree.nodes.size();
  std::vector<std::vector<long>> M(n, std::vector<long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) M[i][i] = tree.nodes[i].self_intersection;
  for (auto [a, b] : tree.edges) {
    M[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = 1;
    M[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = 1;
  }
  // Strict transform . E_i = m_i minus the multiplicities of later centers on E_i.
  std::vector<long> c(n, 0);
  for (std::size_t i = 0; i < n; ++i) c[i] = tree.nodes[i].multiplicity;
  for (const auto& node : tree.nodes) {
    for (int j : node.through) c[static_cast<std::size_t>(j)] -= node.multiplicity;
  }
  for (std::size_t i = 0; i < n; ++i) {
    long ma = 0, mk = 0;
    for (std::size_t j = 0; j < n; ++j) {
      ma += M[i][j] * tree.nodes[j].a;
      mk += M[i][j] * tree.nodes[j].k;
    }
    if (ma != -c[i]) {
      if (why) *why = "total transform not orthogonal to E" + std::to_string(i);
      return false;
    }
    if (mk != -2 - M[i][i]) {
      if (why) *why = "adjunction fails on E" + std::to_string(i);
      return false;
    }
  }
  return true;
}

}  // namespace curvelab
