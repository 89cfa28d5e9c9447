#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dq/hochschild.hpp"
#include "dq/polyvector.hpp"

namespace dq {

// Endpoint of a directed edge: a type I vertex (1..m) or a type II
// boundary vertex (0..n, with 0 the marked one).
struct Target {
  bool boundary = false;
  int v = 0;
  auto operator<=>(const Target&) const = default;
};

// Directed graph with m interior (type I) vertices carrying ordered stars
// of outgoing edges, and n+1 boundary (type II) vertices 0..n that only
// receive edges. Tadpoles (i -> i) are allowed; a star never repeats a
// target. Text form: "m n | <star 1> | ... | <star m>" with targets
// written iK (type I) or bK (type II), e.g. "2 1 | i2 b0 | b1".
struct ExtGraph {
  int m = 0;
  int n = 0;
  std::vector<std::vector<Target>> stars;

  int outdeg(int i) const { return (int)stars.at(i - 1).size(); }  // i is 1-based
  int edge_count() const;
  bool has_tadpole(int i) const;
  std::vector<int> tadpole_vertices() const;
  bool has_edge(int i, int j) const;  // type I -> type I
  bool has_edge_to_marked() const;    // any edge into boundary vertex 0

  // Number of 1-forms standing before edge `pos` of Star(i) in the global
  // wedge order (stars concatenated in vertex order).
  int edge_form_pos(int i, int pos) const;

  std::string canon() const;
  void check() const;  // throws on malformed data

  bool operator==(const ExtGraph&) const = default;
};

ExtGraph parse_graph(const std::string& s);

// All graphs in G_ex(m,n) with prescribed out-degrees, every star ordering
// counted separately, in a fixed lexicographic order.
std::vector<ExtGraph> enumerate_graphs(int m, int n, const std::vector<int>& outdegs,
                                       bool allow_tadpoles);

// The operator D_Gamma: the (n+1)-ary polydifferential operator obtained
// by placing gamma_i (degree = outdeg(i), same dimension d) at vertex i,
// summing over all edge colorings by {1..d}. In-edges differentiate, the
// tadpole differentiates its own vertex (divergence insertion).
OpQ evaluate_as_op(const ExtGraph& g, const std::vector<PolyVector>& gammas);
Polynomial evaluate(const ExtGraph& g, const std::vector<PolyVector>& gammas,
                    const std::vector<Polynomial>& args);

// Cyclic rotation on graphs: boundary labels j -> (j+1) mod (n+1).
ExtGraph sigma_graph(const ExtGraph& g);

// Removes the tadpole at vertex i; returns (position of the tadpole in
// Star(i), reduced graph).
std::pair<int, ExtGraph> remove_tadpole(const ExtGraph& g, int i);
// Inserts a tadpole at vertex i at star position pos.
ExtGraph add_tadpole(const ExtGraph& g, int i, int pos);
// All single-tadpole insertions at vertex i.
std::vector<ExtGraph> tadpole_variants(const ExtGraph& g, int i);

// Contracts the type I -> type I edge (i,j), i != j, after renumbering
// (i,j) -> (1,2) and keeping the other vertices in order. The merged
// vertex is 1; its star is Star(i) minus (i,j) followed by Star(j).
// Returns nothing if the contraction creates a double edge.
std::optional<ExtGraph> contract_edge(const ExtGraph& g, int i, int j);

// Boundary collapse of the cluster = type I subset J together with the
// contiguous boundary block l..l+n2-1 (1 <= l, n2 >= 0). Returns the
// quotient (cluster replaced by boundary vertex l, or by a fresh type I
// vertex when n2 = 0) and the subgraph (with a fresh, edgeless boundary
// vertex 0). Returns nothing when the induced forms vanish: an edge exits
// the cluster, or a double edge appears in the quotient.
struct Collapse {
  ExtGraph quotient;
  ExtGraph sub;
};
std::optional<Collapse> collapse_subgraph(const ExtGraph& g, const std::vector<int>& J, int l,
                                          int n2);

}  // namespace dq
