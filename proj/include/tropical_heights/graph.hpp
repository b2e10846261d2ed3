#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tropical_heights/poly.hpp"

namespace th::graph {

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using Chain = std::vector<std::int64_t>; // coefficient per edge index

struct Edge {
    std::string id;
    std::size_t tail;
    std::size_t head;
};

struct EdgeSpec {
    std::string id;
    std::string tail;
    std::string head;
};

// Finite multigraph; loops and parallel edges allowed. Edges are kept sorted by id,
// so an edge's index is also its variable index.
class Multigraph {
public:
    Multigraph() = default;
    Multigraph(std::vector<std::string> vertex_ids, std::vector<EdgeSpec> edges);

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const std::string& vertex_id(std::size_t v) const { return vertices_[v]; }
    const std::vector<std::string>& vertex_ids() const { return vertices_; }
    const Edge& edge(std::size_t e) const { return edges_[e]; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t vertex_index(const std::string& id) const;
    std::size_t edge_index(const std::string& id) const;
    bool is_loop(std::size_t e) const { return edges_[e].tail == edges_[e].head; }
    bool is_connected() const;
    // Connected component label per vertex, restricted to the given edge subset.
    std::vector<std::size_t> components(const std::vector<std::size_t>& edge_subset) const;
    // Number of edge ends at each vertex (loops count twice).
    std::vector<std::size_t> valence() const;
    poly::RegistryPtr edge_registry() const;

private:
    std::vector<std::string> vertices_;
    std::vector<Edge> edges_;
    std::map<std::string, std::size_t> vindex_;
    std::map<std::string, std::size_t> eindex_;
};

// |V| x |E| boundary: +1 at head, -1 at tail, loops give a zero column.
IntMatrix boundary_matrix(const Multigraph& g);

std::vector<std::int64_t> boundary_of(const Multigraph& g, const Chain& c);
bool is_cycle(const Multigraph& g, const Chain& c);

// Lexicographically smallest spanning tree by greedy edge-id order.
std::vector<std::size_t> designated_tree(const Multigraph& g);

struct CycleBasis {
    std::vector<Chain> cycles; // each of length |E|
    std::size_t size() const { return cycles.size(); }
};

// Fundamental cycles of the designated tree, +1 on the non-tree edge.
CycleBasis cycle_basis(const Multigraph& g);

// Applies an integer h x h change of basis: new_i = sum_j U(i,j) * old_j.
CycleBasis change_basis(const CycleBasis& b, const IntMatrix& u);

std::size_t first_betti(const Multigraph& g);

struct TreeEnumeration {
    std::vector<std::vector<std::size_t>> trees;
    bool disconnected = false;
};
TreeEnumeration spanning_trees(const Multigraph& g);

struct TwoForest {
    std::vector<std::size_t> edges;
    std::vector<bool> in_first; // per vertex; the first component contains vertex 0
};
std::vector<TwoForest> spanning_2forests(const Multigraph& g);

// Same graph with selected edges reversed.
Multigraph reorient(const Multigraph& g, const std::vector<bool>& flip);

} // namespace th::graph
