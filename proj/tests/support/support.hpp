#pragma once

#include <complex>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tropical_heights/analytic.hpp"
#include "tropical_heights/asymptotics.hpp"
#include "tropical_heights/graph.hpp"
#include "tropical_heights/monodromy.hpp"
#include "tropical_heights/poincare.hpp"
#include "tropical_heights/symanzik.hpp"

namespace support {

using th::graph::EdgeSpec;
using th::graph::Multigraph;
using th::poly::Rational;
using th::symanzik::MinkowskiSpace;
using th::symanzik::MomentumAssignment;
using Rng = std::mt19937_64;

std::string edge_id(std::size_t i);
std::string vertex_id(std::size_t i);

// Every connected multigraph (loops allowed) on n labelled vertices with exactly m edges,
// one per multiset of vertex pairs, oriented low to high.
std::vector<Multigraph> all_multigraphs(std::size_t n, std::size_t m);

// Random spanning tree plus extra edges (parallel edges and loops allowed), random orientation.
Multigraph random_graph(Rng& rng, std::size_t n, std::size_t m, bool loops = true);

// Random integer momenta in [-3, 3]^dim, summing to zero.
MomentumAssignment random_momenta(Rng& rng, const MinkowskiSpace& space, std::size_t vertices);
MinkowskiSpace random_space(Rng& rng, int dim);

// Brute force over all edge subsets: spanning trees and spanning 2-forests.
struct SubsetCounts {
    std::vector<std::vector<std::size_t>> trees;
    std::vector<std::vector<std::size_t>> forests;
};
SubsetCounts brute_force_subsets(const Multigraph& g);

// sum_{mu,nu} q_{mu nu} p1_mu^T L^+ p2_nu with conductances 1 / y_e, through a
// pseudo-inverse computed by complete orthogonal decomposition.
double laplacian_oracle(const Multigraph& g, const MomentumAssignment& p1, const MomentumAssignment& p2,
                        const std::vector<double>& y);

// Fixtures where section crossings come from walks in the dual graph.
struct PathFixture {
    Multigraph graph;
    std::size_t genus;
    th::monodromy::VanishingCycleData vc;
    th::monodromy::SectionCrossingData sc;
    std::vector<Rational> p1, p2;
    std::vector<std::size_t> vertices1, vertices2; // section positions
};
PathFixture random_path_fixture(Rng& rng, const Multigraph& g, std::size_t extra_genus);

// Vertex momenta from the boundary of a crossing lift.
MomentumAssignment lift_boundary(const Multigraph& g, const std::vector<Rational>& w);
// Vertex momenta from section positions.
MomentumAssignment section_momenta(const Multigraph& g, const std::vector<std::size_t>& where,
                                   const std::vector<Rational>& p);

std::vector<th::asymptotics::EdgeBlock> numeric_blocks(const PathFixture& f);

th::poincare::BiextensionPoint random_point(Rng& rng, int g, double scale = 1.0);
// Product of elementary symplectic generators with small integer or real entries.
Eigen::MatrixXd random_symplectic(Rng& rng, int g, bool integral);
th::poincare::GroupElement random_group_element(Rng& rng, int g);

double rel_diff(double a, double b);

} // namespace support
