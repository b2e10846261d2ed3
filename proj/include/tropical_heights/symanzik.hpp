#pragma once

#include <span>
#include <vector>

#include "tropical_heights/graph.hpp"
#include "tropical_heights/poly.hpp"

namespace th::symanzik {

using poly::MultiPoly;
using poly::Rational;
using Momentum = std::vector<Rational>;

class MinkowskiSpace {
public:
    // `form` is row-major dim x dim, symmetric and nondegenerate.
    MinkowskiSpace(int dim, std::vector<Rational> form);
    static MinkowskiSpace euclidean(int dim);
    static MinkowskiSpace lorentzian(int dim); // diag(1, -1, ..., -1)

    int dim() const { return dim_; }
    const Rational& q(int i, int j) const { return form_[static_cast<std::size_t>(i * dim_ + j)]; }
    Rational pair(const Momentum& a, const Momentum& b) const;
    double pair(std::span<const double> a, std::span<const double> b) const;

private:
    int dim_;
    std::vector<Rational> form_;
};

// Momentum per vertex, summing to zero.
class MomentumAssignment {
public:
    MomentumAssignment(MinkowskiSpace space, std::vector<Momentum> per_vertex);
    const MinkowskiSpace& space() const { return space_; }
    const std::vector<Momentum>& per_vertex() const { return p_; }
    const Momentum& at(std::size_t v) const { return p_[v]; }
    std::size_t vertex_count() const { return p_.size(); }
    MomentumAssignment operator+(const MomentumAssignment& o) const;
    MomentumAssignment scaled(const Rational& c) const;

private:
    MinkowskiSpace space_;
    std::vector<Momentum> p_;
};

struct EdgeQuadratic {
    std::size_t edge;
    std::vector<std::int64_t> c; // coefficient of the edge in each basis cycle
};

std::vector<EdgeQuadratic> edge_quadratics(const graph::Multigraph& g, const graph::CycleBasis& basis);

// Momentum per edge with boundary equal to the vertex momenta, supported on the designated tree.
using MomentumLift = std::vector<Momentum>;
MomentumLift momentum_lift(const graph::Multigraph& g, const MomentumAssignment& p);
bool lift_is_valid(const graph::Multigraph& g, const MomentumAssignment& p, const MomentumLift& w);

MultiPoly first_symanzik_det(const std::vector<EdgeQuadratic>& quads, std::size_t h, poly::RegistryPtr reg);
MultiPoly first_symanzik_det(const graph::Multigraph& g);
MultiPoly first_symanzik_trees(const graph::Multigraph& g);

MultiPoly second_symanzik_forests(const graph::Multigraph& g, const MomentumAssignment& p);
MultiPoly second_symanzik_bordered(const graph::Multigraph& g, const graph::CycleBasis& basis,
                                   const MomentumAssignment& p, const MomentumLift& lift);
MultiPoly second_symanzik_bordered(const graph::Multigraph& g, const MomentumAssignment& p);

// phi(p, y) / psi(y) through a Schur complement of the dense numeric period matrix.
double symanzik_ratio_eval(const graph::Multigraph& g, const MomentumAssignment& p, std::span<const double> y);
// Same quantity as p^T L^+ p with conductances 1 / y_e.
double resistance_oracle(const graph::Multigraph& g, const MomentumAssignment& p, std::span<const double> y);
// Symmetric bilinear form whose diagonal is the ratio above.
double symanzik_ratio_bilinear(const graph::Multigraph& g, const MomentumAssignment& p1,
                               const MomentumAssignment& p2, std::span<const double> y);

} // namespace th::symanzik
