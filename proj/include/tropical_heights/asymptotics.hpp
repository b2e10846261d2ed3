#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "tropical_heights/graph.hpp"
#include "tropical_heights/monodromy.hpp"
#include "tropical_heights/poincare.hpp"
#include "tropical_heights/symanzik.hpp"

namespace th::asymptotics {

using cd = std::complex<double>;

// Numeric blocks of one N_e with the momenta already contracted.
struct EdgeBlock {
    Eigen::MatrixXd m;     // M~_e
    Eigen::RowVectorXd w;  // p2 W~_e
    Eigen::VectorXd z;     // Z~_e p1^t
    double gamma = 0.0;    // p2 Gamma_e p1^t
};

EdgeBlock numeric_block(const monodromy::NilpotentBlock& b);
Eigen::MatrixXd nilpotent_matrix(const EdgeBlock& b);

// Psi_0 as a constant plus terms linear in the polydisc coordinates s_e.
struct HolomorphicFixture {
    poincare::BiextensionPoint base;
    std::vector<poincare::BiextensionPoint> linear; // empty, or one per edge
    double radius = 0.5;

    poincare::BiextensionPoint at(std::span<const cd> s) const;
};

struct EdgeParameters {
    std::vector<double> y;
    double h0 = 0.0;
};

// 2 pi times the bilinear Symanzik ratio phi(p1, p2, y) / psi(y).
double tropical_height(const graph::Multigraph& g, const symanzik::MomentumAssignment& p1,
                       const symanzik::MomentumAssignment& p2, std::span<const double> y);

// Closed-form height of the nilpotent orbit.
double height_eval(const HolomorphicFixture& f, const std::vector<EdgeBlock>& blocks, const EdgeParameters& ep,
                   std::span<const cd> s);

// Same height, computed as log_norm((I + sum (z_e - i h0) N_e) Psi_0).
double height_via_orbit(const HolomorphicFixture& f, const std::vector<EdgeBlock>& blocks, std::span<const cd> z,
                        double h0);

struct RayProfile {
    std::vector<double> t;        // ray parameter (min y along the ray)
    std::vector<double> remainder; // height_eval - tropical_height
    double final_increment = 0.0; // |h(t_max) - h(t_max - 1)|
    bool bounded = true;
};

struct ScanReport {
    double sup_abs = 0.0;
    bool bounded = true;
    std::vector<RayProfile> rays;
};

// Rays y = t * direction (direction normalized to min component 1), t on a geometric grid.
ScanReport bounded_remainder_scan(const HolomorphicFixture& f, const std::vector<EdgeBlock>& blocks,
                                  const graph::Multigraph& g, const symanzik::MomentumAssignment& p1,
                                  const symanzik::MomentumAssignment& p2,
                                  const std::vector<std::vector<double>>& directions, double t_min, double t_max,
                                  int points, double increment_tol = 1e-4);

// z_e(a) = x_e + amp_e sin(freq_e / a) + i (Y_e / (2 pi a) + shift_e)
struct SegmentEdge {
    double Y = 1.0;
    double x = 0.0;
    double amp = 0.0;
    double freq = 0.0;
    double shift = 0.0;
};

struct AdmissibleSegment {
    std::vector<SegmentEdge> edges;
    void validate() const;
    std::vector<cd> z(double alpha) const;
};

struct LimitReport {
    double estimate = 0.0;
    double prediction = 0.0;
    double rel_error = 0.0;
    std::vector<double> alphas;
    std::vector<double> values; // alpha' * height at each schedule point
};

LimitReport limit_along_segment(const AdmissibleSegment& seg, const graph::Multigraph& g,
                                const symanzik::MomentumAssignment& p1, const symanzik::MomentumAssignment& p2,
                                const HolomorphicFixture& f, const std::vector<EdgeBlock>& blocks,
                                const std::vector<double>& schedule = {4e-4, 2e-4, 1e-4}, double h0 = 0.0);

// Value at 0 of the interpolating polynomial through (x_i, v_i).
double extrapolate_to_zero(std::span<const double> x, std::span<const double> v);

} // namespace th::asymptotics
