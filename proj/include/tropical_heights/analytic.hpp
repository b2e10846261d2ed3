#pragma once

#include <complex>
#include <span>
#include <vector>

#include "tropical_heights/graph.hpp"
#include "tropical_heights/symanzik.hpp"

namespace th::lab {

using cd = std::complex<double>;

// Truncation order N with |q|^N <= 1e-30 for q = exp(2 pi i tau).
int theta_order(cd tau);

// Odd theta function 2 sum_n (-1)^n Q^{(n+1/2)^2} sin((2n+1) pi z), Q = exp(pi i tau).
// Throws when N terms cannot reach double precision at this z.
cd theta1(cd z, cd tau, int n_terms);
cd theta1(cd z, cd tau);

// log |theta1(z)| after reducing z into the strip |Im z| <= Im(tau) / 2; stable for large Im tau.
double log_abs_theta1(cd z, cd tau);
// log |theta1'(0)| from the leading series coefficient.
double log_abs_theta1_prime0(cd tau);
// log |eta(tau)|
double log_abs_eta(cd tau);

struct FractionalPoint {
    double x, y; // z = x + y tau with x, y in [0, 1)
};
FractionalPoint fractional(cd z, cd tau);

// Marked point with momentum; at_infinity is only meaningful on the sphere.
struct Charge {
    cd z;
    std::vector<double> p;
    bool at_infinity = false;
};

class SurfaceGreen {
public:
    virtual ~SurfaceGreen() = default;
    virtual double value(const Charge& a, const Charge& b) const = 0;
    // Regularized value at a point for the distance d = scale * (local metric distance).
    virtual double diagonal(const Charge& a, double scale) const = 0;
    virtual bool same_point(const Charge& a, const Charge& b) const = 0;
};

// -log of the chordal distance: -log|z-w| + 1/2 log(1+|z|^2) + 1/2 log(1+|w|^2).
class SphereGreen : public SurfaceGreen {
public:
    double value(const Charge& a, const Charge& b) const override;
    double diagonal(const Charge& a, double scale) const override;
    bool same_point(const Charge& a, const Charge& b) const override;
};

double green_sphere(cd z, cd w);

// g(z - w) = -log|theta1(z - w)| + pi Im(z - w)^2 / Im tau + C(tau), with C fixed by the
// normalization integral against the flat unit-area form.
class TorusGreen : public SurfaceGreen {
public:
    explicit TorusGreen(cd tau);

    cd tau() const { return tau_; }
    double normalization() const { return c_; }
    bool closed_form_agrees() const { return closed_form_agrees_; }
    double operator()(cd z, cd w) const;
    double value(const Charge& a, const Charge& b) const override;
    double diagonal(const Charge& a, double scale) const override;
    bool same_point(const Charge& a, const Charge& b) const override;

    // Normalization constant by quadrature over the fundamental domain.
    static double normalization_quadrature(cd tau);

private:
    cd tau_;
    double c_;
    bool closed_form_agrees_;
};

// Unnormalized Green integrand evaluated straight from the theta series (no reduction).
double torus_green_series(cd z, cd tau, double c);

// Max |discrete 5-point Laplacian of g - 2 pi / Im tau| over an n x n grid of the fundamental
// domain, skipping points closer than `exclusion` to the lattice.
double laplacian_residual(const TorusGreen& g, int n, double spacing, double exclusion);

double height_pairing_surface(const std::vector<Charge>& a, const std::vector<Charge>& b, const SurfaceGreen& green,
                              const symanzik::MinkowskiSpace& space);

double regularized_self_height(const std::vector<Charge>& a, const SurfaceGreen& green,
                               const symanzik::MinkowskiSpace& space, double metric_scale);

// Bilinear resistance pairing of two vertex momentum assignments with conductances 1 / y_e.
double metric_graph_green(const graph::Multigraph& g, std::span<const double> y, const symanzik::MomentumAssignment& p1,
                          const symanzik::MomentumAssignment& p2);

struct FamilyCharge {
    double c = 0.0; // fractional height
    double x = 0.0; // real offset
    symanzik::Momentum p;
    int divisor = 0; // 0 or 1 in disjoint mode
};

struct DegenerationFamily {
    double Y = 1.0;
    bool self_mode = false;
    std::vector<FamilyCharge> charges;
    symanzik::MinkowskiSpace space = symanzik::MinkowskiSpace::euclidean(1);
    std::vector<double> schedule{1e-2, 1e-3, 1e-4};
    double metric_scale = 1.0;
};

struct DegenerationReport {
    double estimate = 0.0;      // extrapolated to alpha' = 0
    double prediction = 0.0;    // Symanzik ratio of the cycle graph
    double oracle = 0.0;        // same prediction through the Laplacian pseudo-inverse
    double rel_error = 0.0;     // at the smallest alpha'
    double extrapolated_rel_error = 0.0;
    double slope = 0.0;         // NaN when the errors sit at rounding level
    bool on_shell = false;
    std::vector<double> alphas, values, errors;
};

// Cycle graph with one vertex per distinct height c and edge lengths Y * gap.
struct CycleGraph {
    graph::Multigraph graph;
    std::vector<double> lengths;
    std::vector<std::size_t> vertex_of; // per charge
};
CycleGraph degeneration_graph(const DegenerationFamily& fam);

DegenerationReport degeneration_experiment(const DegenerationFamily& fam);

} // namespace th::lab
