#include "tropical_heights/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tropical_heights/error.hpp"

namespace th::asymptotics {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

void check_blocks(const HolomorphicFixture& f, const std::vector<EdgeBlock>& blocks, std::size_t edges)
{
    if (blocks.size() != edges)
        throw InputError("expected " + std::to_string(edges) + " edge blocks, got " + std::to_string(blocks.size()));
    auto g = f.base.omega.rows();
    for (const auto& b : blocks)
        if (b.m.rows() != g || b.w.size() != g || b.z.size() != g)
            throw InputError("edge block genus does not match the fixture");
}

} // namespace

EdgeBlock numeric_block(const monodromy::NilpotentBlock& b)
{
    EdgeBlock e;
    e.m = b.m.to_double();
    e.w = b.row_w.to_double();
    e.z = b.col_z.to_double();
    e.gamma = b.gamma.get_d();
    return e;
}

Eigen::MatrixXd nilpotent_matrix(const EdgeBlock& b)
{
    auto g = b.m.rows();
    Eigen::MatrixXd n = Eigen::MatrixXd::Zero(2 * g + 2, 2 * g + 2);
    n.block(0, 1 + g, 1, g) = b.w;
    n(0, 2 * g + 1) = b.gamma;
    n.block(1, 1 + g, g, g) = b.m;
    n.block(1, 2 * g + 1, g, 1) = b.z;
    return n;
}

poincare::BiextensionPoint HolomorphicFixture::at(std::span<const cd> s) const
{
    poincare::BiextensionPoint x = base;
    if (linear.empty())
        return x;
    if (s.size() != linear.size())
        throw InputError("polydisc point has the wrong dimension");
    double norm = 0;
    for (auto v : s)
        norm = std::max(norm, std::abs(v));
    if (norm > radius)
        throw InputError("polydisc point lies outside the fixture radius");
    for (std::size_t k = 0; k < s.size(); ++k) {
        x.omega += s[k] * linear[k].omega;
        x.w += s[k] * linear[k].w;
        x.z += s[k] * linear[k].z;
        x.rho += s[k] * linear[k].rho;
    }
    return x;
}

double tropical_height(const graph::Multigraph& g, const symanzik::MomentumAssignment& p1,
                       const symanzik::MomentumAssignment& p2, std::span<const double> y)
{
    double q12 = symanzik::symanzik_ratio_eval(g, p1 + p2, y);
    double q1 = symanzik::symanzik_ratio_eval(g, p1, y);
    double q2 = symanzik::symanzik_ratio_eval(g, p2, y);
    return two_pi * 0.5 * (q12 - q1 - q2);
}

double height_eval(const HolomorphicFixture& f, const std::vector<EdgeBlock>& blocks, const EdgeParameters& ep,
                   std::span<const cd> s)
{
    check_blocks(f, blocks, ep.y.size());
    auto x = f.at(s);
    Eigen::MatrixXd om = x.omega.imag();
    Eigen::RowVectorXd w = x.w.imag();
    Eigen::VectorXd z = x.z.imag();
    double val = -two_pi * x.rho.imag();
    for (std::size_t e = 0; e < blocks.size(); ++e) {
        double yp = ep.y[e] - ep.h0;
        if (!(yp >= 0))
            throw InputError("edge parameter y below the offset h0");
        om += yp * blocks[e].m;
        w += yp * blocks[e].w;
        z += yp * blocks[e].z;
        val -= two_pi * yp * blocks[e].gamma;
    }
    Eigen::LLT<Eigen::MatrixXd> llt(0.5 * (om + om.transpose()));
    if (llt.info() != Eigen::Success) {
        std::ostringstream msg;
        msg << "Im Omega_0 + sum y' M is not positive definite at y = (";
        for (std::size_t e = 0; e < ep.y.size(); ++e)
            msg << (e ? ", " : "") << ep.y[e];
        msg << ")";
        throw NumericError(msg.str());
    }
    return val + two_pi * w.dot(llt.solve(z));
}

double height_via_orbit(const HolomorphicFixture& f, const std::vector<EdgeBlock>& blocks, std::span<const cd> z,
                        double h0)
{
    check_blocks(f, blocks, z.size());
    std::vector<cd> s(z.size());
    for (std::size_t e = 0; e < z.size(); ++e)
        s[e] = std::exp(cd(0, two_pi) * z[e]);
    auto x = f.at(s);
    auto g = x.omega.rows();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2 * g + 2, 2 * g + 2);
    for (std::size_t e = 0; e < blocks.size(); ++e)
        m += (z[e] - cd(0, h0)) * nilpotent_matrix(blocks[e]).cast<cd>();
    return poincare::log_norm(poincare::act_matrix(m, x));
}

ScanReport bounded_remainder_scan(const HolomorphicFixture& f, const std::vector<EdgeBlock>& blocks,
                                  const graph::Multigraph& g, const symanzik::MomentumAssignment& p1,
                                  const symanzik::MomentumAssignment& p2,
                                  const std::vector<std::vector<double>>& directions, double t_min, double t_max,
                                  int points, double increment_tol)
{
    if (points < 2 || !(t_min > 0) || !(t_max > t_min))
        throw InputError("scan grid needs at least two points with 0 < t_min < t_max");
    if (t_max < 2)
        throw InputError("scan must reach min y >= 2 to take a unit Cauchy step");
    ScanReport rep;
    std::vector<cd> s(g.edge_count(), cd(0, 0));
    for (const auto& dir : directions) {
        if (dir.size() != g.edge_count())
            throw InputError("ray direction has the wrong length");
        double lo = *std::min_element(dir.begin(), dir.end());
        if (!(lo > 0))
            throw InputError("ray directions must be positive");
        auto remainder = [&](double t) {
            EdgeParameters ep;
            for (double d : dir)
                ep.y.push_back(t * d / lo);
            return height_eval(f, blocks, ep, s) - tropical_height(g, p1, p2, ep.y);
        };
        RayProfile ray;
        for (int k = 0; k < points; ++k) {
            double t = t_min * std::pow(t_max / t_min, static_cast<double>(k) / (points - 1));
            double h = remainder(t);
            ray.t.push_back(t);
            ray.remainder.push_back(h);
            rep.sup_abs = std::max(rep.sup_abs, std::abs(h));
        }
        // Cauchy step: min y advanced by one unit at the end of the ray
        ray.final_increment = std::abs(ray.remainder.back() - remainder(t_max - 1));
        ray.bounded = ray.final_increment < increment_tol;
        rep.bounded = rep.bounded && ray.bounded;
        rep.rays.push_back(std::move(ray));
    }
    return rep;
}

void AdmissibleSegment::validate() const
{
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const auto& s = edges[e];
        std::string path = "edges[" + std::to_string(e) + "]";
        if (!(s.Y > 0) || !std::isfinite(s.Y))
            throw InputError("segment is not admissible: lim |t_e|^a' = exp(-Y) must lie in (0, 1), so Y must be positive and finite",
                             path + ".Y");
        for (double v : {s.x, s.amp, s.freq, s.shift})
            if (!std::isfinite(v))
                throw InputError("segment is not admissible: perturbation terms must be bounded", path);
    }
}

std::vector<cd> AdmissibleSegment::z(double alpha) const
{
    std::vector<cd> out;
    for (const auto& s : edges)
        out.emplace_back(s.x + s.amp * std::sin(s.freq / alpha), s.Y / (two_pi * alpha) + s.shift);
    return out;
}

double extrapolate_to_zero(std::span<const double> x, std::span<const double> v)
{
    if (x.size() != v.size() || x.empty())
        throw InputError("extrapolation needs matching nonempty samples");
    double sum = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double l = 1;
        for (std::size_t j = 0; j < x.size(); ++j)
            if (j != i)
                l *= x[j] / (x[j] - x[i]);
        sum += v[i] * l;
    }
    return sum;
}

LimitReport limit_along_segment(const AdmissibleSegment& seg, const graph::Multigraph& g,
                                const symanzik::MomentumAssignment& p1, const symanzik::MomentumAssignment& p2,
                                const HolomorphicFixture& f, const std::vector<EdgeBlock>& blocks,
                                const std::vector<double>& schedule, double h0)
{
    seg.validate();
    if (seg.edges.size() != g.edge_count())
        throw InputError("segment must give one entry per edge");
    for (std::size_t i = 0; i < schedule.size(); ++i)
        if (!(schedule[i] > 0) || (i && schedule[i] >= schedule[i - 1]))
            throw InputError("alpha' schedule must be positive and decreasing", "schedule");
    LimitReport rep;
    for (double a : schedule) {
        auto z = seg.z(a);
        EdgeParameters ep{{}, h0};
        std::vector<cd> s;
        for (auto v : z) {
            ep.y.push_back(v.imag());
            s.push_back(std::exp(cd(0, two_pi) * v));
        }
        rep.alphas.push_back(a);
        rep.values.push_back(a * height_eval(f, blocks, ep, s));
    }
    rep.estimate = extrapolate_to_zero(rep.alphas, rep.values);
    std::vector<double> Y;
    for (const auto& s : seg.edges)
        Y.push_back(s.Y);
    rep.prediction = tropical_height(g, p1, p2, Y) / two_pi;
    double scale = std::abs(rep.prediction) < 1e-12 ? 1.0 : std::abs(rep.prediction);
    rep.rel_error = std::abs(rep.estimate - rep.prediction) / scale;
    return rep;
}

} // namespace th::asymptotics
