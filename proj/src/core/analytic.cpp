#include "tropical_heights/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "tropical_heights/asymptotics.hpp"
#include "tropical_heights/error.hpp"

namespace th::lab {

namespace {

constexpr double pi = std::numbers::pi;

// log |1 - w| for |w| < 1
double log_abs_one_minus(cd w)
{
    return 0.5 * std::log1p(std::norm(w) - 2.0 * w.real());
}

double log_abs_sin_pi(cd z)
{
    double v = z.imag();
    if (std::abs(v) < 2.0)
        return std::log(std::abs(std::sin(pi * z)));
    cd zz = v > 0 ? z : std::conj(z);
    cd e = std::exp(cd(0, 2 * pi) * zz);
    return pi * std::abs(v) - std::log(2.0) + log_abs_one_minus(e);
}

void check_tau(cd tau)
{
    if (!(tau.imag() > 0) || !std::isfinite(tau.real()) || !std::isfinite(tau.imag()))
        throw InputError("modulus must have positive imaginary part", "tau");
}

struct Reduced {
    cd u;       // representative with |Im u| <= Im tau / 2, |Re u - y Re tau| <= 1/2
    double m;   // number of tau-shifts removed
};

Reduced reduce(cd z, cd tau)
{
    double m = std::round(z.imag() / tau.imag());
    cd u = z - m * tau;
    u -= std::round(u.real() - (u.imag() / tau.imag()) * tau.real());
    return {u, m};
}

// -log|theta1(u)| + pi (Im u)^2 / Im tau, periodic in u.
double green_core(cd z, cd tau)
{
    auto r = reduce(z, tau);
    return -log_abs_theta1(r.u, tau) + pi * r.u.imag() * r.u.imag() / tau.imag();
}

bool near_lattice(cd z, cd tau)
{
    auto r = reduce(z, tau);
    return std::abs(r.u) <= 1e-13 * std::max(1.0, std::abs(tau));
}

double momentum_sum_norm(const std::vector<Charge>& a, std::size_t dim)
{
    std::vector<double> s(dim, 0.0);
    double scale = 0;
    for (const auto& c : a) {
        if (c.p.size() != dim)
            throw InputError("charge momentum has dimension " + std::to_string(c.p.size()) + ", expected " +
                             std::to_string(dim));
        for (std::size_t i = 0; i < dim; ++i) {
            s[i] += c.p[i];
            scale = std::max(scale, std::abs(c.p[i]));
        }
    }
    double m = 0;
    for (double v : s)
        m = std::max(m, std::abs(v));
    return m / std::max(1.0, scale);
}

void require_conserved(const std::vector<Charge>& a, const symanzik::MinkowskiSpace& space, const char* which)
{
    if (momentum_sum_norm(a, static_cast<std::size_t>(space.dim())) > 1e-12)
        throw InputError(std::string("momentum conservation violated: charges of ") + which + " must sum to zero");
}

} // namespace

int theta_order(cd tau)
{
    check_tau(tau);
    return std::max(1, static_cast<int>(std::ceil(30.0 * std::log(10.0) / (2 * pi * tau.imag()))));
}

cd theta1(cd z, cd tau, int n_terms)
{
    check_tau(tau);
    cd sum = 0;
    double mag = 0;
    for (int n = 0; n <= n_terms; ++n) {
        double k = n + 0.5;
        cd t = std::exp(cd(0, pi) * tau * (k * k)) * std::sin(static_cast<double>(2 * n + 1) * pi * z);
        t *= (n % 2 ? -2.0 : 2.0);
        sum += t;
        mag += std::abs(t);
    }
    double k = n_terms + 1.5;
    double bound = 2 * std::exp(-pi * tau.imag() * k * k + (2 * n_terms + 3) * pi * std::abs(z.imag()));
    if (bound > 1e-16 * std::max(mag, std::numeric_limits<double>::min()) && bound > 1e-300)
        throw NumericError("theta series truncated at " + std::to_string(n_terms) + " terms is not converged");
    return sum;
}

cd theta1(cd z, cd tau)
{
    int n = theta_order(tau);
    while (true) {
        try {
            return theta1(z, tau, n);
        } catch (const NumericError&) {
            if (n > 100000)
                throw;
            n *= 2;
        }
    }
}

double log_abs_theta1(cd z, cd tau)
{
    check_tau(tau);
    auto r = reduce(z, tau);
    cd u = r.u;
    double t = tau.imag();
    double val = std::log(2.0) - pi * t / 4.0 + log_abs_sin_pi(u);
    cd q = std::exp(cd(0, 2 * pi) * tau);
    cd e = std::exp(cd(0, 2 * pi) * u);
    cd qn = q;
    for (int n = 1; n < 1000000; ++n) {
        if (std::exp(-pi * t * (2.0 * n - 1.0)) < 1e-18)
            break;
        val += log_abs_one_minus(qn) + log_abs_one_minus(qn * e) + log_abs_one_minus(qn / e);
        qn *= q;
    }
    // undo the reduction: log|theta1(u + m tau)| = log|theta1(u)| + pi m^2 Im tau + 2 pi m Im u
    return val + pi * r.m * r.m * t + 2 * pi * r.m * u.imag();
}

double log_abs_theta1_prime0(cd tau)
{
    check_tau(tau);
    cd sum = 0;
    for (int n = 0;; ++n) {
        double mag = (2 * n + 1) * std::exp(-pi * tau.imag() * n * (n + 1));
        if (n > 0 && mag < 1e-18)
            break;
        cd t = static_cast<double>(2 * n + 1) * std::exp(cd(0, pi) * tau * static_cast<double>(n * (n + 1)));
        sum += (n % 2 ? -t : t);
    }
    return std::log(2 * pi) - pi * tau.imag() / 4.0 + std::log(std::abs(sum));
}

double log_abs_eta(cd tau)
{
    check_tau(tau);
    cd q = std::exp(cd(0, 2 * pi) * tau);
    double val = -pi * tau.imag() / 12.0;
    cd qn = q;
    for (int n = 1; std::abs(qn) > 1e-18; ++n) {
        val += log_abs_one_minus(qn);
        qn *= q;
    }
    return val;
}

FractionalPoint fractional(cd z, cd tau)
{
    check_tau(tau);
    double y = z.imag() / tau.imag();
    double x = z.real() - y * tau.real();
    x -= std::floor(x);
    y -= std::floor(y);
    if (x >= 1.0)
        x = 0.0;
    if (y >= 1.0)
        y = 0.0;
    return {x, y};
}

double green_sphere(cd z, cd w)
{
    double d = std::abs(z - w);
    if (d == 0.0)
        throw InputError("coincident points; use the regularized self-height");
    return -std::log(d) + 0.5 * std::log1p(std::norm(z)) + 0.5 * std::log1p(std::norm(w));
}

double SphereGreen::value(const Charge& a, const Charge& b) const
{
    if (same_point(a, b))
        throw InputError("coincident points; use the regularized self-height");
    if (a.at_infinity)
        return 0.5 * std::log1p(std::norm(b.z));
    if (b.at_infinity)
        return 0.5 * std::log1p(std::norm(a.z));
    return green_sphere(a.z, b.z);
}

double SphereGreen::diagonal(const Charge&, double scale) const
{
    return std::log(scale);
}

bool SphereGreen::same_point(const Charge& a, const Charge& b) const
{
    if (a.at_infinity || b.at_infinity)
        return a.at_infinity == b.at_infinity;
    return a.z == b.z;
}

TorusGreen::TorusGreen(cd tau) : tau_(tau)
{
    check_tau(tau);
    c_ = normalization_quadrature(tau);
    closed_form_agrees_ = std::abs(c_ - log_abs_eta(tau)) <= 1e-6;
}

double TorusGreen::normalization_quadrature(cd tau)
{
    check_tau(tau);
    using boost::math::quadrature::gauss;
    // The x-average of the integrand is a polynomial in y, so a 10-point rule in y is exact;
    // the inner periodic integral uses the trapezoid rule sized to the nearest singularity.
    auto inner = [&](double y) {
        double d = std::min(y, 1.0 - y) * tau.imag();
        auto m = static_cast<long>(std::ceil(40.0 / (2 * pi * d)));
        m = std::clamp(m, 64L, 2000000L);
        double s = 0;
        for (long j = 0; j < m; ++j)
            s += green_core(static_cast<double>(j) / static_cast<double>(m) + y * tau, tau);
        return s / static_cast<double>(m);
    };
    return -gauss<double, 10>::integrate(inner, 0.0, 1.0);
}

double TorusGreen::operator()(cd z, cd w) const
{
    if (near_lattice(z - w, tau_))
        throw InputError("coincident points; use the regularized self-height");
    return green_core(z - w, tau_) + c_;
}

double TorusGreen::value(const Charge& a, const Charge& b) const
{
    return (*this)(a.z, b.z);
}

double TorusGreen::diagonal(const Charge&, double scale) const
{
    return -log_abs_theta1_prime0(tau_) + c_ - 0.5 * std::log(tau_.imag()) + std::log(scale);
}

bool TorusGreen::same_point(const Charge& a, const Charge& b) const
{
    return near_lattice(a.z - b.z, tau_);
}

double torus_green_series(cd z, cd tau, double c)
{
    return -std::log(std::abs(theta1(z, tau))) + pi * z.imag() * z.imag() / tau.imag() + c;
}

double laplacian_residual(const TorusGreen& g, int n, double spacing, double exclusion)
{
    cd tau = g.tau();
    double worst = 0;
    double target = 2 * pi / tau.imag();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cd z = (i + 0.5) / n + ((j + 0.5) / n) * tau;
            auto r = reduce(z, tau);
            double dist = std::numeric_limits<double>::infinity();
            for (int a = -1; a <= 1; ++a)
                for (int b = -1; b <= 1; ++b)
                    dist = std::min(dist, std::abs(r.u + static_cast<double>(a) + static_cast<double>(b) * tau));
            if (dist < exclusion)
                continue;
            cd h(spacing, 0), v(0, spacing);
            double lap = (g(z + h, 0) + g(z - h, 0) + g(z + v, 0) + g(z - v, 0) - 4 * g(z, 0)) / (spacing * spacing);
            worst = std::max(worst, std::abs(lap - target));
        }
    return worst;
}

double height_pairing_surface(const std::vector<Charge>& a, const std::vector<Charge>& b, const SurfaceGreen& green,
                              const symanzik::MinkowskiSpace& space)
{
    require_conserved(a, space, "the first divisor");
    require_conserved(b, space, "the second divisor");
    double s = 0;
    for (const auto& x : a)
        for (const auto& y : b) {
            if (green.same_point(x, y))
                throw InputError("supports overlap; use the regularized self-height");
            double pq = space.pair(x.p, y.p);
            if (pq != 0.0)
                s += pq * green.value(x, y);
        }
    return s;
}

double regularized_self_height(const std::vector<Charge>& a, const SurfaceGreen& green,
                               const symanzik::MinkowskiSpace& space, double metric_scale)
{
    if (!(metric_scale > 0))
        throw InputError("metric scale must be positive");
    require_conserved(a, space, "the divisor");
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) {
            double pq = space.pair(a[i].p, a[j].p);
            if (pq == 0.0)
                continue;
            bool diag = i == j || green.same_point(a[i], a[j]);
            s += pq * (diag ? green.diagonal(a[i], metric_scale) : green.value(a[i], a[j]));
        }
    return s;
}

double metric_graph_green(const graph::Multigraph& g, std::span<const double> y, const symanzik::MomentumAssignment& p1,
                          const symanzik::MomentumAssignment& p2)
{
    double q12 = symanzik::resistance_oracle(g, p1 + p2, y);
    double q1 = symanzik::resistance_oracle(g, p1, y);
    double q2 = symanzik::resistance_oracle(g, p2, y);
    return 0.5 * (q12 - q1 - q2);
}

CycleGraph degeneration_graph(const DegenerationFamily& fam)
{
    if (!(fam.Y > 0))
        throw InputError("Y must be positive", "Y");
    std::vector<double> heights;
    for (std::size_t i = 0; i < fam.charges.size(); ++i) {
        double c = fam.charges[i].c;
        if (!(c >= 0.0 && c < 1.0))
            throw InputError("fractional position must lie in [0, 1)", "charges[" + std::to_string(i) + "].c");
        heights.push_back(c);
    }
    if (heights.empty())
        throw InputError("family has no charges", "charges");
    std::sort(heights.begin(), heights.end());
    std::vector<double> levels;
    for (double c : heights)
        if (levels.empty() || c - levels.back() > 1e-12)
            levels.push_back(c);

    std::size_t k = levels.size();
    auto vid = [](std::size_t i) { return "v" + std::to_string(i); };
    auto eid = [](std::size_t i) {
        std::string s = std::to_string(i);
        return "e" + std::string(s.size() < 4 ? 4 - s.size() : 0, '0') + s;
    };
    std::vector<std::string> vs;
    std::vector<graph::EdgeSpec> es;
    std::vector<double> len_by_spec;
    for (std::size_t i = 0; i < k; ++i)
        vs.push_back(vid(i));
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t j = (i + 1) % k;
        double gap = (j == 0 ? 1.0 : 0.0) + levels[j] - levels[i];
        es.push_back({eid(i), vid(i), vid(j)});
        len_by_spec.push_back(fam.Y * gap);
    }
    CycleGraph cg{graph::Multigraph(vs, es), {}, {}};
    cg.lengths.resize(es.size());
    for (std::size_t i = 0; i < es.size(); ++i)
        cg.lengths[cg.graph.edge_index(es[i].id)] = len_by_spec[i];
    for (const auto& ch : fam.charges) {
        auto it = std::min_element(levels.begin(), levels.end(),
                                   [&](double a, double b) { return std::abs(a - ch.c) < std::abs(b - ch.c); });
        cg.vertex_of.push_back(static_cast<std::size_t>(it - levels.begin()));
    }
    return cg;
}

DegenerationReport degeneration_experiment(const DegenerationFamily& fam)
{
    auto cg = degeneration_graph(fam);
    auto d = static_cast<std::size_t>(fam.space.dim());
    for (std::size_t i = 0; i < fam.schedule.size(); ++i)
        if (!(fam.schedule[i] > 0) || (i && fam.schedule[i] >= fam.schedule[i - 1]))
            throw InputError("alpha' schedule must be positive and decreasing", "schedule");
    if (fam.schedule.empty())
        throw InputError("alpha' schedule is empty", "schedule");

    std::vector<symanzik::Momentum> pa(cg.graph.vertex_count(), symanzik::Momentum(d, poly::Rational(0)));
    auto pb = pa;
    DegenerationReport rep;
    rep.on_shell = true;
    for (std::size_t i = 0; i < fam.charges.size(); ++i) {
        const auto& ch = fam.charges[i];
        if (ch.p.size() != d)
            throw InputError("momentum has dimension " + std::to_string(ch.p.size()) + ", expected " + std::to_string(d),
                             "charges[" + std::to_string(i) + "].momentum");
        if (!fam.self_mode && ch.divisor != 0 && ch.divisor != 1)
            throw InputError("divisor must be 0 or 1", "charges[" + std::to_string(i) + "].divisor");
        auto& target = (!fam.self_mode && ch.divisor == 1) ? pb : pa;
        for (std::size_t k = 0; k < d; ++k)
            target[cg.vertex_of[i]][k] += ch.p[k];
        rep.on_shell = rep.on_shell && fam.space.pair(ch.p, ch.p) == 0;
    }
    if (!fam.self_mode)
        for (std::size_t i = 0; i < fam.charges.size(); ++i)
            for (std::size_t j = 0; j < fam.charges.size(); ++j) {
                const auto& a = fam.charges[i];
                const auto& b = fam.charges[j];
                if (a.divisor == 0 && b.divisor == 1 && std::abs(a.c - b.c) <= 1e-12 &&
                    std::abs(a.x - b.x - std::round(a.x - b.x)) <= 1e-12)
                    throw InputError("positions of the two divisors are not distinct", "charges[" + std::to_string(j) + "]");
            }
    symanzik::MomentumAssignment ma(fam.space, pa);
    symanzik::MomentumAssignment mb(fam.space, fam.self_mode ? pa : pb);
    rep.prediction = symanzik::symanzik_ratio_bilinear(cg.graph, ma, mb, cg.lengths);
    rep.oracle = metric_graph_green(cg.graph, cg.lengths, ma, mb);

    for (double a : fam.schedule) {
        cd tau(0, fam.Y / (2 * pi * a));
        TorusGreen green(tau);
        std::vector<Charge> ca, cb;
        for (const auto& ch : fam.charges) {
            Charge c{ch.x + ch.c * tau, {}};
            for (const auto& v : ch.p)
                c.p.push_back(v.get_d());
            ((!fam.self_mode && ch.divisor == 1) ? cb : ca).push_back(std::move(c));
        }
        double h = fam.self_mode ? regularized_self_height(ca, green, fam.space, fam.metric_scale)
                                 : height_pairing_surface(ca, cb, green, fam.space);
        rep.alphas.push_back(a);
        rep.values.push_back(a * h);
        rep.errors.push_back(std::abs(a * h - rep.prediction));
    }
    // a vanishing prediction has no relative scale; errors are then absolute
    double scale = std::abs(rep.prediction) < 1e-12 ? 1.0 : std::abs(rep.prediction);
    rep.estimate = asymptotics::extrapolate_to_zero(rep.alphas, rep.values);
    rep.rel_error = rep.errors.back() / scale;
    rep.extrapolated_rel_error = std::abs(rep.estimate - rep.prediction) / scale;

    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < rep.alphas.size(); ++i)
        if (rep.errors[i] > 1e-11 * std::max(1.0, std::abs(rep.prediction))) {
            lx.push_back(std::log(rep.alphas[i]));
            ly.push_back(std::log(rep.errors[i]));
        }
    if (lx.size() < 2) {
        rep.slope = std::numeric_limits<double>::quiet_NaN();
    } else {
        double mx = 0, my = 0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
            mx += lx[i];
            my += ly[i];
        }
        mx /= static_cast<double>(lx.size());
        my /= static_cast<double>(lx.size());
        double sxy = 0, sxx = 0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
            sxy += (lx[i] - mx) * (ly[i] - my);
            sxx += (lx[i] - mx) * (lx[i] - mx);
        }
        rep.slope = sxy / sxx;
    }
    return rep;
}

} // namespace th::lab
