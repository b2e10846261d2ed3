#include "tropical_heights/symanzik.hpp"

#include <cmath>

#include "tropical_heights/error.hpp"

namespace th::symanzik {

namespace {

Rational rational_det(std::vector<Rational> a, int n)
{
    Rational det = 1;
    for (int k = 0; k < n; ++k) {
        int p = k;
        while (p < n && a[static_cast<std::size_t>(p * n + k)] == 0)
            ++p;
        if (p == n)
            return 0;
        if (p != k) {
            for (int j = 0; j < n; ++j)
                std::swap(a[static_cast<std::size_t>(k * n + j)], a[static_cast<std::size_t>(p * n + j)]);
            det = -det;
        }
        Rational piv = a[static_cast<std::size_t>(k * n + k)];
        det *= piv;
        for (int i = k + 1; i < n; ++i) {
            Rational f = a[static_cast<std::size_t>(i * n + k)] / piv;
            if (f == 0)
                continue;
            for (int j = k; j < n; ++j)
                a[static_cast<std::size_t>(i * n + j)] -= f * a[static_cast<std::size_t>(k * n + j)];
        }
    }
    return det;
}

Eigen::MatrixXd form_matrix(const MinkowskiSpace& s)
{
    Eigen::MatrixXd q(s.dim(), s.dim());
    for (int i = 0; i < s.dim(); ++i)
        for (int j = 0; j < s.dim(); ++j)
            q(i, j) = s.q(i, j).get_d();
    return q;
}

// Momentum components as a |V| x D matrix.
Eigen::MatrixXd momentum_matrix(const MomentumAssignment& p)
{
    Eigen::MatrixXd m(static_cast<Eigen::Index>(p.vertex_count()), p.space().dim());
    for (std::size_t v = 0; v < p.vertex_count(); ++v)
        for (int mu = 0; mu < p.space().dim(); ++mu)
            m(static_cast<Eigen::Index>(v), mu) = p.at(v)[static_cast<std::size_t>(mu)].get_d();
    return m;
}

void check_y(const graph::Multigraph& g, std::span<const double> y)
{
    if (y.size() != g.edge_count())
        throw InputError("expected " + std::to_string(g.edge_count()) + " edge lengths, got " + std::to_string(y.size()));
    for (double v : y)
        if (!(v > 0) || !std::isfinite(v))
            throw InputError("edge lengths must be positive and finite");
}

void check_vertices(const graph::Multigraph& g, const MomentumAssignment& p)
{
    if (p.vertex_count() != g.vertex_count())
        throw InputError("momentum assignment does not match the vertex count");
}

// Bilinear Schur complement of the period matrix, per pair of Minkowski components.
Eigen::MatrixXd schur_components(const graph::Multigraph& g, const Eigen::MatrixXd& omega1,
                                 const Eigen::MatrixXd& omega2, std::span<const double> y)
{
    auto basis = graph::cycle_basis(g);
    auto h = static_cast<Eigen::Index>(basis.size());
    auto d = omega1.cols();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(h, h);
    Eigen::MatrixXd w1 = Eigen::MatrixXd::Zero(h, d), w2 = Eigen::MatrixXd::Zero(h, d);
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(d, d);
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        Eigen::VectorXd c(h);
        for (Eigen::Index i = 0; i < h; ++i)
            c(i) = static_cast<double>(basis.cycles[static_cast<std::size_t>(i)][e]);
        auto ei = static_cast<Eigen::Index>(e);
        m += y[e] * c * c.transpose();
        w1 += y[e] * c * omega1.row(ei);
        w2 += y[e] * c * omega2.row(ei);
        q += y[e] * omega1.row(ei).transpose() * omega2.row(ei);
    }
    if (h == 0)
        return q;
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() != Eigen::Success)
        throw NumericError("period matrix is not positive definite");
    return q - w1.transpose() * llt.solve(w2);
}

Eigen::MatrixXd lift_matrix(const graph::Multigraph& g, const MomentumAssignment& p)
{
    auto lift = momentum_lift(g, p);
    Eigen::MatrixXd w(static_cast<Eigen::Index>(g.edge_count()), p.space().dim());
    for (std::size_t e = 0; e < g.edge_count(); ++e)
        for (int mu = 0; mu < p.space().dim(); ++mu)
            w(static_cast<Eigen::Index>(e), mu) = lift[e][static_cast<std::size_t>(mu)].get_d();
    return w;
}

} // namespace

MinkowskiSpace::MinkowskiSpace(int dim, std::vector<Rational> form) : dim_(dim), form_(std::move(form))
{
    if (dim < 1)
        throw InputError("dimension must be positive", "minkowski.dim");
    if (form_.size() != static_cast<std::size_t>(dim * dim))
        throw InputError("form must be " + std::to_string(dim) + "x" + std::to_string(dim), "minkowski.matrix");
    for (auto& x : form_)
        x.canonicalize();
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < i; ++j)
            if (q(i, j) != q(j, i))
                throw InputError("form is not symmetric", "minkowski.matrix");
    if (rational_det(form_, dim) == 0)
        throw InputError("form is degenerate", "minkowski.matrix");
}

MinkowskiSpace MinkowskiSpace::euclidean(int dim)
{
    std::vector<Rational> f(static_cast<std::size_t>(dim * dim), Rational(0));
    for (int i = 0; i < dim; ++i)
        f[static_cast<std::size_t>(i * dim + i)] = 1;
    return MinkowskiSpace(dim, std::move(f));
}

MinkowskiSpace MinkowskiSpace::lorentzian(int dim)
{
    std::vector<Rational> f(static_cast<std::size_t>(dim * dim), Rational(0));
    for (int i = 0; i < dim; ++i)
        f[static_cast<std::size_t>(i * dim + i)] = i == 0 ? 1 : -1;
    return MinkowskiSpace(dim, std::move(f));
}

Rational MinkowskiSpace::pair(const Momentum& a, const Momentum& b) const
{
    if (a.size() != static_cast<std::size_t>(dim_) || b.size() != static_cast<std::size_t>(dim_))
        throw InputError("momentum has wrong dimension");
    Rational s = 0;
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
            if (q(i, j) != 0)
                s += q(i, j) * a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
    return s;
}

double MinkowskiSpace::pair(std::span<const double> a, std::span<const double> b) const
{
    double s = 0;
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
            s += q(i, j).get_d() * a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
    return s;
}

MomentumAssignment::MomentumAssignment(MinkowskiSpace space, std::vector<Momentum> per_vertex)
    : space_(std::move(space)), p_(std::move(per_vertex))
{
    Momentum total(static_cast<std::size_t>(space_.dim()), Rational(0));
    for (auto& pv : p_)
        for (auto& x : pv)
            x.canonicalize();
    for (std::size_t v = 0; v < p_.size(); ++v) {
        if (p_[v].size() != static_cast<std::size_t>(space_.dim()))
            throw InputError("momentum has dimension " + std::to_string(p_[v].size()) + ", expected " +
                                 std::to_string(space_.dim()),
                             "momenta[" + std::to_string(v) + "]");
        for (std::size_t i = 0; i < total.size(); ++i)
            total[i] += p_[v][i];
    }
    for (const auto& t : total)
        if (t != 0)
            throw InputError("momentum conservation violated: the momenta must sum to zero");
}

MomentumAssignment MomentumAssignment::operator+(const MomentumAssignment& o) const
{
    auto p = p_;
    for (std::size_t v = 0; v < p.size(); ++v)
        for (std::size_t i = 0; i < p[v].size(); ++i)
            p[v][i] += o.p_.at(v).at(i);
    return MomentumAssignment(space_, std::move(p));
}

MomentumAssignment MomentumAssignment::scaled(const Rational& c) const
{
    auto p = p_;
    for (auto& m : p)
        for (auto& x : m)
            x *= c;
    return MomentumAssignment(space_, std::move(p));
}

std::vector<EdgeQuadratic> edge_quadratics(const graph::Multigraph& g, const graph::CycleBasis& basis)
{
    for (const auto& c : basis.cycles)
        if (!graph::is_cycle(g, c))
            throw InputError("basis element is not a cycle");
    std::vector<EdgeQuadratic> out;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        EdgeQuadratic q{e, {}};
        for (const auto& c : basis.cycles)
            q.c.push_back(c[e]);
        out.push_back(std::move(q));
    }
    return out;
}

MomentumLift momentum_lift(const graph::Multigraph& g, const MomentumAssignment& p)
{
    check_vertices(g, p);
    auto tree = graph::designated_tree(g);
    std::size_t n = g.vertex_count();
    auto d = static_cast<std::size_t>(p.space().dim());
    MomentumLift w(g.edge_count(), Momentum(d, Rational(0)));
    std::vector<Momentum> residual = p.per_vertex();
    std::vector<std::size_t> degree(n, 0);
    std::vector<bool> used(g.edge_count(), false);
    for (auto e : tree) {
        ++degree[g.edge(e).tail];
        ++degree[g.edge(e).head];
    }
    // Peel leaves (other than the root, vertex 0) until only the root is left.
    for (std::size_t round = 0; round + 1 < n; ++round) {
        std::size_t leaf = n;
        for (std::size_t v = 1; v < n; ++v)
            if (degree[v] == 1) {
                leaf = v;
                break;
            }
        std::size_t edge = g.edge_count();
        for (auto e : tree)
            if (!used[e] && (g.edge(e).tail == leaf || g.edge(e).head == leaf)) {
                edge = e;
                break;
            }
        used[edge] = true;
        std::size_t other = g.edge(edge).tail == leaf ? g.edge(edge).head : g.edge(edge).tail;
        int sign = g.edge(edge).head == leaf ? 1 : -1;
        for (std::size_t i = 0; i < d; ++i) {
            w[edge][i] = sign * residual[leaf][i];
            residual[other][i] += residual[leaf][i];
        }
        --degree[leaf];
        --degree[other];
    }
    return w;
}

bool lift_is_valid(const graph::Multigraph& g, const MomentumAssignment& p, const MomentumLift& w)
{
    auto d = static_cast<std::size_t>(p.space().dim());
    std::vector<Momentum> bd(g.vertex_count(), Momentum(d, Rational(0)));
    for (std::size_t e = 0; e < g.edge_count(); ++e)
        for (std::size_t i = 0; i < d; ++i) {
            bd[g.edge(e).head][i] += w[e][i];
            bd[g.edge(e).tail][i] -= w[e][i];
        }
    return bd == p.per_vertex();
}

MultiPoly first_symanzik_det(const std::vector<EdgeQuadratic>& quads, std::size_t h, poly::RegistryPtr reg)
{
    poly::RingMatrix m(reg, h, h);
    for (const auto& q : quads) {
        auto y = MultiPoly::variable(reg, q.edge);
        for (std::size_t i = 0; i < h; ++i)
            for (std::size_t j = 0; j < h; ++j)
                if (q.c[i] * q.c[j] != 0)
                    m(i, j) += Rational(q.c[i] * q.c[j]) * y;
    }
    return poly::det_fraction_free(m);
}

MultiPoly first_symanzik_det(const graph::Multigraph& g)
{
    auto basis = graph::cycle_basis(g);
    return first_symanzik_det(edge_quadratics(g, basis), basis.size(), g.edge_registry());
}

MultiPoly first_symanzik_trees(const graph::Multigraph& g)
{
    auto reg = g.edge_registry();
    auto trees = graph::spanning_trees(g);
    if (trees.disconnected)
        throw InputError("graph is disconnected");
    MultiPoly psi(reg);
    for (const auto& t : trees.trees) {
        poly::Monomial m(g.edge_count(), 1);
        for (auto e : t)
            m[e] = 0;
        psi.add_term(m, 1);
    }
    return psi;
}

MultiPoly second_symanzik_forests(const graph::Multigraph& g, const MomentumAssignment& p)
{
    check_vertices(g, p);
    auto reg = g.edge_registry();
    MultiPoly phi(reg);
    auto d = static_cast<std::size_t>(p.space().dim());
    for (const auto& f : graph::spanning_2forests(g)) {
        Momentum p1(d, Rational(0)), p2(d, Rational(0));
        for (std::size_t v = 0; v < g.vertex_count(); ++v)
            for (std::size_t i = 0; i < d; ++i)
                (f.in_first[v] ? p1 : p2)[i] += p.at(v)[i];
        Rational coef = -p.space().pair(p1, p2);
        poly::Monomial m(g.edge_count(), 1);
        for (auto e : f.edges)
            m[e] = 0;
        phi.add_term(m, coef);
    }
    return phi;
}

namespace {

// Bordered determinant for scalar edge momenta w_e.
MultiPoly bordered_scalar(const std::vector<EdgeQuadratic>& quads, std::size_t h, const std::vector<Rational>& w,
                          const poly::RegistryPtr& reg)
{
    poly::RingMatrix t(reg, h + 1, h + 1);
    for (const auto& q : quads) {
        auto y = MultiPoly::variable(reg, q.edge);
        std::vector<Rational> v;
        for (auto c : q.c)
            v.emplace_back(c);
        v.push_back(w[q.edge]);
        for (std::size_t i = 0; i <= h; ++i)
            for (std::size_t j = 0; j <= h; ++j) {
                Rational c = v[i] * v[j];
                if (c != 0)
                    t(i, j) += c * y;
            }
    }
    return poly::det_fraction_free(t);
}

} // namespace

MultiPoly second_symanzik_bordered(const graph::Multigraph& g, const graph::CycleBasis& basis,
                                   const MomentumAssignment& p, const MomentumLift& lift)
{
    check_vertices(g, p);
    if (!lift_is_valid(g, p, lift))
        throw InputError("edge momenta do not lift the vertex momenta");
    auto reg = g.edge_registry();
    auto quads = edge_quadratics(g, basis);
    std::size_t h = basis.size();
    int dim = p.space().dim();
    auto component = [&](int mu, int nu) {
        std::vector<Rational> w(g.edge_count());
        for (std::size_t e = 0; e < g.edge_count(); ++e) {
            w[e] = lift[e][static_cast<std::size_t>(mu)];
            if (nu >= 0)
                w[e] += lift[e][static_cast<std::size_t>(nu)];
        }
        return bordered_scalar(quads, h, w, reg);
    };
    std::vector<MultiPoly> diag;
    for (int mu = 0; mu < dim; ++mu)
        diag.push_back(component(mu, -1));
    MultiPoly phi(reg);
    for (int mu = 0; mu < dim; ++mu)
        if (p.space().q(mu, mu) != 0)
            phi += p.space().q(mu, mu) * diag[static_cast<std::size_t>(mu)];
    for (int mu = 0; mu < dim; ++mu)
        for (int nu = mu + 1; nu < dim; ++nu) {
            const auto& q = p.space().q(mu, nu);
            if (q == 0)
                continue;
            auto cross = component(mu, nu) - diag[static_cast<std::size_t>(mu)] - diag[static_cast<std::size_t>(nu)];
            phi += q * cross;
        }
    return phi;
}

MultiPoly second_symanzik_bordered(const graph::Multigraph& g, const MomentumAssignment& p)
{
    return second_symanzik_bordered(g, graph::cycle_basis(g), p, momentum_lift(g, p));
}

double symanzik_ratio_bilinear(const graph::Multigraph& g, const MomentumAssignment& p1,
                               const MomentumAssignment& p2, std::span<const double> y)
{
    check_vertices(g, p1);
    check_vertices(g, p2);
    check_y(g, y);
    Eigen::MatrixXd s = schur_components(g, lift_matrix(g, p1), lift_matrix(g, p2), y);
    return (form_matrix(p1.space()).cwiseProduct(s)).sum();
}

double symanzik_ratio_eval(const graph::Multigraph& g, const MomentumAssignment& p, std::span<const double> y)
{
    return symanzik_ratio_bilinear(g, p, p, y);
}

double resistance_oracle(const graph::Multigraph& g, const MomentumAssignment& p, std::span<const double> y)
{
    check_vertices(g, p);
    check_y(g, y);
    if (!g.is_connected())
        throw InputError("graph is disconnected");
    auto n = static_cast<Eigen::Index>(g.vertex_count());
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        auto a = static_cast<Eigen::Index>(g.edge(e).tail), b = static_cast<Eigen::Index>(g.edge(e).head);
        if (a == b)
            continue;
        double c = 1.0 / y[e];
        lap(a, a) += c;
        lap(b, b) += c;
        lap(a, b) -= c;
        lap(b, a) -= c;
    }
    // L^+ = (L + J/n)^{-1} - J/n for a connected graph.
    Eigen::MatrixXd j = Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
    Eigen::MatrixXd pinv = (lap + j).inverse() - j;
    Eigen::MatrixXd pm = momentum_matrix(p);
    Eigen::MatrixXd s = pm.transpose() * pinv * pm;
    return (form_matrix(p.space()).cwiseProduct(s)).sum();
}

} // namespace th::symanzik
