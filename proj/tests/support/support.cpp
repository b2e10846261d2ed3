#include "support.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <numeric>
#include <queue>

namespace support {

std::string edge_id(std::size_t i)
{
    char buf[16];
    std::snprintf(buf, sizeof buf, "e%02zu", i);
    return buf;
}

std::string vertex_id(std::size_t i)
{
    return "v" + std::to_string(i);
}

namespace {

std::vector<std::string> vertex_ids(std::size_t n)
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(vertex_id(i));
    return out;
}

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x)
    {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(std::size_t a, std::size_t b)
    {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        parent[a] = b;
        return true;
    }
};

bool connected(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& pairs)
{
    UnionFind uf(n);
    std::size_t comps = n;
    for (auto [a, b] : pairs)
        comps -= uf.unite(a, b);
    return comps == 1;
}

} // namespace

std::vector<Multigraph> all_multigraphs(std::size_t n, std::size_t m)
{
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b)
            slots.emplace_back(a, b);
    std::vector<Multigraph> out;
    std::vector<std::size_t> pick(m, 0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t k, std::size_t from) {
        if (k == m) {
            std::vector<std::pair<std::size_t, std::size_t>> pairs;
            for (auto s : pick)
                pairs.push_back(slots[s]);
            if (!connected(n, pairs))
                return;
            std::vector<EdgeSpec> es;
            for (std::size_t i = 0; i < m; ++i)
                es.push_back({edge_id(i), vertex_id(pairs[i].first), vertex_id(pairs[i].second)});
            out.emplace_back(vertex_ids(n), es);
            return;
        }
        for (std::size_t s = from; s < slots.size(); ++s) {
            pick[k] = s;
            rec(k + 1, s);
        }
    };
    rec(0, 0);
    return out;
}

Multigraph random_graph(Rng& rng, std::size_t n, std::size_t m, bool loops)
{
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t v = 1; v < n; ++v)
        pairs.emplace_back(std::uniform_int_distribution<std::size_t>(0, v - 1)(rng), v);
    std::uniform_int_distribution<std::size_t> pickv(0, n - 1);
    while (pairs.size() < m) {
        auto a = pickv(rng), b = pickv(rng);
        if (a == b && !loops)
            continue;
        pairs.emplace_back(a, b);
    }
    std::shuffle(pairs.begin(), pairs.end(), rng);
    std::vector<EdgeSpec> es;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        auto [a, b] = pairs[i];
        if (rng() & 1)
            std::swap(a, b);
        es.push_back({edge_id(i), vertex_id(a), vertex_id(b)});
    }
    return Multigraph(vertex_ids(n), es);
}

MomentumAssignment random_momenta(Rng& rng, const MinkowskiSpace& space, std::size_t vertices)
{
    std::uniform_int_distribution<int> coef(-3, 3);
    auto d = static_cast<std::size_t>(space.dim());
    std::vector<th::symanzik::Momentum> p(vertices, th::symanzik::Momentum(d, Rational(0)));
    for (std::size_t v = 0; v + 1 < vertices; ++v)
        for (std::size_t k = 0; k < d; ++k) {
            p[v][k] = coef(rng);
            p[vertices - 1][k] -= p[v][k];
        }
    return MomentumAssignment(space, p);
}

MinkowskiSpace random_space(Rng& rng, int dim)
{
    switch (rng() % 3) {
    case 0:
        return MinkowskiSpace::euclidean(dim);
    case 1:
        return MinkowskiSpace::lorentzian(dim);
    default: {
        // symmetric, diagonally dominant, hence nondegenerate
        std::uniform_int_distribution<int> c(-1, 1);
        std::vector<Rational> f(static_cast<std::size_t>(dim * dim), Rational(0));
        for (int i = 0; i < dim; ++i)
            for (int j = i + 1; j < dim; ++j)
                f[static_cast<std::size_t>(i * dim + j)] = f[static_cast<std::size_t>(j * dim + i)] = Rational(c(rng), 2);
        for (int i = 0; i < dim; ++i)
            f[static_cast<std::size_t>(i * dim + i)] = (rng() & 1) ? dim : -dim;
        return MinkowskiSpace(dim, f);
    }
    }
}

SubsetCounts brute_force_subsets(const Multigraph& g)
{
    SubsetCounts out;
    std::size_t n = g.vertex_count(), m = g.edge_count();
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << m); ++mask) {
        UnionFind uf(n);
        bool acyclic = true;
        std::vector<std::size_t> es;
        for (std::size_t e = 0; e < m && acyclic; ++e)
            if (mask >> e & 1) {
                es.push_back(e);
                acyclic = uf.unite(g.edge(e).tail, g.edge(e).head);
            }
        if (!acyclic)
            continue;
        std::size_t comps = n - es.size();
        if (comps == 1)
            out.trees.push_back(es);
        else if (comps == 2)
            out.forests.push_back(es);
    }
    return out;
}

double laplacian_oracle(const Multigraph& g, const MomentumAssignment& p1, const MomentumAssignment& p2,
                        const std::vector<double>& y)
{
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
    Eigen::MatrixXd pinv = lap.completeOrthogonalDecomposition().pseudoInverse();
    int d = p1.space().dim();
    double total = 0;
    for (int mu = 0; mu < d; ++mu)
        for (int nu = 0; nu < d; ++nu) {
            double q = p1.space().q(mu, nu).get_d();
            if (q == 0)
                continue;
            Eigen::VectorXd a(n), b(n);
            for (Eigen::Index v = 0; v < n; ++v) {
                a(v) = p1.at(static_cast<std::size_t>(v))[static_cast<std::size_t>(mu)].get_d();
                b(v) = p2.at(static_cast<std::size_t>(v))[static_cast<std::size_t>(nu)].get_d();
            }
            total += q * a.dot(pinv * b);
        }
    return total;
}

namespace {

// Shortest walk between two vertices by breadth-first search.
std::vector<std::pair<std::size_t, bool>> bfs_walk(const Multigraph& g, std::size_t from, std::size_t to)
{
    std::vector<long> via(g.vertex_count(), -1);
    std::vector<bool> seen(g.vertex_count(), false), forward(g.vertex_count(), false);
    std::queue<std::size_t> q;
    q.push(from);
    seen[from] = true;
    while (!q.empty()) {
        auto v = q.front();
        q.pop();
        for (std::size_t e = 0; e < g.edge_count(); ++e) {
            const auto& ed = g.edge(e);
            for (bool fw : {true, false}) {
                auto a = fw ? ed.tail : ed.head, b = fw ? ed.head : ed.tail;
                if (a == v && !seen[b]) {
                    seen[b] = true;
                    via[b] = static_cast<long>(e);
                    forward[b] = fw;
                    q.push(b);
                }
            }
        }
    }
    std::vector<std::pair<std::size_t, bool>> steps;
    for (auto v = to; v != from;) {
        auto e = static_cast<std::size_t>(via[v]);
        steps.emplace_back(e, forward[v]);
        v = forward[v] ? g.edge(e).tail : g.edge(e).head;
    }
    std::reverse(steps.begin(), steps.end());
    return steps;
}

th::monodromy::SectionPath random_walk_to(Rng& rng, const Multigraph& g, std::size_t target)
{
    th::monodromy::SectionPath p{target, {}};
    std::size_t at = 0;
    int detour = static_cast<int>(rng() % 5);
    for (int k = 0; k < detour; ++k) {
        std::vector<std::pair<std::size_t, bool>> moves;
        for (std::size_t e = 0; e < g.edge_count(); ++e) {
            if (g.edge(e).tail == at)
                moves.emplace_back(e, true);
            if (g.edge(e).head == at)
                moves.emplace_back(e, false);
        }
        auto mv = moves[rng() % moves.size()];
        p.steps.push_back(mv);
        at = mv.second ? g.edge(mv.first).head : g.edge(mv.first).tail;
    }
    for (auto s : bfs_walk(g, at, target))
        p.steps.push_back(s);
    return p;
}

} // namespace

PathFixture random_path_fixture(Rng& rng, const Multigraph& g, std::size_t extra_genus)
{
    PathFixture f{g, th::graph::first_betti(g) + extra_genus, {}, {}, {}, {}, {}, {}};
    f.vc = th::monodromy::vanishing_cycles(g, th::graph::cycle_basis(g), f.genus);
    std::uniform_int_distribution<std::size_t> pickv(0, g.vertex_count() - 1);
    std::uniform_int_distribution<int> coef(-3, 3);
    std::vector<th::monodromy::SectionPath> side[2];
    std::vector<std::string> ids[2];
    for (int s = 0; s < 2; ++s) {
        auto count = 2 + rng() % 3;
        auto& p = s == 0 ? f.p1 : f.p2;
        auto& where = s == 0 ? f.vertices1 : f.vertices2;
        Rational sum = 0;
        for (std::size_t l = 0; l < count; ++l) {
            auto v = pickv(rng);
            where.push_back(v);
            side[s].push_back(random_walk_to(rng, g, v));
            ids[s].push_back((s == 0 ? "a" : "b") + std::to_string(l));
            Rational x = l + 1 < count ? Rational(coef(rng)) : -sum;
            sum += x;
            p.push_back(x);
        }
    }
    f.sc = th::monodromy::crossing_from_paths(g, 0, side[0], side[1], ids[0], ids[1]);
    return f;
}

MomentumAssignment lift_boundary(const Multigraph& g, const std::vector<Rational>& w)
{
    std::vector<th::symanzik::Momentum> p(g.vertex_count(), th::symanzik::Momentum(1, Rational(0)));
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        p[g.edge(e).head][0] += w[e];
        p[g.edge(e).tail][0] -= w[e];
    }
    return MomentumAssignment(MinkowskiSpace::euclidean(1), p);
}

MomentumAssignment section_momenta(const Multigraph& g, const std::vector<std::size_t>& where,
                                   const std::vector<Rational>& p)
{
    std::vector<th::symanzik::Momentum> out(g.vertex_count(), th::symanzik::Momentum(1, Rational(0)));
    for (std::size_t l = 0; l < where.size(); ++l)
        out[where[l]][0] += p[l];
    return MomentumAssignment(MinkowskiSpace::euclidean(1), out);
}

std::vector<th::asymptotics::EdgeBlock> numeric_blocks(const PathFixture& f)
{
    std::vector<th::asymptotics::EdgeBlock> out;
    for (std::size_t e = 0; e < f.graph.edge_count(); ++e)
        out.push_back(th::asymptotics::numeric_block(th::monodromy::build_Ne(f.vc, f.sc, f.p1, f.p2, e)));
    return out;
}

th::poincare::BiextensionPoint random_point(Rng& rng, int g, double scale)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::MatrixXd x(g, g), a(g, g);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
            x(i, j) = scale * u(rng);
            a(i, j) = u(rng);
        }
    x = 0.5 * (x + x.transpose()).eval();
    Eigen::MatrixXd im = a * a.transpose() + 0.5 * Eigen::MatrixXd::Identity(g, g);
    th::poincare::BiextensionPoint p;
    p.omega = x.cast<std::complex<double>>() + std::complex<double>(0, 1) * im.cast<std::complex<double>>();
    p.w.resize(g);
    p.z.resize(g);
    for (int i = 0; i < g; ++i) {
        p.w(i) = {scale * u(rng), scale * u(rng)};
        p.z(i) = {scale * u(rng), scale * u(rng)};
    }
    p.rho = {scale * u(rng), scale * u(rng)};
    return p;
}

Eigen::MatrixXd random_symplectic(Rng& rng, int g, bool integral)
{
    std::uniform_int_distribution<int> ci(-2, 2);
    std::uniform_real_distribution<double> cr(-1.0, 1.0);
    auto entry = [&] { return integral ? static_cast<double>(ci(rng)) : cr(rng); };
    Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2 * g, 2 * g);
    for (int k = 0; k < 4; ++k) {
        Eigen::MatrixXd gen = Eigen::MatrixXd::Identity(2 * g, 2 * g);
        Eigen::MatrixXd sym(g, g);
        for (int i = 0; i < g; ++i)
            for (int j = i; j < g; ++j)
                sym(i, j) = sym(j, i) = entry();
        switch (rng() % 4) {
        case 0:
            gen.topRightCorner(g, g) = sym;
            break;
        case 1:
            gen.bottomLeftCorner(g, g) = sym;
            break;
        case 2: {
            Eigen::MatrixXd a = Eigen::MatrixXd::Identity(g, g);
            for (int i = 0; i < g; ++i)
                for (int j = i + 1; j < g; ++j)
                    a(i, j) = entry();
            gen.topLeftCorner(g, g) = a;
            gen.bottomRightCorner(g, g) = a.transpose().inverse();
            break;
        }
        default:
            gen = th::poincare::standard_j(g);
        }
        s = s * gen;
    }
    return s;
}

th::poincare::GroupElement random_group_element(Rng& rng, int g)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto el = th::poincare::GroupElement::symplectic(random_symplectic(rng, g, false));
    Eigen::RowVectorXd l1(g), l2(g);
    Eigen::VectorXd m1(g), m2(g);
    for (int i = 0; i < g; ++i) {
        l1(i) = u(rng);
        l2(i) = u(rng);
        m1(i) = u(rng);
        m2(i) = u(rng);
    }
    el = th::poincare::GroupElement::translation(l1, l2).compose(el);
    el = th::poincare::GroupElement::shift(m1, m2).compose(el);
    return th::poincare::GroupElement::central(g, u(rng)).compose(el);
}

double rel_diff(double a, double b)
{
    return std::abs(a - b) / std::max({1e-300, std::abs(a), std::abs(b)});
}

} // namespace support
