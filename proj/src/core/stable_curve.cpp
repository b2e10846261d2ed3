#include "tropical_heights/stable_curve.hpp"

#include "tropical_heights/error.hpp"

namespace th::curve {

std::size_t DualGraphCurve::markings_at(std::size_t v) const
{
    std::size_t n = 0;
    for (const auto& m : markings)
        n += m.vertex == v;
    return n;
}

bool DualGraphCurve::has_momenta() const
{
    if (markings.empty() || !space)
        return false;
    for (const auto& m : markings)
        if (m.momentum.empty())
            return false;
    return true;
}

StabilityReport is_stable(const DualGraphCurve& c, bool with_markings)
{
    StabilityReport r;
    if (c.genus.size() != c.graph.vertex_count())
        throw InputError("genus list does not match the vertex count");
    if (!c.graph.is_connected()) {
        r.stable = false;
        r.violations.push_back("dual graph is disconnected");
    }
    auto val = c.graph.valence();
    for (std::size_t v = 0; v < c.graph.vertex_count(); ++v) {
        if (c.genus[v] < 0)
            throw InputError("negative genus", "vertices[" + std::to_string(v) + "].genus");
        long n = with_markings ? static_cast<long>(c.markings_at(v)) : 0;
        long chi = 2L * c.genus[v] - 2 + static_cast<long>(val[v]) + n;
        if (chi <= 0) {
            r.stable = false;
            r.violations.push_back("vertex '" + c.graph.vertex_id(v) + "' has 2g-2+n = " + std::to_string(chi));
        }
    }
    if (arithmetic_genus(c) == 1 && (!with_markings || c.markings.empty()))
        r.outside_scope = true;
    return r;
}

int arithmetic_genus(const DualGraphCurve& c)
{
    int g = static_cast<int>(graph::first_betti(c.graph));
    for (int x : c.genus)
        g += x;
    return g;
}

symanzik::MomentumAssignment restrict_momenta(const DualGraphCurve& c)
{
    if (!c.has_momenta())
        throw InputError("curve has no marking momenta", "markings");
    auto d = static_cast<std::size_t>(c.space->dim());
    std::vector<symanzik::Momentum> p(c.graph.vertex_count(), symanzik::Momentum(d, poly::Rational(0)));
    for (std::size_t i = 0; i < c.markings.size(); ++i) {
        const auto& m = c.markings[i];
        if (m.momentum.size() != d)
            throw InputError("momentum has dimension " + std::to_string(m.momentum.size()) + ", expected " +
                                 std::to_string(d),
                             "markings[" + std::to_string(i) + "].momentum");
        for (std::size_t k = 0; k < d; ++k)
            p[m.vertex][k] += m.momentum[k];
    }
    return symanzik::MomentumAssignment(*c.space, std::move(p));
}

DeformationDimensions deformation_dimensions(const DualGraphCurve& c, bool marked)
{
    auto rep = is_stable(c, marked);
    if (!rep.stable)
        throw InputError("curve is not stable: " + rep.violations.front());
    long n = marked ? static_cast<long>(c.markings.size()) : 0;
    DeformationDimensions d{};
    d.total = 3L * arithmetic_genus(c) - 3 + n;
    auto val = c.graph.valence();
    for (std::size_t v = 0; v < c.graph.vertex_count(); ++v) {
        long nv = marked ? static_cast<long>(c.markings_at(v)) : 0;
        d.equisingular += 3L * c.genus[v] - 3 + static_cast<long>(val[v]) + nv;
    }
    d.boundary = static_cast<long>(c.graph.edge_count());
    return d;
}

DualGraphCurve subdivide_edge(const DualGraphCurve& c, std::size_t edge)
{
    const auto& g = c.graph;
    auto ids = g.vertex_ids();
    std::string mid = "mid_" + g.edge(edge).id;
    ids.push_back(mid);
    std::vector<graph::EdgeSpec> specs;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const auto& ed = g.edge(e);
        if (e == edge) {
            specs.push_back({ed.id + "a", g.vertex_id(ed.tail), mid});
            specs.push_back({ed.id + "b", mid, g.vertex_id(ed.head)});
        } else {
            specs.push_back({ed.id, g.vertex_id(ed.tail), g.vertex_id(ed.head)});
        }
    }
    DualGraphCurve out{graph::Multigraph(ids, specs), c.genus, c.markings, c.space};
    out.genus.push_back(0);
    return out;
}

} // namespace th::curve
