#include "tropical_heights/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "tropical_heights/error.hpp"

namespace th::io {

json parse_text(const std::string& text, const std::string& what)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("invalid JSON: ") + e.what(), what);
    }
}

json read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open file", path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str(), path);
}

const json& field(const json& j, const std::string& key, const std::string& path)
{
    if (!j.is_object())
        throw InputError("expected an object", path);
    auto it = j.find(key);
    if (it == j.end())
        throw InputError("missing field", path.empty() ? key : path + "." + key);
    return *it;
}

namespace {

std::string join(const std::string& path, const std::string& key)
{
    return path.empty() ? key : path + "." + key;
}

std::string at(const std::string& path, std::size_t i)
{
    return path + "[" + std::to_string(i) + "]";
}

const json& array_field(const json& j, const std::string& key, const std::string& path)
{
    const auto& a = field(j, key, path);
    if (!a.is_array())
        throw InputError("expected an array", join(path, key));
    return a;
}

std::string string_value(const json& j, const std::string& path)
{
    if (!j.is_string())
        throw InputError("expected a string", path);
    return j.get<std::string>();
}

std::int64_t integer(const json& j, const std::string& path)
{
    if (!j.is_number_integer())
        throw InputError("expected an integer", path);
    return j.get<std::int64_t>();
}

Eigen::MatrixXcd complex_matrix(const json& j, const std::string& path)
{
    if (!j.is_array() || j.empty())
        throw InputError("expected a nonempty matrix", path);
    auto n = j.size();
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        if (!j[i].is_array() || j[i].size() != n)
            throw InputError("expected a square matrix", at(path, i));
        for (std::size_t k = 0; k < n; ++k)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = complex(j[i][k], at(at(path, i), k));
    }
    return m;
}

Eigen::VectorXcd complex_vector(const json& j, const std::string& path, std::size_t n)
{
    if (!j.is_array() || j.size() != n)
        throw InputError("expected a vector of length " + std::to_string(n), path);
    Eigen::VectorXcd v(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
        v(static_cast<Eigen::Index>(i)) = complex(j[i], at(path, i));
    return v;
}

poincare::BiextensionPoint parse_point_unchecked(const json& j, const std::string& path)
{
    poincare::BiextensionPoint x;
    x.omega = complex_matrix(field(j, "omega", path), join(path, "omega"));
    auto g = static_cast<std::size_t>(x.omega.rows());
    x.w = complex_vector(field(j, "w", path), join(path, "w"), g).transpose();
    x.z = complex_vector(field(j, "z", path), join(path, "z"), g);
    x.rho = complex(field(j, "rho", path), join(path, "rho"));
    return x;
}

std::map<std::string, Rational> momentum_map(const json& j, const std::string& path)
{
    if (!j.is_object())
        throw InputError("expected an object of section momenta", path);
    std::map<std::string, Rational> m;
    for (auto it = j.begin(); it != j.end(); ++it)
        m[it.key()] = rational(it.value(), join(path, it.key()));
    return m;
}

} // namespace

Rational rational(const json& j, const std::string& path)
{
    if (j.is_number_integer())
        return Rational(j.get<long>());
    if (j.is_string()) {
        try {
            return poly::parse_rational(j.get<std::string>());
        } catch (const InputError& e) {
            throw InputError(e.what(), path);
        }
    }
    throw InputError("expected a rational (integer or \"p/q\" string)", path);
}

double real(const json& j, const std::string& path)
{
    if (j.is_number())
        return j.get<double>();
    if (j.is_string())
        return rational(j, path).get_d();
    throw InputError("expected a number", path);
}

std::complex<double> complex(const json& j, const std::string& path)
{
    if (j.is_number())
        return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2)
        return {real(j[0], at(path, 0)), real(j[1], at(path, 1))};
    throw InputError("expected a complex number [re, im]", path);
}

symanzik::MinkowskiSpace parse_minkowski(const json& j, const std::string& path)
{
    auto dim = integer(field(j, "dim", path), join(path, "dim"));
    if (dim < 1 || dim > 64)
        throw InputError("dimension must be between 1 and 64", join(path, "dim"));
    const auto& m = array_field(j, "matrix", path);
    auto d = static_cast<std::size_t>(dim);
    if (m.size() != d)
        throw InputError("matrix must have " + std::to_string(d) + " rows", join(path, "matrix"));
    std::vector<Rational> form;
    for (std::size_t i = 0; i < d; ++i) {
        std::string rp = at(join(path, "matrix"), i);
        if (!m[i].is_array() || m[i].size() != d)
            throw InputError("row must have " + std::to_string(d) + " entries", rp);
        for (std::size_t k = 0; k < d; ++k)
            form.push_back(rational(m[i][k], at(rp, k)));
    }
    return symanzik::MinkowskiSpace(static_cast<int>(dim), std::move(form));
}

curve::DualGraphCurve parse_curve(const json& j)
{
    if (!j.is_object())
        throw InputError("graph file must be a JSON object");
    const auto& vs = array_field(j, "vertices", "");
    const auto& es = array_field(j, "edges", "");
    std::vector<std::string> ids;
    std::vector<int> genus;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        std::string p = at("vertices", i);
        ids.push_back(string_value(field(vs[i], "id", p), p + ".id"));
        int gv = 0;
        if (vs[i].contains("genus")) {
            auto v = integer(vs[i]["genus"], p + ".genus");
            if (v < 0)
                throw InputError("genus must be nonnegative", p + ".genus");
            gv = static_cast<int>(v);
        }
        genus.push_back(gv);
    }
    std::vector<graph::EdgeSpec> specs;
    for (std::size_t i = 0; i < es.size(); ++i) {
        std::string p = at("edges", i);
        specs.push_back({string_value(field(es[i], "id", p), p + ".id"), string_value(field(es[i], "tail", p), p + ".tail"),
                         string_value(field(es[i], "head", p), p + ".head")});
    }
    curve::DualGraphCurve c{graph::Multigraph(ids, specs), genus, {}, std::nullopt};
    if (j.contains("minkowski"))
        c.space = parse_minkowski(j["minkowski"], "minkowski");
    if (j.contains("markings")) {
        const auto& ms = array_field(j, "markings", "");
        std::set<std::string> seen;
        for (std::size_t i = 0; i < ms.size(); ++i) {
            std::string p = at("markings", i);
            curve::Marking mk;
            mk.id = string_value(field(ms[i], "id", p), p + ".id");
            if (!seen.insert(mk.id).second)
                throw InputError("duplicate marking id '" + mk.id + "'", p + ".id");
            auto v = string_value(field(ms[i], "vertex", p), p + ".vertex");
            try {
                mk.vertex = c.graph.vertex_index(v);
            } catch (const InputError& e) {
                throw InputError(e.what(), p + ".vertex");
            }
            if (ms[i].contains("momentum")) {
                const auto& mv = ms[i]["momentum"];
                if (!mv.is_array() || mv.empty())
                    throw InputError("expected a nonempty array of rationals", p + ".momentum");
                for (std::size_t k = 0; k < mv.size(); ++k)
                    mk.momentum.push_back(rational(mv[k], at(p + ".momentum", k)));
                if (!c.space)
                    c.space = symanzik::MinkowskiSpace::euclidean(static_cast<int>(mv.size()));
                if (mk.momentum.size() != static_cast<std::size_t>(c.space->dim()))
                    throw InputError("momentum has dimension " + std::to_string(mk.momentum.size()) + ", expected " +
                                         std::to_string(c.space->dim()),
                                     p + ".momentum");
            }
            c.markings.push_back(std::move(mk));
        }
        bool any = false, all = true;
        for (const auto& m : c.markings) {
            any = any || !m.momentum.empty();
            all = all && !m.momentum.empty();
        }
        if (any && !all)
            throw InputError("either every marking or none carries a momentum", "markings");
        if (any) {
            std::vector<Rational> total(static_cast<std::size_t>(c.space->dim()), Rational(0));
            for (const auto& m : c.markings)
                for (std::size_t k = 0; k < total.size(); ++k)
                    total[k] += m.momentum[k];
            for (const auto& t : total)
                if (t != 0)
                    throw InputError("momentum conservation violated: the marking momenta must sum to zero", "markings");
        }
    }
    return c;
}

poincare::BiextensionPoint parse_point(const json& j, const std::string& path)
{
    auto x = parse_point_unchecked(j, path);
    try {
        x.validate();
    } catch (const InputError& e) {
        throw InputError(std::string(e.what()), path);
    }
    return x;
}

MonodromyFixture parse_monodromy_fixture(const json& j, const graph::Multigraph& g, std::size_t genus)
{
    MonodromyFixture f;
    const auto& edges = field(j, "edges", "");
    if (!edges.is_object())
        throw InputError("expected an object keyed by edge id", "edges");
    for (auto it = edges.begin(); it != edges.end(); ++it)
        g.edge_index(it.key()); // rejects unknown edges
    auto p1 = momentum_map(field(j, "p1", ""), "p1");
    auto p2 = momentum_map(field(j, "p2", ""), "p2");
    for (const auto& [k, v] : p1) {
        f.sc.ids1.push_back(k);
        f.p1.push_back(v);
    }
    for (const auto& [k, v] : p2) {
        f.sc.ids2.push_back(k);
        f.p2.push_back(v);
    }
    auto basis = graph::cycle_basis(g);
    f.vc = monodromy::vanishing_cycles(g, basis, genus);
    f.sc.d1.assign(g.edge_count(), std::vector<std::int64_t>(f.sc.ids1.size(), 0));
    f.sc.d2.assign(g.edge_count(), std::vector<std::int64_t>(f.sc.ids2.size(), 0));
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const auto& id = g.edge(e).id;
        std::string p = "edges." + id;
        if (!edges.contains(id))
            continue;
        const auto& ed = edges[id];
        if (ed.contains("c")) {
            const auto& c = ed["c"];
            if (!c.is_array() || c.size() > genus)
                throw InputError("expected at most " + std::to_string(genus) + " integers", p + ".c");
            std::vector<std::int64_t> cv(genus, 0);
            for (std::size_t i = 0; i < c.size(); ++i)
                cv[i] = integer(c[i], at(p + ".c", i));
            f.vc.c[e] = cv;
        }
        for (int side : {1, 2}) {
            std::string key = side == 1 ? "d1" : "d2";
            if (!ed.contains(key))
                continue;
            const auto& d = ed[key];
            if (!d.is_object())
                throw InputError("expected an object keyed by section id", p + "." + key);
            const auto& ids = side == 1 ? f.sc.ids1 : f.sc.ids2;
            auto& row = side == 1 ? f.sc.d1[e] : f.sc.d2[e];
            for (auto it = d.begin(); it != d.end(); ++it) {
                auto pos = std::find(ids.begin(), ids.end(), it.key());
                if (pos == ids.end())
                    throw InputError("section '" + it.key() + "' has no momentum in p" + std::to_string(side),
                                     p + "." + key + "." + it.key());
                row[static_cast<std::size_t>(pos - ids.begin())] = integer(it.value(), p + "." + key + "." + it.key());
            }
        }
    }
    for (int side : {1, 2}) {
        std::string key = side == 1 ? "vertices1" : "vertices2";
        if (!j.contains(key))
            continue;
        const auto& vm = j[key];
        if (!vm.is_object())
            throw InputError("expected an object keyed by section id", key);
        auto& out = side == 1 ? f.vertices1 : f.vertices2;
        for (auto it = vm.begin(); it != vm.end(); ++it) {
            try {
                out[it.key()] = g.vertex_index(string_value(it.value(), key + "." + it.key()));
            } catch (const InputError& e) {
                throw InputError(e.what(), key + "." + it.key());
            }
        }
    }
    return f;
}

LimitFixture parse_limit_fixture(const json& j, const graph::Multigraph& g)
{
    LimitFixture lf;
    const auto& psi = field(j, "psi0", "");
    lf.psi0.base = parse_point_unchecked(psi, "psi0");
    auto genus = static_cast<std::size_t>(lf.psi0.base.omega.rows());
    if (psi.contains("radius"))
        lf.psi0.radius = real(psi["radius"], "psi0.radius");
    if (!(lf.psi0.radius > 0 && lf.psi0.radius < 1))
        throw InputError("polydisc radius must lie in (0, 1)", "psi0.radius");
    if (psi.contains("linear")) {
        const auto& lin = psi["linear"];
        if (!lin.is_object())
            throw InputError("expected an object keyed by edge id", "psi0.linear");
        for (std::size_t e = 0; e < g.edge_count(); ++e) {
            poincare::BiextensionPoint zero;
            zero.omega = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(genus), static_cast<Eigen::Index>(genus));
            zero.w = Eigen::RowVectorXcd::Zero(static_cast<Eigen::Index>(genus));
            zero.z = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(genus));
            zero.rho = 0;
            const auto& id = g.edge(e).id;
            lf.psi0.linear.push_back(lin.contains(id) ? parse_point_unchecked(lin[id], "psi0.linear." + id) : zero);
        }
    }
    if (j.contains("h0"))
        lf.h0 = real(j["h0"], "h0");
    if (!(lf.h0 >= 0))
        throw InputError("h0 must be nonnegative", "h0");
    lf.mono = parse_monodromy_fixture(j, g, genus);
    return lf;
}

asymptotics::AdmissibleSegment parse_segment(const json& j, const graph::Multigraph& g, std::vector<double>& schedule)
{
    asymptotics::AdmissibleSegment seg;
    const auto& edges = field(j, "edges", "");
    if (!edges.is_object())
        throw InputError("expected an object keyed by edge id", "edges");
    for (auto it = edges.begin(); it != edges.end(); ++it)
        g.edge_index(it.key());
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const auto& id = g.edge(e).id;
        std::string p = "edges." + id;
        const auto& ed = field(edges, id, "edges");
        asymptotics::SegmentEdge s;
        s.Y = real(field(ed, "Y", p), p + ".Y");
        if (ed.contains("x"))
            s.x = real(ed["x"], p + ".x");
        if (ed.contains("amp"))
            s.amp = real(ed["amp"], p + ".amp");
        if (ed.contains("freq"))
            s.freq = real(ed["freq"], p + ".freq");
        if (ed.contains("shift"))
            s.shift = real(ed["shift"], p + ".shift");
        seg.edges.push_back(s);
    }
    if (j.contains("schedule")) {
        const auto& s = j["schedule"];
        if (!s.is_array() || s.empty())
            throw InputError("expected a nonempty array", "schedule");
        schedule.clear();
        for (std::size_t i = 0; i < s.size(); ++i)
            schedule.push_back(real(s[i], at("schedule", i)));
    }
    return seg;
}

lab::DegenerationFamily parse_family(const json& j)
{
    lab::DegenerationFamily fam;
    fam.Y = real(field(j, "Y", ""), "Y");
    if (j.contains("mode")) {
        auto mode = string_value(j["mode"], "mode");
        if (mode != "self" && mode != "disjoint")
            throw InputError("mode must be \"self\" or \"disjoint\"", "mode");
        fam.self_mode = mode == "self";
    }
    if (j.contains("minkowski"))
        fam.space = parse_minkowski(j["minkowski"], "minkowski");
    if (j.contains("schedule")) {
        const auto& s = j["schedule"];
        if (!s.is_array() || s.empty())
            throw InputError("expected a nonempty array", "schedule");
        fam.schedule.clear();
        for (std::size_t i = 0; i < s.size(); ++i)
            fam.schedule.push_back(real(s[i], at("schedule", i)));
    }
    if (j.contains("metric_scale"))
        fam.metric_scale = real(j["metric_scale"], "metric_scale");
    const auto& cs = array_field(j, "charges", "");
    bool space_given = j.contains("minkowski");
    for (std::size_t i = 0; i < cs.size(); ++i) {
        std::string p = at("charges", i);
        lab::FamilyCharge ch;
        ch.c = real(field(cs[i], "c", p), p + ".c");
        if (cs[i].contains("x"))
            ch.x = real(cs[i]["x"], p + ".x");
        const auto& mv = field(cs[i], "momentum", p);
        if (!mv.is_array() || mv.empty())
            throw InputError("expected a nonempty array of rationals", p + ".momentum");
        for (std::size_t k = 0; k < mv.size(); ++k)
            ch.p.push_back(rational(mv[k], at(p + ".momentum", k)));
        if (!space_given && i == 0 && mv.size() != 1)
            fam.space = symanzik::MinkowskiSpace::euclidean(static_cast<int>(mv.size()));
        if (ch.p.size() != static_cast<std::size_t>(fam.space.dim()))
            throw InputError("momentum has dimension " + std::to_string(ch.p.size()) + ", expected " +
                                 std::to_string(fam.space.dim()),
                             p + ".momentum");
        if (cs[i].contains("divisor"))
            ch.divisor = static_cast<int>(integer(cs[i]["divisor"], p + ".divisor"));
        fam.charges.push_back(std::move(ch));
    }
    return fam;
}

std::string format_rational(const Rational& q)
{
    Rational c(q);
    c.canonicalize();
    return c.get_str(10);
}

json to_json(const monodromy::RatMatrix& m)
{
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) {
            const auto& v = m(i, k);
            if (v.get_den() == 1 && v.get_num().fits_slong_p())
                row.push_back(v.get_num().get_si());
            else
                row.push_back(format_rational(v));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace th::io
