#include "tropical_heights/tropical_heights.h"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <numbers>
#include <thread>

#include "tropical_heights/analytic.hpp"
#include "tropical_heights/asymptotics.hpp"
#include "tropical_heights/error.hpp"
#include "tropical_heights/io.hpp"
#include "tropical_heights/monodromy.hpp"
#include "tropical_heights/poincare.hpp"
#include "tropical_heights/stable_curve.hpp"
#include "tropical_heights/symanzik.hpp"

struct th_graph {
    th::curve::DualGraphCurve curve;
};

namespace {

using th::io::json;
using th::poly::MultiPoly;
using th::poly::Rational;

thread_local std::string last_error;

template <class F>
int guarded(F&& f)
{
    try {
        last_error.clear();
        return f();
    } catch (const th::InputError& e) {
        last_error = e.what();
        return TH_INPUT_ERROR;
    } catch (const th::NumericError& e) {
        last_error = e.what();
        return TH_NUMERIC_ERROR;
    } catch (const std::exception& e) {
        last_error = e.what();
        return TH_INTERNAL_ERROR;
    }
}

void require(const void* p, const char* what)
{
    if (!p)
        throw th::InputError(std::string("null argument: ") + what);
}

char* dup_string(const std::string& s)
{
    auto* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p)
        throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

std::string method_or(const char* m, const char* fallback)
{
    return (m && *m) ? std::string(m) : std::string(fallback);
}

std::vector<double> parse_y(const th::graph::Multigraph& g, const char* spec)
{
    if (!spec)
        throw th::InputError("edge lengths are required", "y");
    std::vector<double> y(g.edge_count(), std::nan(""));
    std::string s(spec);
    std::size_t pos = 0;
    while (pos < s.size()) {
        auto comma = s.find(',', pos);
        auto item = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        pos = comma == std::string::npos ? s.size() : comma + 1;
        if (item.empty())
            continue;
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw th::InputError("expected edge=value, got '" + item + "'", "y");
        auto id = item.substr(0, eq);
        std::size_t e;
        try {
            e = g.edge_index(id);
        } catch (const th::InputError&) {
            throw th::InputError("unknown edge '" + id + "'", "y");
        }
        char* end = nullptr;
        std::string val = item.substr(eq + 1);
        y[e] = std::strtod(val.c_str(), &end);
        if (end == val.c_str() || *end != '\0')
            throw th::InputError("malformed number '" + val + "'", "y." + id);
    }
    for (std::size_t e = 0; e < y.size(); ++e)
        if (std::isnan(y[e]))
            throw th::InputError("no length given for edge '" + g.edge(e).id + "'", "y");
    return y;
}

MultiPoly first_poly(const th::curve::DualGraphCurve& c, const std::string& method)
{
    if (method == "det")
        return th::symanzik::first_symanzik_det(c.graph);
    if (method == "trees")
        return th::symanzik::first_symanzik_trees(c.graph);
    throw th::InputError("unknown method '" + method + "' (expected det or trees)", "method");
}

MultiPoly second_poly(const th::curve::DualGraphCurve& c, const std::string& method)
{
    auto p = th::curve::restrict_momenta(c);
    if (method == "bordered")
        return th::symanzik::second_symanzik_bordered(c.graph, p);
    if (method == "forests")
        return th::symanzik::second_symanzik_forests(c.graph, p);
    throw th::InputError("unknown method '" + method + "' (expected bordered or forests)", "method");
}

double ratio(const th::curve::DualGraphCurve& c, const std::string& method, const std::vector<double>& y)
{
    auto p = th::curve::restrict_momenta(c);
    if (method == "schur")
        return th::symanzik::symanzik_ratio_eval(c.graph, p, y);
    if (method == "resistance")
        return th::symanzik::resistance_oracle(c.graph, p, y);
    if (method == "forests" || method == "bordered" || method == "trees" || method == "det") {
        bool first_trees = method == "trees";
        bool second_forests = method == "forests";
        auto psi = first_trees ? th::symanzik::first_symanzik_trees(c.graph) : th::symanzik::first_symanzik_det(c.graph);
        auto phi = second_forests ? th::symanzik::second_symanzik_forests(c.graph, p)
                                  : th::symanzik::second_symanzik_bordered(c.graph, p);
        return phi.eval(y) / psi.eval(y);
    }
    throw th::InputError("unknown method '" + method + "'", "method");
}

bool close(double a, double b)
{
    return std::abs(a - b) <= 1e-9 * (1.0 + std::abs(a));
}

json first_check(const th::curve::DualGraphCurve& c)
{
    auto det = first_poly(c, "det");
    auto trees = first_poly(c, "trees");
    return {{"which", "first"},
            {"methods", {{"det", det.to_string()}, {"trees", trees.to_string()}}},
            {"agree", det == trees},
            {"result", det.to_string()}};
}

json second_check(const th::curve::DualGraphCurve& c)
{
    auto b = second_poly(c, "bordered");
    auto f = second_poly(c, "forests");
    return {{"which", "second"},
            {"methods", {{"bordered", b.to_string()}, {"forests", f.to_string()}}},
            {"agree", b == f},
            {"result", b.to_string()}};
}

json ratio_check(const th::curve::DualGraphCurve& c, const std::vector<double>& y)
{
    json methods = json::object();
    bool agree = true;
    double ref = ratio(c, "schur", y);
    for (const char* m : {"schur", "resistance", "bordered", "forests", "trees"}) {
        double v = ratio(c, m, y);
        methods[m] = v;
        agree = agree && close(ref, v);
    }
    return {{"which", "ratio"}, {"methods", methods}, {"agree", agree}, {"result", ref}};
}

// Momenta of the section charges restricted to graph vertices: boundary of the crossing lift.
th::symanzik::MomentumAssignment boundary_momenta(const th::graph::Multigraph& g, const std::vector<Rational>& w)
{
    std::vector<th::symanzik::Momentum> p(g.vertex_count(), th::symanzik::Momentum(1, Rational(0)));
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        p[g.edge(e).head][0] += w[e];
        p[g.edge(e).tail][0] -= w[e];
    }
    return th::symanzik::MomentumAssignment(th::symanzik::MinkowskiSpace::euclidean(1), std::move(p));
}

std::vector<Rational> section_vertex_sums(const th::graph::Multigraph& g, const std::vector<std::string>& ids,
                                          const std::vector<Rational>& p, const std::map<std::string, std::size_t>& where,
                                          const std::string& key)
{
    std::vector<Rational> sums(g.vertex_count(), Rational(0));
    for (std::size_t l = 0; l < ids.size(); ++l) {
        auto it = where.find(ids[l]);
        if (it == where.end())
            throw th::InputError("section '" + ids[l] + "' has no vertex", key);
        sums[it->second] += p[l];
    }
    return sums;
}

json monodromy_report(const th::curve::DualGraphCurve& c, const json& fixture, const std::string& action, bool& ok)
{
    std::size_t genus = static_cast<std::size_t>(th::curve::arithmetic_genus(c));
    if (fixture.contains("genus")) {
        const auto& gj = fixture["genus"];
        if (!gj.is_number_integer() || gj.get<long>() < 0)
            throw th::InputError("expected a nonnegative integer", "genus");
        genus = gj.get<std::size_t>();
    }
    auto f = th::io::parse_monodromy_fixture(fixture, c.graph, genus);
    std::vector<th::monodromy::NilpotentBlock> blocks;
    for (std::size_t e = 0; e < c.graph.edge_count(); ++e)
        blocks.push_back(th::monodromy::build_Ne(f.vc, f.sc, f.p1, f.p2, e));
    ok = true;
    if (action == "build") {
        json edges = json::object();
        for (std::size_t e = 0; e < blocks.size(); ++e) {
            const auto& b = blocks[e];
            edges[c.graph.edge(e).id] = {{"N", th::io::to_json(b.assembled())},
                                         {"M", th::io::to_json(b.m)},
                                         {"p2W", th::io::to_json(b.row_w)},
                                         {"Zp1", th::io::to_json(b.col_z)},
                                         {"p2Gp1", th::io::format_rational(b.gamma)}};
        }
        return {{"genus", genus}, {"size", 2 * genus + 2}, {"edges", edges}};
    }
    if (action != "check")
        throw th::InputError("unknown action '" + action + "' (expected build or check)", "action");

    json checks = json::object();
    bool square_zero = true, pair_zero = true, integral = true, rank_one = true;
    std::size_t n = 2 * genus + 2;
    auto sum = th::monodromy::RatMatrix(n, n);
    for (std::size_t e = 0; e < blocks.size(); ++e) {
        auto ne = blocks[e].assembled();
        sum = sum + ne;
        square_zero = square_zero && (ne * ne).is_zero();
        integral = integral && ne.is_integral();
        for (std::size_t k = 0; k < blocks.size(); ++k)
            pair_zero = pair_zero && (ne * blocks[k].assembled()).is_zero();
        // M~ = c c^t: symmetric, rank <= 1, nonnegative diagonal
        const auto& m = blocks[e].m;
        for (std::size_t i = 0; i < genus; ++i)
            for (std::size_t j = 0; j < genus; ++j)
                rank_one = rank_one && m(i, j) == m(j, i) && m(i, i) >= 0 && m(i, j) * m(i, j) == m(i, i) * m(j, j);
    }
    bool exp_truncates = (sum * sum).is_zero();
    checks["N_squared_zero"] = square_zero;
    checks["N_products_zero"] = pair_zero;
    checks["exp_is_linear"] = exp_truncates;
    checks["M_rank_one_psd"] = rank_one;
    bool integral_input = std::all_of(f.p1.begin(), f.p1.end(), [](const Rational& x) { return x.get_den() == 1; }) &&
                          std::all_of(f.p2.begin(), f.p2.end(), [](const Rational& x) { return x.get_den() == 1; });
    checks["integral"] = integral_input ? json(integral) : json(nullptr);

    auto w1 = th::monodromy::crossing_lift(f.sc, f.p1, 1);
    auto w2 = th::monodromy::crossing_lift(f.sc, f.p2, 2);
    auto rep = th::monodromy::prop57_check(f.vc, f.sc, f.p1, f.p2, w1, w2);
    checks["lift_identities"] = rep.ok;
    json failures = rep.failures;
    ok = square_zero && pair_zero && exp_truncates && rank_one && (!integral_input || integral) && rep.ok;

    if (!f.vertices1.empty() || !f.vertices2.empty()) {
        auto b1 = boundary_momenta(c.graph, w1);
        auto b2 = boundary_momenta(c.graph, w2);
        auto s1 = section_vertex_sums(c.graph, f.sc.ids1, f.p1, f.vertices1, "vertices1");
        auto s2 = section_vertex_sums(c.graph, f.sc.ids2, f.p2, f.vertices2, "vertices2");
        bool bd = true;
        for (std::size_t v = 0; v < c.graph.vertex_count(); ++v)
            bd = bd && b1.at(v)[0] == s1[v] && b2.at(v)[0] == s2[v];
        checks["lift_boundary"] = bd;
        ok = ok && bd;
        if (!bd)
            failures.push_back("crossing lift boundary differs from the section momenta");
    }
    return {{"genus", genus}, {"ok", ok}, {"checks", checks}, {"failures", failures}};
}

json limit_report(const th::curve::DualGraphCurve& c, const json& fixture, const json& segment, bool& ok)
{
    auto lf = th::io::parse_limit_fixture(fixture, c.graph);
    std::vector<th::asymptotics::EdgeBlock> blocks;
    for (std::size_t e = 0; e < c.graph.edge_count(); ++e)
        blocks.push_back(th::asymptotics::numeric_block(
            th::monodromy::build_Ne(lf.mono.vc, lf.mono.sc, lf.mono.p1, lf.mono.p2, e)));
    auto p1 = boundary_momenta(c.graph, th::monodromy::crossing_lift(lf.mono.sc, lf.mono.p1, 1));
    auto p2 = boundary_momenta(c.graph, th::monodromy::crossing_lift(lf.mono.sc, lf.mono.p2, 2));
    std::vector<double> schedule{4e-4, 2e-4, 1e-4};
    auto seg = th::io::parse_segment(segment, c.graph, schedule);
    double tol = segment.contains("tolerance") ? th::io::real(segment["tolerance"], "tolerance") : 1e-6;
    auto rep = th::asymptotics::limit_along_segment(seg, c.graph, p1, p2, lf.psi0, blocks, schedule, lf.h0);

    // the closed form and the nilpotent orbit must agree at every schedule point
    double orbit_gap = 0;
    for (double a : schedule) {
        auto z = seg.z(a);
        th::asymptotics::EdgeParameters ep{{}, lf.h0};
        std::vector<std::complex<double>> s;
        for (auto v : z) {
            ep.y.push_back(v.imag());
            s.push_back(std::exp(std::complex<double>(0, 2 * std::numbers::pi) * v));
        }
        double direct = th::asymptotics::height_eval(lf.psi0, blocks, ep, s);
        double orbit = th::asymptotics::height_via_orbit(lf.psi0, blocks, z, lf.h0);
        orbit_gap = std::max(orbit_gap, std::abs(direct - orbit) / (1.0 + std::abs(direct)));
    }
    ok = rep.rel_error <= tol && orbit_gap <= 1e-9;
    return {{"estimate", rep.estimate},     {"prediction", rep.prediction}, {"rel_error", rep.rel_error},
            {"tolerance", tol},             {"alphas", rep.alphas},         {"values", rep.values},
            {"orbit_relative_gap", orbit_gap}, {"ok", ok}};
}

json corpus_row(const std::filesystem::path& file)
{
    json row = {{"graph", file.filename().string()}};
    try {
        auto j = th::io::read_file(file.string());
        auto c = th::io::parse_curve(j);
        row["vertices"] = c.graph.vertex_count();
        row["edges"] = c.graph.edge_count();
        row["betti"] = th::graph::first_betti(c.graph);
        bool pass = true;
        auto psi_det = first_poly(c, "det");
        auto psi_trees = first_poly(c, "trees");
        row["psi_agree"] = psi_det == psi_trees;
        pass = pass && psi_det == psi_trees;
        json expected_ok = nullptr;
        auto reg = c.graph.edge_registry();
        if (j.contains("expected") && j["expected"].contains("psi")) {
            bool e = MultiPoly::parse(reg, j["expected"]["psi"].get<std::string>()) == psi_det;
            expected_ok = e;
            pass = pass && e;
        }
        if (c.has_momenta()) {
            auto phi_b = second_poly(c, "bordered");
            auto phi_f = second_poly(c, "forests");
            row["phi_agree"] = phi_b == phi_f;
            pass = pass && phi_b == phi_f;
            std::vector<double> y;
            for (std::size_t e = 0; e < c.graph.edge_count(); ++e)
                y.push_back(1.0 + static_cast<double>(e + 1) / static_cast<double>(c.graph.edge_count() + 1));
            auto rc = ratio_check(c, y);
            row["ratio_agree"] = rc["agree"];
            pass = pass && rc["agree"].get<bool>();
            if (j.contains("expected") && j["expected"].contains("phi")) {
                bool e = MultiPoly::parse(reg, j["expected"]["phi"].get<std::string>()) == phi_b;
                expected_ok = expected_ok.is_null() ? json(e) : json(expected_ok.get<bool>() && e);
                pass = pass && e;
            }
        } else {
            row["phi_agree"] = nullptr;
            row["ratio_agree"] = nullptr;
        }
        row["expected_ok"] = expected_ok;
        row["status"] = pass ? "pass" : "fail";
    } catch (const std::exception& e) {
        row["status"] = "fail";
        row["error"] = e.what();
    }
    return row;
}

} // namespace

extern "C" {

const char* th_last_error(void)
{
    return last_error.c_str();
}

void th_string_free(char* s)
{
    std::free(s);
}

const char* th_version(void)
{
    return "0.1.0";
}

int th_graph_from_json(const char* text, th_graph** out)
{
    return guarded([&] {
        require(text, "json");
        require(out, "out");
        *out = nullptr;
        auto c = th::io::parse_curve(th::io::parse_text(text, "graph"));
        *out = new th_graph{std::move(c)};
        return TH_OK;
    });
}

int th_graph_from_file(const char* path, th_graph** out)
{
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        *out = nullptr;
        auto c = th::io::parse_curve(th::io::read_file(path));
        *out = new th_graph{std::move(c)};
        return TH_OK;
    });
}

void th_graph_free(th_graph* g)
{
    delete g;
}

int th_graph_counts(const th_graph* g, size_t* vertices, size_t* edges, size_t* betti)
{
    return guarded([&] {
        require(g, "graph");
        if (vertices)
            *vertices = g->curve.graph.vertex_count();
        if (edges)
            *edges = g->curve.graph.edge_count();
        if (betti)
            *betti = th::graph::first_betti(g->curve.graph);
        return TH_OK;
    });
}

int th_symanzik_first(const th_graph* g, const char* method, char** out)
{
    return guarded([&] {
        require(g, "graph");
        require(out, "out");
        *out = dup_string(first_poly(g->curve, method_or(method, "det")).to_string());
        return TH_OK;
    });
}

int th_symanzik_second(const th_graph* g, const char* method, char** out)
{
    return guarded([&] {
        require(g, "graph");
        require(out, "out");
        *out = dup_string(second_poly(g->curve, method_or(method, "bordered")).to_string());
        return TH_OK;
    });
}

int th_symanzik_ratio(const th_graph* g, const char* method, const char* y, double* out)
{
    return guarded([&] {
        require(g, "graph");
        require(out, "out");
        *out = ratio(g->curve, method_or(method, "schur"), parse_y(g->curve.graph, y));
        return TH_OK;
    });
}

int th_symanzik_check(const th_graph* g, const char* which, const char* y, char** out)
{
    return guarded([&] {
        require(g, "graph");
        require(out, "out");
        std::string w = method_or(which, "first");
        json rep;
        if (w == "first")
            rep = first_check(g->curve);
        else if (w == "second")
            rep = second_check(g->curve);
        else if (w == "ratio")
            rep = ratio_check(g->curve, parse_y(g->curve.graph, y));
        else
            throw th::InputError("unknown check '" + w + "'");
        *out = dup_string(rep.dump(2));
        return rep["agree"].get<bool>() ? TH_OK : TH_CHECK_FAILED;
    });
}

int th_curve_report(const th_graph* g, const char* what, int marked, char** out)
{
    return guarded([&] {
        require(g, "graph");
        require(out, "out");
        const auto& c = g->curve;
        bool use_marked = marked < 0 ? !c.markings.empty() : marked != 0;
        std::string w = method_or(what, "stability");
        json rep;
        if (w == "stability") {
            auto r = th::curve::is_stable(c, use_marked);
            rep = {{"stable", r.stable}, {"outside_scope", r.outside_scope}, {"marked", use_marked},
                   {"violations", r.violations}};
        } else if (w == "genus") {
            rep = {{"arithmetic_genus", th::curve::arithmetic_genus(c)}, {"betti", th::graph::first_betti(c.graph)}};
        } else if (w == "dimensions") {
            auto d = th::curve::deformation_dimensions(c, use_marked);
            rep = {{"total", d.total}, {"equisingular", d.equisingular}, {"boundary", d.boundary}, {"marked", use_marked}};
        } else {
            throw th::InputError("unknown report '" + w + "' (expected stability, genus or dimensions)");
        }
        *out = dup_string(rep.dump(2));
        return TH_OK;
    });
}

int th_monodromy_run(const th_graph* g, const char* fixture_json, const char* action, char** out)
{
    return guarded([&] {
        require(g, "graph");
        require(fixture_json, "fixture");
        require(out, "out");
        bool ok = true;
        auto rep = monodromy_report(g->curve, th::io::parse_text(fixture_json, "fixture"), method_or(action, "check"), ok);
        *out = dup_string(rep.dump(2));
        return ok ? TH_OK : TH_CHECK_FAILED;
    });
}

int th_poincare_norm(const char* point_json, double* out)
{
    return guarded([&] {
        require(point_json, "point");
        require(out, "out");
        *out = th::poincare::log_norm(th::io::parse_point(th::io::parse_text(point_json, "point"), ""));
        return TH_OK;
    });
}

int th_limit_eval(const th_graph* g, const char* fixture_json, const char* segment_json, char** out)
{
    return guarded([&] {
        require(g, "graph");
        require(fixture_json, "fixture");
        require(segment_json, "segment");
        require(out, "out");
        bool ok = true;
        auto rep = limit_report(g->curve, th::io::parse_text(fixture_json, "fixture"),
                                th::io::parse_text(segment_json, "segment"), ok);
        *out = dup_string(rep.dump(2));
        return ok ? TH_OK : TH_CHECK_FAILED;
    });
}

int th_lab_torus_limit(const char* family_json, char** out)
{
    return guarded([&] {
        require(family_json, "family");
        require(out, "out");
        auto j = th::io::parse_text(family_json, "family");
        auto fam = th::io::parse_family(j);
        double tol = j.contains("tolerance") ? th::io::real(j["tolerance"], "tolerance") : 1e-3;
        auto r = th::lab::degeneration_experiment(fam);
        bool ok = r.rel_error <= tol;
        json rep = {{"estimate", r.estimate},
                    {"prediction", r.prediction},
                    {"oracle", r.oracle},
                    {"rel_error", r.rel_error},
                    {"extrapolated_rel_error", r.extrapolated_rel_error},
                    {"slope", std::isnan(r.slope) ? json(nullptr) : json(r.slope)},
                    {"on_shell", r.on_shell},
                    {"alphas", r.alphas},
                    {"values", r.values},
                    {"tolerance", tol},
                    {"ok", ok}};
        *out = dup_string(rep.dump(2));
        return ok ? TH_OK : TH_CHECK_FAILED;
    });
}

int th_lab_sphere_crossratio(const double* re, const double* im, size_t n, char** out)
{
    return guarded([&] {
        require(re, "re");
        require(out, "out");
        if (n != 4)
            throw th::InputError("exactly four points are required", "points");
        std::complex<double> z[4];
        for (std::size_t i = 0; i < 4; ++i)
            z[i] = {re[i], im ? im[i] : 0.0};
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t k = i + 1; k < 4; ++k)
                if (z[i] == z[k])
                    throw th::InputError("points must be distinct", "points");
        using th::lab::Charge;
        std::vector<Charge> a{{z[0], {1.0}}, {z[1], {-1.0}}};
        std::vector<Charge> b{{z[2], {1.0}}, {z[3], {-1.0}}};
        double h = th::lab::height_pairing_surface(a, b, th::lab::SphereGreen{},
                                                   th::symanzik::MinkowskiSpace::euclidean(1));
        auto cr = (z[0] - z[2]) * (z[1] - z[3]) / ((z[0] - z[3]) * (z[1] - z[2]));
        json rep = {{"height", h}, {"cross_ratio", {cr.real(), cr.imag()}}, {"log_abs_cross_ratio", std::log(std::abs(cr))}};
        *out = dup_string(rep.dump(2));
        return TH_OK;
    });
}

int th_corpus_run(const char* dir, int threads, int with_timing, char** out)
{
    return guarded([&] {
        require(dir, "dir");
        require(out, "out");
        namespace fs = std::filesystem;
        if (!fs::is_directory(dir))
            throw th::InputError("not a directory", dir);
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(dir))
            if (entry.is_regular_file() && entry.path().extension() == ".json")
                files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        std::vector<json> rows(files.size());
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next++; i < files.size(); i = next++) {
                auto t0 = std::chrono::steady_clock::now();
                rows[i] = corpus_row(files[i]);
                if (with_timing)
                    rows[i]["seconds"] =
                        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            }
        };
        std::size_t nt = static_cast<std::size_t>(std::max(1, threads));
        nt = std::min(nt, std::max<std::size_t>(1, files.size()));
        std::vector<std::thread> pool;
        for (std::size_t t = 1; t < nt; ++t)
            pool.emplace_back(worker);
        worker();
        for (auto& t : pool)
            t.join();
        std::size_t failed = 0;
        for (const auto& r : rows)
            failed += r["status"] != "pass";
        json rep = {{"rows", rows}, {"total", rows.size()}, {"passed", rows.size() - failed}, {"failed", failed}};
        *out = dup_string(rep.dump(2));
        return failed ? TH_CHECK_FAILED : TH_OK;
    });
}

} // extern "C"
