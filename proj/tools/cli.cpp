#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tropical_heights/tropical_heights.h"

namespace {

constexpr int exit_for(int status)
{
    switch (status) {
    case TH_OK:
        return 0;
    case TH_CHECK_FAILED:
        return 1;
    case TH_INPUT_ERROR:
        return 2;
    default:
        return 3;
    }
}

int report_error(int status)
{
    std::cerr << "error: " << th_last_error() << "\n";
    return exit_for(status);
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        return {};
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Graph {
    th_graph* g = nullptr;
    ~Graph() { th_graph_free(g); }
};

// Prints a library-owned JSON string and maps the status to an exit code.
int emit(int status, char*& out)
{
    if (out) {
        std::cout << out << "\n";
        th_string_free(out);
    }
    if (status == TH_CHECK_FAILED)
        std::cerr << "check failed\n";
    else if (status != TH_OK)
        return report_error(status);
    return exit_for(status);
}

int load_graph(const std::string& path, Graph& g)
{
    int s = th_graph_from_file(path.c_str(), &g.g);
    return s == TH_OK ? 0 : report_error(s);
}

int read_input(const std::string& path, const char* what, std::string& text)
{
    std::ifstream probe(path);
    if (!probe) {
        std::cerr << "error: " << what << ": cannot open '" << path << "'\n";
        return 2;
    }
    text = slurp(path);
    return 0;
}

int threads_from_env()
{
    const char* v = std::getenv("TROPICAL_HEIGHTS_THREADS");
    if (!v || !*v)
        return 1;
    char* end = nullptr;
    long n = std::strtol(v, &end, 10);
    if (*end != '\0' || n < 1)
        return 1;
    return static_cast<int>(n);
}

int parse_point(const std::string& s, double& re, double& im)
{
    auto comma = s.find(',');
    try {
        std::size_t used = 0;
        re = std::stod(s.substr(0, comma), &used);
        if (used != (comma == std::string::npos ? s.size() : comma))
            return 2;
        im = 0;
        if (comma != std::string::npos) {
            auto rest = s.substr(comma + 1);
            im = std::stod(rest, &used);
            if (used != rest.size())
                return 2;
        }
    } catch (const std::exception&) {
        return 2;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Symanzik polynomials, degeneration monodromy and archimedean height asymptotics"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(th_version()));
    int rc = 0;

    std::string graph, method, y, fixture, segment, point, family, dir, action, what;
    bool check = false, timing = false;

    auto* sym = app.add_subcommand("symanzik", "Symanzik polynomials and their ratio");
    sym->add_option("kind", what, "first, second or ratio")->required()->check(CLI::IsMember({"first", "second", "ratio"}));
    sym->add_option("--graph", graph, "graph JSON")->required();
    sym->add_option("--method", method, "trees|det|bordered|forests|schur|resistance");
    sym->add_option("--y", y, "edge lengths e1=1.0,e2=2.0,...");
    sym->add_flag("--check", check, "run every method and require agreement");
    sym->callback([&] {
        Graph g;
        if ((rc = load_graph(graph, g)))
            return;
        const char* m = method.empty() ? nullptr : method.c_str();
        if (check) {
            char* out = nullptr;
            int s = th_symanzik_check(g.g, what.c_str(), y.empty() ? nullptr : y.c_str(), &out);
            if (s != TH_OK && s != TH_CHECK_FAILED) {
                rc = report_error(s);
                return;
            }
            if (s == TH_CHECK_FAILED) {
                std::cerr << out << "\n";
                th_string_free(out);
                std::cerr << "methods disagree\n";
                rc = 1;
                return;
            }
            th_string_free(out);
        }
        if (what == "ratio") {
            double v = 0;
            int s = th_symanzik_ratio(g.g, m, y.empty() ? nullptr : y.c_str(), &v);
            if (s != TH_OK) {
                rc = report_error(s);
                return;
            }
            std::cout.precision(17);
            std::cout << v << "\n";
            return;
        }
        char* out = nullptr;
        int s = what == "first" ? th_symanzik_first(g.g, m, &out) : th_symanzik_second(g.g, m, &out);
        rc = emit(s, out);
    });

    int marked = -1;
    bool want_marked = false, want_unmarked = false;
    auto* cur = app.add_subcommand("curve", "stable curve reports");
    cur->add_option("kind", what, "stability, genus or dimensions")
        ->required()
        ->check(CLI::IsMember({"stability", "genus", "dimensions"}));
    cur->add_option("--graph", graph, "graph JSON")->required();
    auto* fm = cur->add_flag("--marked", want_marked, "count markings");
    cur->add_flag("--unmarked", want_unmarked, "ignore markings")->excludes(fm);
    cur->callback([&] {
        Graph g;
        if ((rc = load_graph(graph, g)))
            return;
        marked = want_marked ? 1 : want_unmarked ? 0 : -1;
        char* out = nullptr;
        rc = emit(th_curve_report(g.g, what.c_str(), marked, &out), out);
    });

    auto* mono = app.add_subcommand("monodromy", "nilpotent logarithms of the monodromy");
    mono->add_option("action", action, "build or check")->required()->check(CLI::IsMember({"build", "check"}));
    mono->add_option("--graph", graph, "graph JSON")->required();
    mono->add_option("--fixture", fixture, "vanishing cycle and section crossing JSON")->required();
    mono->callback([&] {
        Graph g;
        std::string text;
        if ((rc = load_graph(graph, g)) || (rc = read_input(fixture, "fixture", text)))
            return;
        char* out = nullptr;
        rc = emit(th_monodromy_run(g.g, text.c_str(), action.c_str(), &out), out);
    });

    auto* poin = app.add_subcommand("poincare", "biextension period domain");
    poin->add_option("kind", what, "norm")->required()->check(CLI::IsMember({"norm"}));
    poin->add_option("--point", point, "point JSON")->required();
    poin->callback([&] {
        std::string text;
        if ((rc = read_input(point, "point", text)))
            return;
        double v = 0;
        int s = th_poincare_norm(text.c_str(), &v);
        if (s != TH_OK) {
            rc = report_error(s);
            return;
        }
        std::cout.precision(17);
        std::cout << v << "\n";
    });

    auto* lim = app.add_subcommand("limit", "height asymptotics along admissible segments");
    lim->add_option("kind", what, "eval")->required()->check(CLI::IsMember({"eval"}));
    lim->add_option("--graph", graph, "graph JSON")->required();
    lim->add_option("--fixture", fixture, "limit fixture JSON")->required();
    lim->add_option("--segment", segment, "segment JSON")->required();
    lim->callback([&] {
        Graph g;
        std::string ftext, stext;
        if ((rc = load_graph(graph, g)) || (rc = read_input(fixture, "fixture", ftext)) ||
            (rc = read_input(segment, "segment", stext)))
            return;
        char* out = nullptr;
        rc = emit(th_limit_eval(g.g, ftext.c_str(), stext.c_str(), &out), out);
    });

    std::vector<std::string> points;
    auto* lab = app.add_subcommand("lab", "genus 0 and genus 1 numerical experiments");
    lab->require_subcommand(1);
    auto* torus = lab->add_subcommand("torus-limit", "degenerating torus family");
    torus->add_option("--family", family, "family JSON")->required();
    torus->callback([&] {
        std::string text;
        if ((rc = read_input(family, "family", text)))
            return;
        char* out = nullptr;
        rc = emit(th_lab_torus_limit(text.c_str(), &out), out);
    });
    auto* sphere = lab->add_subcommand("sphere-crossratio", "height of z1 - z2 against z3 - z4 on the sphere");
    sphere->add_option("--points", points, "four points re[,im]")->required()->expected(4);
    sphere->callback([&] {
        std::vector<double> re(points.size()), im(points.size());
        for (std::size_t i = 0; i < points.size(); ++i)
            if (parse_point(points[i], re[i], im[i])) {
                std::cerr << "error: points[" << i << "]: malformed point '" << points[i] << "'\n";
                rc = 2;
                return;
            }
        char* out = nullptr;
        rc = emit(th_lab_sphere_crossratio(re.data(), im.data(), re.size(), &out), out);
    });

    auto* corpus = app.add_subcommand("corpus", "cross-method agreement over a directory of graphs");
    auto* run = corpus->add_subcommand("run", "run every graph in a directory");
    corpus->require_subcommand(1);
    run->add_option("dir", dir, "directory of graph JSON files")->required();
    run->add_flag("--timing", timing, "include per-graph wall time (not byte-stable)");
    run->callback([&] {
        char* out = nullptr;
        rc = emit(th_corpus_run(dir.c_str(), threads_from_env(), timing ? 1 : 0, &out), out);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    return rc;
}
