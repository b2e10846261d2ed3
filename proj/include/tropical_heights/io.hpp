#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tropical_heights/analytic.hpp"
#include "tropical_heights/asymptotics.hpp"
#include "tropical_heights/monodromy.hpp"
#include "tropical_heights/poincare.hpp"
#include "tropical_heights/stable_curve.hpp"

namespace th::io {

using json = nlohmann::json;
using poly::Rational;

json parse_text(const std::string& text, const std::string& what);
json read_file(const std::string& path);

const json& field(const json& j, const std::string& key, const std::string& path);
Rational rational(const json& j, const std::string& path);
double real(const json& j, const std::string& path);
std::complex<double> complex(const json& j, const std::string& path);

symanzik::MinkowskiSpace parse_minkowski(const json& j, const std::string& path);
curve::DualGraphCurve parse_curve(const json& j);

poincare::BiextensionPoint parse_point(const json& j, const std::string& path);

struct MonodromyFixture {
    monodromy::VanishingCycleData vc;
    monodromy::SectionCrossingData sc;
    std::vector<Rational> p1, p2;
    std::map<std::string, std::size_t> vertices1, vertices2; // optional section positions
};

// Edge data {"edges": {"e1": {"c": [...], "d1": {...}, "d2": {...}}}, "p1": {...}, "p2": {...}}.
// Missing "c" entries come from the graph's cycle basis.
MonodromyFixture parse_monodromy_fixture(const json& j, const graph::Multigraph& g, std::size_t genus);

struct LimitFixture {
    MonodromyFixture mono;
    asymptotics::HolomorphicFixture psi0;
    double h0 = 0.0;
};

LimitFixture parse_limit_fixture(const json& j, const graph::Multigraph& g);

asymptotics::AdmissibleSegment parse_segment(const json& j, const graph::Multigraph& g,
                                             std::vector<double>& schedule);

lab::DegenerationFamily parse_family(const json& j);

json to_json(const monodromy::RatMatrix& m);
std::string format_rational(const Rational& q);

} // namespace th::io
