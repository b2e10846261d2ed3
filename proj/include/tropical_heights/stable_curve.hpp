#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tropical_heights/graph.hpp"
#include "tropical_heights/symanzik.hpp"

namespace th::curve {

struct Marking {
    std::string id;
    std::size_t vertex;
    symanzik::Momentum momentum; // empty when no momentum was given
};

// Dual graph of a stable curve: vertex genera plus marked points.
struct DualGraphCurve {
    graph::Multigraph graph;
    std::vector<int> genus;
    std::vector<Marking> markings;
    std::optional<symanzik::MinkowskiSpace> space;

    std::size_t markings_at(std::size_t v) const;
    bool has_momenta() const;
};

struct StabilityReport {
    bool stable = true;
    bool outside_scope = false; // genus 1 without markings
    std::vector<std::string> violations;
};

StabilityReport is_stable(const DualGraphCurve& c, bool with_markings);

int arithmetic_genus(const DualGraphCurve& c);

// Sums marking momenta onto their vertices.
symanzik::MomentumAssignment restrict_momenta(const DualGraphCurve& c);

struct DeformationDimensions {
    long total;
    long equisingular;
    long boundary;
};

DeformationDimensions deformation_dimensions(const DualGraphCurve& c, bool marked);

// Splits an edge at a new genus-0 vertex (the new edges are id + "a", id + "b").
DualGraphCurve subdivide_edge(const DualGraphCurve& c, std::size_t edge);

} // namespace th::curve
