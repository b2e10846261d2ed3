#pragma once

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tropical_heights/graph.hpp"
#include "tropical_heights/poly.hpp"

namespace th::monodromy {

using poly::Rational;

class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}
    static RatMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    RatMatrix operator*(const RatMatrix& o) const;
    RatMatrix operator+(const RatMatrix& o) const;
    RatMatrix operator-(const RatMatrix& o) const;
    RatMatrix scaled(const Rational& c) const;
    RatMatrix transpose() const;
    bool operator==(const RatMatrix& o) const = default;
    bool is_zero() const;
    bool is_integral() const;
    Eigen::MatrixXd to_double() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> data_;
};

// Standard symplectic pairing with <a_i, b_j> = delta_ij on vectors (a_1..a_g, b_1..b_g).
std::int64_t symplectic_pairing(const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y);
// beta - <beta, a> a
std::vector<std::int64_t> picard_lefschetz(const std::vector<std::int64_t>& beta, const std::vector<std::int64_t>& a);

// Coordinates c_{e,i} of each vanishing cycle a_e in the basis a_1..a_g.
struct VanishingCycleData {
    std::size_t genus = 0;
    std::vector<std::string> edge_ids;
    std::vector<std::vector<std::int64_t>> c; // per edge, length genus

    std::size_t edge_count() const { return c.size(); }
    std::size_t edge_index(const std::string& id) const;
};

// Vanishing cycles read off a cycle basis, zero-extended to the given genus.
VanishingCycleData vanishing_cycles(const graph::Multigraph& g, const graph::CycleBasis& basis, std::size_t genus);

// d_{e,l,i}: signed crossing number of the section loop l on side i with the vanishing cycle of e.
struct SectionCrossingData {
    std::vector<std::string> ids1, ids2;
    std::vector<std::vector<std::int64_t>> d1, d2; // [edge][section]
};

// A walk in the dual graph from the root vertex to a section's vertex.
struct SectionPath {
    std::size_t vertex;
    std::vector<std::pair<std::size_t, bool>> steps; // (edge, traversed tail-to-head)
};

std::vector<std::int64_t> path_chain(const graph::Multigraph& g, const SectionPath& p, std::size_t root);
// Crossing data induced by section paths: d_{e,l} = -(path chain of l)_e.
SectionCrossingData crossing_from_paths(const graph::Multigraph& g, std::size_t root, const std::vector<SectionPath>& side1,
                                        const std::vector<SectionPath>& side2, std::vector<std::string> ids1,
                                        std::vector<std::string> ids2);

// Edge lift of side-i momenta: w_e = -sum_l p_l d_{e,l,i}.
std::vector<Rational> crossing_lift(const SectionCrossingData& sc, const std::vector<Rational>& p, int side);

struct TildeMatrices {
    RatMatrix m;     // g x g
    RatMatrix w;     // n2 x g
    RatMatrix z;     // g x n1
    RatMatrix gamma; // n2 x n1
};

TildeMatrices tilde_matrices(const VanishingCycleData& vc, const SectionCrossingData& sc, std::size_t e);

// Scalar (D = 1) nilpotent logarithm, blocks ordered (1, g, g, 1).
struct NilpotentBlock {
    std::size_t genus;
    RatMatrix row_w;  // 1 x g : p2 W~
    RatMatrix m;      // g x g : M~
    RatMatrix col_z;  // g x 1 : Z~ p1^t
    Rational gamma;   // p2 Gamma p1^t
    RatMatrix assembled() const;
};

NilpotentBlock build_Ne(const VanishingCycleData& vc, const SectionCrossingData& sc, const std::vector<Rational>& p1,
                        const std::vector<Rational>& p2, std::size_t e);

struct Prop57Report {
    bool ok = true;
    std::vector<std::string> failures;
};

// Checks Z~ p1 = -W_e(w1), p2 W~ = W_e(w2), p2 Gamma p1 = -Q_e(w1, w2) on every edge,
// with W_e(w)_j = c_{e,j} w_e and Q_e(w1, w2) = w1_e w2_e.
Prop57Report prop57_check(const VanishingCycleData& vc, const SectionCrossingData& sc, const std::vector<Rational>& p1,
                          const std::vector<Rational>& p2, const std::vector<Rational>& w1,
                          const std::vector<Rational>& w2);

} // namespace th::monodromy
