#include "tropical_heights/monodromy.hpp"

#include <algorithm>

#include "tropical_heights/error.hpp"

namespace th::monodromy {

RatMatrix RatMatrix::identity(std::size_t n)
{
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::operator*(const RatMatrix& o) const
{
    if (cols_ != o.rows_)
        throw InputError("matrix size mismatch in product");
    RatMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const auto& a = (*this)(i, k);
            if (a == 0)
                continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                r(i, j) += a * o(k, j);
        }
    return r;
}

RatMatrix RatMatrix::operator+(const RatMatrix& o) const
{
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw InputError("matrix size mismatch in sum");
    RatMatrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i)
        r.data_[i] += o.data_[i];
    return r;
}

RatMatrix RatMatrix::operator-(const RatMatrix& o) const
{
    return *this + o.scaled(-1);
}

RatMatrix RatMatrix::scaled(const Rational& c) const
{
    RatMatrix r = *this;
    for (auto& x : r.data_)
        x *= c;
    return r;
}

RatMatrix RatMatrix::transpose() const
{
    RatMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            r(j, i) = (*this)(i, j);
    return r;
}

bool RatMatrix::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return x == 0; });
}

bool RatMatrix::is_integral() const
{
    return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return x.get_den() == 1; });
}

Eigen::MatrixXd RatMatrix::to_double() const
{
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (*this)(i, j).get_d();
    return m;
}

std::int64_t symplectic_pairing(const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y)
{
    if (x.size() != y.size() || x.size() % 2 != 0)
        throw InputError("symplectic vectors must have equal even length");
    std::size_t g = x.size() / 2;
    std::int64_t s = 0;
    for (std::size_t i = 0; i < g; ++i)
        s += x[i] * y[g + i] - x[g + i] * y[i];
    return s;
}

std::vector<std::int64_t> picard_lefschetz(const std::vector<std::int64_t>& beta, const std::vector<std::int64_t>& a)
{
    auto k = symplectic_pairing(beta, a);
    auto out = beta;
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] -= k * a[i];
    return out;
}

std::size_t VanishingCycleData::edge_index(const std::string& id) const
{
    auto it = std::find(edge_ids.begin(), edge_ids.end(), id);
    if (it == edge_ids.end())
        throw InputError("unknown edge '" + id + "'");
    return static_cast<std::size_t>(it - edge_ids.begin());
}

VanishingCycleData vanishing_cycles(const graph::Multigraph& g, const graph::CycleBasis& basis, std::size_t genus)
{
    if (genus < basis.size())
        throw InputError("genus is smaller than the number of independent cycles");
    VanishingCycleData vc;
    vc.genus = genus;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        vc.edge_ids.push_back(g.edge(e).id);
        std::vector<std::int64_t> c(genus, 0);
        for (std::size_t i = 0; i < basis.size(); ++i)
            c[i] = basis.cycles[i][e];
        vc.c.push_back(std::move(c));
    }
    return vc;
}

std::vector<std::int64_t> path_chain(const graph::Multigraph& g, const SectionPath& p, std::size_t root)
{
    std::vector<std::int64_t> chain(g.edge_count(), 0);
    std::size_t at = root;
    for (auto [e, forward] : p.steps) {
        const auto& ed = g.edge(e);
        std::size_t from = forward ? ed.tail : ed.head;
        if (from != at)
            throw InputError("section path is not a walk in the dual graph");
        at = forward ? ed.head : ed.tail;
        chain[e] += forward ? 1 : -1;
    }
    if (at != p.vertex)
        throw InputError("section path does not end at its section vertex");
    return chain;
}

SectionCrossingData crossing_from_paths(const graph::Multigraph& g, std::size_t root, const std::vector<SectionPath>& side1,
                                        const std::vector<SectionPath>& side2, std::vector<std::string> ids1,
                                        std::vector<std::string> ids2)
{
    SectionCrossingData sc;
    sc.ids1 = std::move(ids1);
    sc.ids2 = std::move(ids2);
    if (sc.ids1.size() != side1.size() || sc.ids2.size() != side2.size())
        throw InputError("section id list does not match the paths");
    sc.d1.assign(g.edge_count(), std::vector<std::int64_t>(side1.size(), 0));
    sc.d2.assign(g.edge_count(), std::vector<std::int64_t>(side2.size(), 0));
    for (std::size_t l = 0; l < side1.size(); ++l) {
        auto ch = path_chain(g, side1[l], root);
        for (std::size_t e = 0; e < g.edge_count(); ++e)
            sc.d1[e][l] = -ch[e];
    }
    for (std::size_t l = 0; l < side2.size(); ++l) {
        auto ch = path_chain(g, side2[l], root);
        for (std::size_t e = 0; e < g.edge_count(); ++e)
            sc.d2[e][l] = -ch[e];
    }
    return sc;
}

std::vector<Rational> crossing_lift(const SectionCrossingData& sc, const std::vector<Rational>& p, int side)
{
    const auto& d = side == 1 ? sc.d1 : sc.d2;
    std::vector<Rational> w(d.size(), Rational(0));
    for (std::size_t e = 0; e < d.size(); ++e) {
        if (d[e].size() != p.size())
            throw InputError("momentum count does not match the number of sections");
        for (std::size_t l = 0; l < p.size(); ++l)
            w[e] -= p[l] * d[e][l];
    }
    return w;
}

namespace {

void check_sizes(const VanishingCycleData& vc, const SectionCrossingData& sc, std::size_t e)
{
    if (e >= vc.edge_count())
        throw InputError("edge index out of range");
    if (sc.d1.size() != vc.edge_count() || sc.d2.size() != vc.edge_count())
        throw InputError("crossing data and vanishing cycles cover different edge sets");
    if (vc.c[e].size() != vc.genus)
        throw InputError("vanishing cycle has wrong length", "edges." + vc.edge_ids[e] + ".c");
    if (sc.d1[e].size() != sc.ids1.size() || sc.d2[e].size() != sc.ids2.size())
        throw InputError("crossing numbers do not cover every section", "edges." + vc.edge_ids[e]);
}

} // namespace

TildeMatrices tilde_matrices(const VanishingCycleData& vc, const SectionCrossingData& sc, std::size_t e)
{
    check_sizes(vc, sc, e);
    std::size_t g = vc.genus, n1 = sc.ids1.size(), n2 = sc.ids2.size();
    const auto& c = vc.c[e];
    TildeMatrices t{RatMatrix(g, g), RatMatrix(n2, g), RatMatrix(g, n1), RatMatrix(n2, n1)};
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j)
            t.m(i, j) = c[i] * c[j];
    for (std::size_t l = 0; l < n2; ++l)
        for (std::size_t j = 0; j < g; ++j)
            t.w(l, j) = -c[j] * sc.d2[e][l];
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t l = 0; l < n1; ++l)
            t.z(i, l) = c[i] * sc.d1[e][l];
    for (std::size_t k = 0; k < n2; ++k)
        for (std::size_t l = 0; l < n1; ++l)
            t.gamma(k, l) = -sc.d2[e][k] * sc.d1[e][l];
    return t;
}

RatMatrix NilpotentBlock::assembled() const
{
    std::size_t n = 2 * genus + 2;
    RatMatrix a(n, n);
    for (std::size_t j = 0; j < genus; ++j)
        a(0, 1 + genus + j) = row_w(0, j);
    a(0, n - 1) = gamma;
    for (std::size_t i = 0; i < genus; ++i) {
        for (std::size_t j = 0; j < genus; ++j)
            a(1 + i, 1 + genus + j) = m(i, j);
        a(1 + i, n - 1) = col_z(i, 0);
    }
    return a;
}

NilpotentBlock build_Ne(const VanishingCycleData& vc, const SectionCrossingData& sc, const std::vector<Rational>& p1,
                        const std::vector<Rational>& p2, std::size_t e)
{
    if (p1.size() != sc.ids1.size() || p2.size() != sc.ids2.size())
        throw InputError("momentum count does not match the number of sections");
    Rational s1 = 0, s2 = 0;
    for (const auto& x : p1)
        s1 += x;
    for (const auto& x : p2)
        s2 += x;
    if (s1 != 0 || s2 != 0)
        throw InputError("momentum conservation violated: section momenta on each side must sum to zero");
    auto t = tilde_matrices(vc, sc, e);
    RatMatrix rp1(p1.size(), 1), rp2(1, p2.size());
    for (std::size_t l = 0; l < p1.size(); ++l)
        rp1(l, 0) = p1[l];
    for (std::size_t l = 0; l < p2.size(); ++l)
        rp2(0, l) = p2[l];
    NilpotentBlock b{vc.genus, rp2 * t.w, t.m, t.z * rp1, (rp2 * t.gamma * rp1)(0, 0)};
    auto n = b.assembled();
    if (!(n * n).is_zero())
        throw NumericError("assembled nilpotent logarithm does not square to zero");
    return b;
}

Prop57Report prop57_check(const VanishingCycleData& vc, const SectionCrossingData& sc, const std::vector<Rational>& p1,
                          const std::vector<Rational>& p2, const std::vector<Rational>& w1,
                          const std::vector<Rational>& w2)
{
    Prop57Report r;
    if (w1.size() != vc.edge_count() || w2.size() != vc.edge_count())
        throw InputError("edge lifts have the wrong length");
    for (std::size_t e = 0; e < vc.edge_count(); ++e) {
        auto b = build_Ne(vc, sc, p1, p2, e);
        const auto& c = vc.c[e];
        const auto& id = vc.edge_ids[e];
        for (std::size_t i = 0; i < vc.genus; ++i) {
            if (b.col_z(i, 0) != -(c[i] * w1[e]))
                r.failures.push_back(id + ": Z p1 != -W(w1) at row " + std::to_string(i));
            if (b.row_w(0, i) != c[i] * w2[e])
                r.failures.push_back(id + ": p2 W != W(w2) at column " + std::to_string(i));
        }
        if (b.gamma != -(w1[e] * w2[e]))
            r.failures.push_back(id + ": p2 Gamma p1 != -Q(w1, w2)");
    }
    r.ok = r.failures.empty();
    return r;
}

} // namespace th::monodromy
