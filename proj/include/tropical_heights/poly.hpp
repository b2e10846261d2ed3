#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace th::poly {

using Rational = mpq_class;

std::string to_string(const Rational& q);
Rational parse_rational(const std::string& text);

// Ordered list of variable names shared by polynomials that may be combined.
class Registry {
public:
    explicit Registry(std::vector<std::string> names);
    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }
    std::size_t index_of(const std::string& name) const;
    bool operator==(const Registry& other) const { return names_ == other.names_; }

private:
    std::vector<std::string> names_;
};

using RegistryPtr = std::shared_ptr<const Registry>;

using Monomial = std::vector<std::uint32_t>;

// Graded lexicographic order, larger monomials first.
struct GrlexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

class MultiPoly {
public:
    using Terms = std::map<Monomial, Rational, GrlexGreater>;

    explicit MultiPoly(RegistryPtr reg);
    static MultiPoly constant(RegistryPtr reg, const Rational& c);
    static MultiPoly variable(RegistryPtr reg, std::size_t i);
    static MultiPoly monomial(RegistryPtr reg, Monomial m, const Rational& c);

    const RegistryPtr& registry() const { return reg_; }
    std::size_t arity() const { return reg_->size(); }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    int total_degree() const;
    bool is_homogeneous() const;
    Rational coefficient(const Monomial& m) const;

    void add_term(const Monomial& m, const Rational& c);

    MultiPoly operator-() const;
    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly& operator*=(const Rational& c);
    bool operator==(const MultiPoly& o) const;
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    std::string to_string() const;
    // Inverse of to_string over the same registry.
    static MultiPoly parse(RegistryPtr reg, const std::string& text);

    double eval(std::span<const double> values) const;
    Rational eval_exact(std::span<const Rational> values) const;
    double eval_named(const std::map<std::string, double>& values) const;

private:
    RegistryPtr reg_;
    Terms terms_;
};

void check_same_registry(const MultiPoly& a, const MultiPoly& b);

MultiPoly poly_add(const MultiPoly& a, const MultiPoly& b);
MultiPoly poly_sub(const MultiPoly& a, const MultiPoly& b);
MultiPoly poly_mul(const MultiPoly& a, const MultiPoly& b);
// Quotient of an exact division; throws if b does not divide a.
MultiPoly poly_exact_div(const MultiPoly& a, const MultiPoly& b);
double poly_eval(const MultiPoly& p, const std::map<std::string, double>& values);

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
MultiPoly operator*(const Rational& c, const MultiPoly& a);

class RingMatrix {
public:
    RingMatrix(RegistryPtr reg, std::size_t rows, std::size_t cols);
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const RegistryPtr& registry() const { return reg_; }
    MultiPoly& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const MultiPoly& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

private:
    RegistryPtr reg_;
    std::size_t rows_, cols_;
    std::vector<MultiPoly> data_;
};

MultiPoly det_cofactor(const RingMatrix& m);
MultiPoly det_bareiss(const RingMatrix& m);
// Cofactor expansion below dimension 6, Bareiss elimination from 6 on.
MultiPoly det_fraction_free(const RingMatrix& m);

} // namespace th::poly
