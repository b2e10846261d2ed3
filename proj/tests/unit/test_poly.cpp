#include <doctest.h>

#include <random>

#include "tropical_heights/error.hpp"
#include "tropical_heights/poly.hpp"

using namespace th::poly;

namespace {

RegistryPtr reg(std::size_t n)
{
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i)
        names.push_back("Y_e" + std::to_string(i + 1));
    return std::make_shared<const Registry>(names);
}

MultiPoly random_poly(std::mt19937_64& rng, const RegistryPtr& r, int terms, int max_deg)
{
    std::uniform_int_distribution<int> coef(-5, 5), den(1, 3), deg(0, max_deg);
    MultiPoly p(r);
    for (int t = 0; t < terms; ++t) {
        Monomial m(r->size());
        for (auto& e : m)
            e = static_cast<std::uint32_t>(deg(rng));
        p.add_term(m, Rational(coef(rng), den(rng)));
    }
    return p;
}

RingMatrix random_linear_matrix(std::mt19937_64& rng, const RegistryPtr& r, std::size_t n)
{
    std::uniform_int_distribution<int> coef(-2, 2);
    RingMatrix m(r, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            MultiPoly p = MultiPoly::constant(r, coef(rng));
            for (std::size_t v = 0; v < r->size(); ++v)
                p += Rational(coef(rng)) * MultiPoly::variable(r, v);
            m(i, j) = p;
        }
    return m;
}

} // namespace

TEST_CASE("canonical string format")
{
    auto r = reg(3);
    auto y1 = MultiPoly::variable(r, 0), y2 = MultiPoly::variable(r, 1), y3 = MultiPoly::variable(r, 2);
    auto p = y1 * y2 + Rational(2) * y1 * y3;
    CHECK(p.to_string() == "Y_e1*Y_e2 + 2*Y_e1*Y_e3");
    auto q = y1 * y1 - Rational(1, 3) * y2 + MultiPoly::constant(r, Rational(-7, 2));
    CHECK(q.to_string() == "Y_e1^2 - 1/3*Y_e2 - 7/2");
    CHECK(MultiPoly(r).to_string() == "0");
    CHECK(MultiPoly::parse(r, "Y_e1*Y_e2 + 2*Y_e1*Y_e3") == p);
}

TEST_CASE("variable names that share a prefix parse by longest match")
{
    std::vector<std::string> names;
    for (int i = 1; i <= 12; ++i)
        names.push_back("Y_e" + std::to_string(i));
    auto r = std::make_shared<const Registry>(names);
    auto p = MultiPoly::variable(r, 0) * MultiPoly::variable(r, 11) + MultiPoly::variable(r, 9);
    CHECK(MultiPoly::parse(r, p.to_string()) == p);
}

TEST_CASE("parse rejects malformed input")
{
    auto r = reg(2);
    CHECK_THROWS_AS(MultiPoly::parse(r, "Y_e3"), th::InputError);
    CHECK_THROWS_AS(MultiPoly::parse(r, "2**Y_e1"), th::InputError);
    CHECK_THROWS_AS(parse_rational("1/0"), th::InputError);
    CHECK_THROWS_AS(parse_rational("abc"), th::InputError);
    CHECK(parse_rational("-6/4") == Rational(-3, 2));
}

TEST_CASE("string round trip on random polynomials")
{
    std::mt19937_64 rng(11);
    auto r = reg(4);
    for (int k = 0; k < 200; ++k) {
        auto p = random_poly(rng, r, 1 + k % 7, 3);
        CHECK(MultiPoly::parse(r, p.to_string()) == p);
    }
}

TEST_CASE("ring axioms and exact division")
{
    std::mt19937_64 rng(5);
    auto r = reg(3);
    for (int k = 0; k < 50; ++k) {
        auto a = random_poly(rng, r, 4, 2), b = random_poly(rng, r, 3, 2), c = random_poly(rng, r, 3, 1);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK((a - a).is_zero());
        if (!b.is_zero())
            CHECK(poly_exact_div(a * b, b) == a);
    }
    auto y1 = MultiPoly::variable(r, 0), y2 = MultiPoly::variable(r, 1);
    CHECK_THROWS(poly_exact_div(y1, y2));
}

TEST_CASE("double evaluation agrees with exact evaluation")
{
    std::mt19937_64 rng(9);
    auto r = reg(3);
    std::vector<Rational> xs{Rational(1, 2), Rational(3), Rational(-2, 3)};
    std::vector<double> xd{0.5, 3.0, -2.0 / 3.0};
    for (int k = 0; k < 50; ++k) {
        auto p = random_poly(rng, r, 5, 3);
        double exact = p.eval_exact(xs).get_d();
        CHECK(p.eval(xd) == doctest::Approx(exact).epsilon(1e-12));
    }
}

TEST_CASE("degree and homogeneity")
{
    auto r = reg(2);
    auto y1 = MultiPoly::variable(r, 0), y2 = MultiPoly::variable(r, 1);
    CHECK((y1 * y2 + y1 * y1).is_homogeneous());
    CHECK(!(y1 * y2 + y1).is_homogeneous());
    CHECK((y1 * y2 * y2).total_degree() == 3);
    CHECK((y1 * y2).coefficient({1, 1}) == 1);
}

TEST_CASE("Bareiss and cofactor determinants agree")
{
    std::mt19937_64 rng(3);
    auto r = reg(3);
    for (std::size_t n = 1; n <= 6; ++n)
        for (int k = 0; k < 4; ++k) {
            auto m = random_linear_matrix(rng, r, n);
            auto a = det_cofactor(m);
            CHECK(det_bareiss(m) == a);
            CHECK(det_fraction_free(m) == a);
        }
}

TEST_CASE("determinant of a diagonal matrix and of a singular one")
{
    auto r = reg(2);
    RingMatrix m(r, 2, 2);
    m(0, 0) = MultiPoly::variable(r, 0);
    m(1, 1) = MultiPoly::variable(r, 1);
    m(0, 1) = MultiPoly(r);
    m(1, 0) = MultiPoly(r);
    CHECK(det_bareiss(m).to_string() == "Y_e1*Y_e2");
    m(0, 1) = m(0, 0);
    m(1, 0) = m(1, 1);
    m(1, 1) = m(0, 0);
    m(0, 0) = m(1, 0);
    CHECK(det_bareiss(m).is_zero());
    CHECK_THROWS_AS(det_bareiss(RingMatrix(r, 2, 3)), th::InputError);
}
