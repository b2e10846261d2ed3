#include "tropical_heights/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "tropical_heights/error.hpp"

namespace th::poly {

std::string to_string(const Rational& q)
{
    return q.get_str(10);
}

Rational parse_rational(const std::string& text)
{
    std::string t = text;
    t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char c) { return std::isspace(c); }), t.end());
    if (t.empty())
        throw InputError("empty rational literal");
    std::size_t start = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    bool slash = false;
    for (std::size_t i = start; i < t.size(); ++i) {
        if (t[i] == '/') {
            if (slash || i == start || i + 1 == t.size())
                throw InputError("malformed rational '" + text + "'");
            slash = true;
        } else if (!std::isdigit(static_cast<unsigned char>(t[i]))) {
            throw InputError("malformed rational '" + text + "'");
        }
    }
    if (start == t.size())
        throw InputError("malformed rational '" + text + "'");
    if (t[0] == '+')
        t.erase(0, 1);
    Rational q;
    if (q.set_str(t, 10) != 0)
        throw InputError("malformed rational '" + text + "'");
    if (q.get_den() == 0)
        throw InputError("zero denominator in '" + text + "'");
    q.canonicalize();
    return q;
}

Registry::Registry(std::vector<std::string> names) : names_(std::move(names)) {}

std::size_t Registry::index_of(const std::string& name) const
{
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end())
        throw InputError("unknown variable '" + name + "'");
    return static_cast<std::size_t>(it - names_.begin());
}

bool GrlexGreater::operator()(const Monomial& a, const Monomial& b) const
{
    auto da = std::accumulate(a.begin(), a.end(), std::uint64_t{0});
    auto db = std::accumulate(b.begin(), b.end(), std::uint64_t{0});
    if (da != db)
        return da > db;
    return a > b;
}

MultiPoly::MultiPoly(RegistryPtr reg) : reg_(std::move(reg)) {}

MultiPoly MultiPoly::constant(RegistryPtr reg, const Rational& c)
{
    MultiPoly p(reg);
    p.add_term(Monomial(reg->size(), 0), c);
    return p;
}

MultiPoly MultiPoly::variable(RegistryPtr reg, std::size_t i)
{
    Monomial m(reg->size(), 0);
    m.at(i) = 1;
    return monomial(std::move(reg), std::move(m), Rational(1));
}

MultiPoly MultiPoly::monomial(RegistryPtr reg, Monomial m, const Rational& c)
{
    MultiPoly p(std::move(reg));
    p.add_term(m, c);
    return p;
}

int MultiPoly::total_degree() const
{
    if (terms_.empty())
        return -1;
    const auto& m = terms_.begin()->first;
    return static_cast<int>(std::accumulate(m.begin(), m.end(), std::uint64_t{0}));
}

bool MultiPoly::is_homogeneous() const
{
    if (terms_.empty())
        return true;
    auto d = total_degree();
    const auto& m = terms_.rbegin()->first;
    return static_cast<int>(std::accumulate(m.begin(), m.end(), std::uint64_t{0})) == d;
}

Rational MultiPoly::coefficient(const Monomial& m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void MultiPoly::add_term(const Monomial& m, const Rational& c)
{
    if (m.size() != reg_->size())
        throw InputError("monomial arity does not match registry");
    Rational v = c;
    v.canonicalize();
    if (v == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(m, v);
    if (!inserted) {
        it->second += v;
        if (it->second == 0)
            terms_.erase(it);
    }
}

MultiPoly MultiPoly::operator-() const
{
    MultiPoly r = *this;
    for (auto& [m, c] : r.terms_)
        c = -c;
    return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o)
{
    check_same_registry(*this, o);
    for (const auto& [m, c] : o.terms_)
        add_term(m, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o)
{
    check_same_registry(*this, o);
    for (const auto& [m, c] : o.terms_)
        add_term(m, -c);
    return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_)
        v *= c;
    return *this;
}

bool MultiPoly::operator==(const MultiPoly& o) const
{
    return *reg_ == *o.reg_ && terms_ == o.terms_;
}

std::string MultiPoly::to_string() const
{
    if (terms_.empty())
        return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        bool neg = c < 0;
        Rational a = neg ? Rational(-c) : c;
        if (first)
            out << (neg ? "-" : "");
        else
            out << (neg ? " - " : " + ");
        first = false;

        std::vector<std::string> factors;
        bool is_const = std::all_of(m.begin(), m.end(), [](auto e) { return e == 0; });
        if (a != 1 || is_const)
            factors.push_back(poly::to_string(a));
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0)
                continue;
            std::string f = reg_->name(i);
            if (m[i] > 1)
                f += "^" + std::to_string(m[i]);
            factors.push_back(f);
        }
        for (std::size_t k = 0; k < factors.size(); ++k)
            out << (k ? "*" : "") << factors[k];
    }
    return out.str();
}

MultiPoly MultiPoly::parse(RegistryPtr reg, const std::string& text)
{
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch)))
            s += ch;
    MultiPoly p(reg);
    if (s == "0")
        return p;
    if (s.empty())
        throw InputError("empty polynomial");

    std::size_t pos = 0;
    auto fail = [&](const std::string& why) {
        throw InputError("cannot parse polynomial at offset " + std::to_string(pos) + ": " + why);
    };
    while (pos < s.size()) {
        int sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (pos != 0) {
            fail("expected '+' or '-'");
        }
        Rational coef(sign);
        Monomial m(reg->size(), 0);
        bool expect_factor = true;
        while (expect_factor) {
            if (pos >= s.size())
                fail("missing factor");
            if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
                std::size_t end = pos;
                while (end < s.size() && (std::isdigit(static_cast<unsigned char>(s[end])) || s[end] == '/'))
                    ++end;
                coef *= parse_rational(s.substr(pos, end - pos));
                pos = end;
            } else {
                std::size_t best = reg->size();
                std::size_t best_len = 0;
                for (std::size_t i = 0; i < reg->size(); ++i) {
                    const auto& nm = reg->name(i);
                    if (nm.size() > best_len && s.compare(pos, nm.size(), nm) == 0) {
                        best = i;
                        best_len = nm.size();
                    }
                }
                if (best == reg->size())
                    fail("unknown variable");
                pos += best_len;
                std::uint32_t e = 1;
                if (pos < s.size() && s[pos] == '^') {
                    std::size_t end = ++pos;
                    while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end])))
                        ++end;
                    if (end == pos)
                        fail("missing exponent");
                    e = static_cast<std::uint32_t>(std::stoul(s.substr(pos, end - pos)));
                    pos = end;
                }
                m[best] += e;
            }
            if (pos < s.size() && s[pos] == '*')
                ++pos;
            else
                expect_factor = false;
        }
        p.add_term(m, coef);
    }
    return p;
}

namespace {

struct NumTerm {
    const std::uint32_t* exps;
    double coef;
};

double ipow(double x, std::uint32_t k)
{
    double r = 1.0;
    while (k) {
        if (k & 1u)
            r *= x;
        x *= x;
        k >>= 1u;
    }
    return r;
}

// Nested Horner evaluation: factor out powers of variable k, recurse on the rest.
double horner(std::span<const NumTerm> terms, std::span<const double> x, std::size_t k)
{
    if (terms.empty())
        return 0.0;
    if (k == x.size()) {
        double s = 0.0;
        for (const auto& t : terms)
            s += t.coef;
        return s;
    }
    double acc = 0.0;
    std::uint32_t prev = terms.front().exps[k];
    std::size_t i = 0;
    while (i < terms.size()) {
        std::uint32_t e = terms[i].exps[k];
        std::size_t j = i;
        while (j < terms.size() && terms[j].exps[k] == e)
            ++j;
        acc = acc * ipow(x[k], prev - e) + horner(terms.subspan(i, j - i), x, k + 1);
        prev = e;
        i = j;
    }
    return acc * ipow(x[k], prev);
}

} // namespace

double MultiPoly::eval(std::span<const double> values) const
{
    if (values.size() != arity())
        throw InputError("evaluation point has " + std::to_string(values.size()) + " values, expected " +
                         std::to_string(arity()));
    std::vector<NumTerm> ts;
    ts.reserve(terms_.size());
    for (const auto& [m, c] : terms_)
        ts.push_back({m.data(), c.get_d()});
    std::sort(ts.begin(), ts.end(), [n = arity()](const NumTerm& a, const NumTerm& b) {
        return std::lexicographical_compare(b.exps, b.exps + n, a.exps, a.exps + n);
    });
    return horner(ts, values, 0);
}

Rational MultiPoly::eval_exact(std::span<const Rational> values) const
{
    if (values.size() != arity())
        throw InputError("evaluation point has wrong arity");
    Rational sum = 0;
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::uint32_t k = 0; k < m[i]; ++k)
                t *= values[i];
        sum += t;
    }
    return sum;
}

double MultiPoly::eval_named(const std::map<std::string, double>& values) const
{
    std::vector<double> x(arity());
    for (std::size_t i = 0; i < arity(); ++i) {
        auto it = values.find(reg_->name(i));
        if (it == values.end())
            throw InputError("no value supplied for variable '" + reg_->name(i) + "'");
        x[i] = it->second;
    }
    return eval(x);
}

void check_same_registry(const MultiPoly& a, const MultiPoly& b)
{
    if (a.registry() != b.registry() && !(*a.registry() == *b.registry()))
        throw InputError("polynomials use different variable registries");
}

MultiPoly poly_add(const MultiPoly& a, const MultiPoly& b)
{
    MultiPoly r = a;
    r += b;
    return r;
}

MultiPoly poly_sub(const MultiPoly& a, const MultiPoly& b)
{
    MultiPoly r = a;
    r -= b;
    return r;
}

MultiPoly poly_mul(const MultiPoly& a, const MultiPoly& b)
{
    check_same_registry(a, b);
    MultiPoly r(a.registry());
    Monomial m(a.arity());
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            for (std::size_t i = 0; i < m.size(); ++i)
                m[i] = ma[i] + mb[i];
            r.add_term(m, ca * cb);
        }
    return r;
}

MultiPoly poly_exact_div(const MultiPoly& a, const MultiPoly& b)
{
    check_same_registry(a, b);
    if (b.is_zero())
        throw NumericError("division by the zero polynomial");
    MultiPoly q(a.registry());
    MultiPoly r = a;
    const auto& [lb, cb] = *b.terms().begin();
    Monomial t(a.arity());
    while (!r.is_zero()) {
        const auto& [lr, cr] = *r.terms().begin();
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (lr[i] < lb[i])
                throw NumericError("inexact polynomial division");
            t[i] = lr[i] - lb[i];
        }
        Rational c = cr / cb;
        q.add_term(t, c);
        Monomial m(a.arity());
        for (const auto& [mb, cbb] : b.terms()) {
            for (std::size_t i = 0; i < m.size(); ++i)
                m[i] = t[i] + mb[i];
            r.add_term(m, -c * cbb);
        }
    }
    return q;
}

double poly_eval(const MultiPoly& p, const std::map<std::string, double>& values)
{
    return p.eval_named(values);
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) { return poly_add(a, b); }
MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return poly_sub(a, b); }
MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) { return poly_mul(a, b); }

MultiPoly operator*(const Rational& c, const MultiPoly& a)
{
    MultiPoly r = a;
    r *= c;
    return r;
}

RingMatrix::RingMatrix(RegistryPtr reg, std::size_t rows, std::size_t cols)
    : reg_(reg), rows_(rows), cols_(cols), data_(rows * cols, MultiPoly(reg))
{
}

namespace {

MultiPoly cofactor_rec(const RingMatrix& m, std::size_t row, std::vector<bool>& used)
{
    std::size_t n = m.rows();
    if (row == n)
        return MultiPoly::constant(m.registry(), 1);
    MultiPoly sum(m.registry());
    int sign = 1;
    for (std::size_t j = 0; j < n; ++j) {
        if (used[j])
            continue;
        if (!m(row, j).is_zero()) {
            used[j] = true;
            MultiPoly minor = cofactor_rec(m, row + 1, used);
            used[j] = false;
            if (!minor.is_zero()) {
                MultiPoly t = m(row, j) * minor;
                if (sign > 0)
                    sum += t;
                else
                    sum -= t;
            }
        }
        sign = -sign;
    }
    return sum;
}

void require_square(const RingMatrix& m)
{
    if (m.rows() != m.cols())
        throw InputError("determinant of a non-square " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + " matrix");
}

} // namespace

MultiPoly det_cofactor(const RingMatrix& m)
{
    require_square(m);
    std::vector<bool> used(m.cols(), false);
    return cofactor_rec(m, 0, used);
}

MultiPoly det_bareiss(const RingMatrix& m)
{
    require_square(m);
    std::size_t n = m.rows();
    if (n == 0)
        return MultiPoly::constant(m.registry(), 1);
    RingMatrix a = m;
    MultiPoly prev = MultiPoly::constant(m.registry(), 1);
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k).is_zero()) {
            std::size_t p = k + 1;
            while (p < n && a(p, k).is_zero())
                ++p;
            if (p == n)
                return MultiPoly(m.registry());
            for (std::size_t j = 0; j < n; ++j)
                std::swap(a(k, j), a(p, j));
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                MultiPoly num = a(k, k) * a(i, j) - a(i, k) * a(k, j);
                a(i, j) = poly_exact_div(num, prev);
            }
        prev = a(k, k);
    }
    return negate ? -a(n - 1, n - 1) : a(n - 1, n - 1);
}

MultiPoly det_fraction_free(const RingMatrix& m)
{
    require_square(m);
    return m.rows() < 6 ? det_cofactor(m) : det_bareiss(m);
}

} // namespace th::poly
