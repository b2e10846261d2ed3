#include "tropical_heights/poincare.hpp"

#include <cmath>
#include <numbers>

#include "tropical_heights/error.hpp"

namespace th::poincare {

namespace {

void check_genus(const BiextensionPoint& x, Eigen::Index g, const char* what)
{
    if (x.omega.rows() != g)
        throw InputError(std::string(what) + " has genus " + std::to_string(g) + ", point has genus " +
                         std::to_string(x.omega.rows()));
}

} // namespace

void SiegelPoint::validate() const
{
    if (omega.rows() != omega.cols() || omega.rows() == 0)
        throw InputError("period matrix must be square and nonempty", "omega");
    double scale = std::max(1.0, omega.cwiseAbs().maxCoeff());
    if ((omega - omega.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw InputError("period matrix is not symmetric", "omega");
    Eigen::MatrixXd im = omega.imag();
    Eigen::LLT<Eigen::MatrixXd> llt(0.5 * (im + im.transpose()));
    if (llt.info() != Eigen::Success)
        throw InputError("imaginary part of the period matrix is not positive definite", "omega");
}

void BiextensionPoint::validate() const
{
    SiegelPoint{omega}.validate();
    if (w.size() != omega.rows())
        throw InputError("row vector has wrong length", "w");
    if (z.size() != omega.rows())
        throw InputError("column vector has wrong length", "z");
}

GroupElement GroupElement::identity(int g)
{
    GroupElement e;
    e.lambda1 = Eigen::RowVectorXd::Zero(g);
    e.lambda2 = Eigen::RowVectorXd::Zero(g);
    e.mu1 = Eigen::VectorXd::Zero(g);
    e.mu2 = Eigen::VectorXd::Zero(g);
    e.a = Eigen::MatrixXd::Identity(g, g);
    e.b = Eigen::MatrixXd::Zero(g, g);
    e.c = Eigen::MatrixXd::Zero(g, g);
    e.d = Eigen::MatrixXd::Identity(g, g);
    return e;
}

GroupElement GroupElement::symplectic(const Eigen::MatrixXd& s)
{
    if (s.rows() != s.cols() || s.rows() % 2 != 0)
        throw InputError("symplectic block must be 2g x 2g");
    auto g = static_cast<int>(s.rows() / 2);
    auto e = identity(g);
    e.a = s.topLeftCorner(g, g);
    e.b = s.topRightCorner(g, g);
    e.c = s.bottomLeftCorner(g, g);
    e.d = s.bottomRightCorner(g, g);
    return e;
}

GroupElement GroupElement::translation(const Eigen::RowVectorXd& l1, const Eigen::RowVectorXd& l2)
{
    auto e = identity(static_cast<int>(l1.size()));
    e.lambda1 = l1;
    e.lambda2 = l2;
    return e;
}

GroupElement GroupElement::shift(const Eigen::VectorXd& m1, const Eigen::VectorXd& m2)
{
    auto e = identity(static_cast<int>(m1.size()));
    e.mu1 = m1;
    e.mu2 = m2;
    return e;
}

GroupElement GroupElement::central(int g, cd alpha)
{
    auto e = identity(g);
    e.alpha = alpha;
    return e;
}

Eigen::MatrixXd GroupElement::symplectic_block() const
{
    auto g = a.rows();
    Eigen::MatrixXd s(2 * g, 2 * g);
    s << a, b, c, d;
    return s;
}

Eigen::MatrixXcd GroupElement::matrix() const
{
    auto g = a.rows();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2 * g + 2, 2 * g + 2);
    m(0, 0) = 1;
    m.block(0, 1, 1, g) = lambda1.cast<cd>();
    m.block(0, 1 + g, 1, g) = lambda2.cast<cd>();
    m(0, 2 * g + 1) = alpha;
    m.block(1, 1, 2 * g, 2 * g) = symplectic_block().cast<cd>();
    m.block(1, 2 * g + 1, g, 1) = mu1.cast<cd>();
    m.block(1 + g, 2 * g + 1, g, 1) = mu2.cast<cd>();
    m(2 * g + 1, 2 * g + 1) = 1;
    return m;
}

GroupElement GroupElement::from_matrix(const Eigen::MatrixXcd& m)
{
    auto g = (m.rows() - 2) / 2;
    if (m.rows() != m.cols() || m.rows() != 2 * g + 2)
        throw InputError("group matrix must be (2g+2)-square");
    GroupElement e;
    e.lambda1 = m.block(0, 1, 1, g).real();
    e.lambda2 = m.block(0, 1 + g, 1, g).real();
    e.alpha = m(0, 2 * g + 1);
    e.a = m.block(1, 1, g, g).real();
    e.b = m.block(1, 1 + g, g, g).real();
    e.c = m.block(1 + g, 1, g, g).real();
    e.d = m.block(1 + g, 1 + g, g, g).real();
    e.mu1 = m.block(1, 2 * g + 1, g, 1).real();
    e.mu2 = m.block(1 + g, 2 * g + 1, g, 1).real();
    return e;
}

GroupElement GroupElement::compose(const GroupElement& rhs) const
{
    if (genus() != rhs.genus())
        throw InputError("composing group elements of different genus");
    return from_matrix(matrix() * rhs.matrix());
}

bool GroupElement::is_integral() const
{
    auto integral = [](double v) { return std::abs(v - std::round(v)) <= 1e-12; };
    auto all_integral = [&](const auto& m) {
        for (Eigen::Index i = 0; i < m.size(); ++i)
            if (!integral(m.data()[i]))
                return false;
        return true;
    };
    return all_integral(lambda1) && all_integral(lambda2) && all_integral(mu1) && all_integral(mu2) &&
           all_integral(a) && all_integral(b) && all_integral(c) && all_integral(d) && integral(alpha.real()) &&
           integral(alpha.imag());
}

Eigen::MatrixXd standard_j(int g)
{
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * g, 2 * g);
    j.topRightCorner(g, g) = Eigen::MatrixXd::Identity(g, g);
    j.bottomLeftCorner(g, g) = -Eigen::MatrixXd::Identity(g, g);
    return j;
}

bool is_symplectic(const Eigen::MatrixXd& m)
{
    if (m.rows() != m.cols() || m.rows() % 2 != 0)
        return false;
    auto j = standard_j(static_cast<int>(m.rows() / 2));
    return (m.transpose() * j * m - j).cwiseAbs().maxCoeff() <= 1e-10;
}

BiextensionPoint act_symplectic(const Eigen::MatrixXd& s, const BiextensionPoint& x)
{
    auto g = x.omega.rows();
    if (s.rows() != 2 * g || s.cols() != 2 * g)
        throw InputError("symplectic block has the wrong size");
    Eigen::MatrixXcd a = s.topLeftCorner(g, g).cast<cd>(), b = s.topRightCorner(g, g).cast<cd>();
    Eigen::MatrixXcd c = s.bottomLeftCorner(g, g).cast<cd>(), d = s.bottomRightCorner(g, g).cast<cd>();
    Eigen::MatrixXcd den = c * x.omega + d;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(den);
    if (std::abs(lu.determinant()) < 1e-300)
        throw NumericError("C Omega + D is singular");
    Eigen::PartialPivLU<Eigen::MatrixXcd> lut(den.transpose());
    auto rdiv = [&](const Eigen::MatrixXcd& rhs) -> Eigen::MatrixXcd {
        return lut.solve(rhs.transpose()).transpose();
    };
    BiextensionPoint y;
    y.omega = rdiv(a * x.omega + b);
    y.omega = 0.5 * (y.omega + y.omega.transpose()).eval();
    y.w = rdiv(x.w);
    y.z = a * x.z - y.omega * (c * x.z);
    y.rho = x.rho - (y.w * (c * x.z))(0, 0);
    return y;
}

BiextensionPoint act_lambda(const Eigen::RowVectorXd& l1, const Eigen::RowVectorXd& l2, const BiextensionPoint& x)
{
    check_genus(x, l1.size(), "translation");
    BiextensionPoint y = x;
    y.w = x.w + l1.cast<cd>() * x.omega + l2.cast<cd>();
    y.rho = x.rho + (l1.cast<cd>() * x.z)(0, 0);
    return y;
}

BiextensionPoint act_mu(const Eigen::VectorXd& m1, const Eigen::VectorXd& m2, const BiextensionPoint& x)
{
    check_genus(x, m1.size(), "shift");
    BiextensionPoint y = x;
    y.z = x.z + m1.cast<cd>() - x.omega * m2.cast<cd>();
    y.rho = x.rho - (x.w * m2.cast<cd>())(0, 0);
    return y;
}

BiextensionPoint act_alpha(cd alpha, const BiextensionPoint& x)
{
    BiextensionPoint y = x;
    y.rho += alpha;
    return y;
}

BiextensionPoint act(const GroupElement& g, const BiextensionPoint& x)
{
    check_genus(x, g.genus(), "group element");
    Eigen::MatrixXd s = g.symplectic_block();
    Eigen::RowVectorXd l1 = g.lambda1 * g.d.transpose() - g.lambda2 * g.c.transpose();
    Eigen::RowVectorXd l2 = -g.lambda1 * g.b.transpose() + g.lambda2 * g.a.transpose();
    auto y = act_symplectic(s, x);
    y = act_lambda(l1, l2, y);
    y = act_mu(g.mu1, g.mu2, y);
    y = act_alpha(g.alpha, y);
    return y;
}

BiextensionPoint act_matrix(const Eigen::MatrixXcd& m, const BiextensionPoint& x)
{
    auto g = x.omega.rows();
    if (m.rows() != 2 * g + 2 || m.cols() != 2 * g + 2)
        throw InputError("group matrix has the wrong size");
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(2 * g + 2, g + 2);
    p(0, 0) = 1;
    p.block(0, 1, 1, g) = x.w;
    p(0, g + 1) = x.rho;
    p.block(1, 1, g, g) = x.omega;
    p.block(1, g + 1, g, 1) = x.z;
    p.block(1 + g, 1, g, g) = Eigen::MatrixXcd::Identity(g, g);
    p(2 * g + 1, g + 1) = 1;
    Eigen::MatrixXcd q = m * p;
    // Renormalize so that the third row block becomes (0, I, 0).
    Eigen::MatrixXcd q2o = q.block(1 + g, 1, g, g);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(q2o);
    if (std::abs(lu.determinant()) < 1e-300)
        throw NumericError("group element maps the point outside the chart");
    Eigen::MatrixXcd xinv = lu.inverse();
    Eigen::VectorXcd u = -xinv * q.block(1 + g, g + 1, g, 1);
    BiextensionPoint y;
    y.omega = q.block(1, 1, g, g) * xinv;
    y.omega = 0.5 * (y.omega + y.omega.transpose()).eval();
    y.z = q.block(1, g + 1, g, 1) + q.block(1, 1, g, g) * u;
    y.w = q.block(0, 1, 1, g) * xinv;
    y.rho = q(0, g + 1) + (q.block(0, 1, 1, g) * u)(0, 0);
    return y;
}

double log_norm(const BiextensionPoint& x)
{
    Eigen::MatrixXd im = x.omega.imag();
    Eigen::LLT<Eigen::MatrixXd> llt(0.5 * (im + im.transpose()));
    if (llt.info() != Eigen::Success)
        throw NumericError("imaginary part of the period matrix is not positive definite");
    Eigen::VectorXd wz = llt.solve(Eigen::VectorXd(x.z.imag()));
    double quad = Eigen::RowVectorXd(x.w.imag()).dot(wz.transpose());
    return -2.0 * std::numbers::pi * x.rho.imag() + 2.0 * std::numbers::pi * quad;
}

} // namespace th::poincare
