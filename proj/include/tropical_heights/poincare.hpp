#pragma once

#include <complex>

#include <Eigen/Dense>

namespace th::poincare {

using cd = std::complex<double>;

struct SiegelPoint {
    Eigen::MatrixXcd omega;
    void validate() const; // symmetric to 1e-12 and Im omega positive definite
};

struct BiextensionPoint {
    Eigen::MatrixXcd omega;  // g x g
    Eigen::RowVectorXcd w;   // 1 x g
    Eigen::VectorXcd z;      // g x 1
    cd rho;

    int genus() const { return static_cast<int>(omega.rows()); }
    void validate() const;
};

// Element of the real group: a unipotent Heisenberg part plus a symplectic block.
struct GroupElement {
    Eigen::RowVectorXd lambda1, lambda2;
    Eigen::VectorXd mu1, mu2;
    cd alpha{0.0, 0.0};
    Eigen::MatrixXd a, b, c, d;

    static GroupElement identity(int g);
    static GroupElement symplectic(const Eigen::MatrixXd& s);
    static GroupElement translation(const Eigen::RowVectorXd& l1, const Eigen::RowVectorXd& l2);
    static GroupElement shift(const Eigen::VectorXd& m1, const Eigen::VectorXd& m2);
    static GroupElement central(int g, cd alpha);

    int genus() const { return static_cast<int>(a.rows()); }
    Eigen::MatrixXd symplectic_block() const;
    // (2g+2)-square matrix with blocks (1, g, g, 1); complex because of alpha.
    Eigen::MatrixXcd matrix() const;
    static GroupElement from_matrix(const Eigen::MatrixXcd& m);
    GroupElement compose(const GroupElement& rhs) const; // this * rhs
    bool is_integral() const;
};

bool is_symplectic(const Eigen::MatrixXd& m);
Eigen::MatrixXd standard_j(int g);

// Generator actions.
BiextensionPoint act_symplectic(const Eigen::MatrixXd& s, const BiextensionPoint& x);
BiextensionPoint act_lambda(const Eigen::RowVectorXd& l1, const Eigen::RowVectorXd& l2, const BiextensionPoint& x);
BiextensionPoint act_mu(const Eigen::VectorXd& m1, const Eigen::VectorXd& m2, const BiextensionPoint& x);
BiextensionPoint act_alpha(cd alpha, const BiextensionPoint& x);

// Symplectic part first, then lambda' = (lambda1, lambda2) S^{-1}, then mu, then alpha.
BiextensionPoint act(const GroupElement& g, const BiextensionPoint& x);

// Action of an arbitrary complex (2g+2)-square matrix of the same block shape, by
// multiplying the period matrix and renormalizing.
BiextensionPoint act_matrix(const Eigen::MatrixXcd& m, const BiextensionPoint& x);

double log_norm(const BiextensionPoint& x);

} // namespace th::poincare
