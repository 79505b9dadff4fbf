#include "jcm/operators.hpp"

#include <cmath>
#include <sstream>

#include "jcm/errors.hpp"

namespace jcm {

Matrix kron(const Matrix& A, const Matrix& B) {
    Matrix C = Matrix::Zero(A.rows() * B.rows(), A.cols() * B.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j)
            if (A(i, j) != Complex(0.0, 0.0))
                C.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return C;
}

double fro_norm(const Matrix& A) { return A.norm(); }

double max_abs(const Matrix& A) { return A.cwiseAbs().maxCoeff(); }

Matrix project_out_guard(const Matrix& A, const SpaceSpec& space) {
    Matrix P = A;
    const int gd = space.guard_index();
    P.row(gd).setZero();
    P.col(gd).setZero();
    return P;
}

double rel_fro_diff(const Matrix& A, const Matrix& B) {
    return (A - B).norm() / std::max(1.0, B.norm());
}

ElementaryOps elementary_operators(const SpaceSpec& space) {
    const int nf = space.fock_dim();

    Matrix a_fock = Matrix::Zero(nf, nf);
    for (int n = 1; n < nf; ++n)
        a_fock(n - 1, n) = std::sqrt(static_cast<double>(n));

    Matrix id2 = Matrix::Identity(2, 2);
    Matrix idf = Matrix::Identity(nf, nf);

    Matrix sp = Matrix::Zero(2, 2); // |e><g|, e in the upper slot
    sp(0, 1) = 1.0;
    Matrix sm = Matrix::Zero(2, 2); // |g><e|
    sm(1, 0) = 1.0;
    Matrix sz = Matrix::Zero(2, 2);
    sz(0, 0) = 1.0;
    sz(1, 1) = -1.0;

    ElementaryOps ops;
    ops.a = Operator(space, kron(id2, a_fock));
    ops.a_dag = Operator(space, kron(id2, a_fock.adjoint()));
    ops.sigma_plus = Operator(space, kron(sp, idf));
    ops.sigma_minus = Operator(space, kron(sm, idf));
    ops.sigma_z = Operator(space, kron(sz, idf));
    ops.identity = Operator(space, Matrix::Identity(space.dim(), space.dim()));
    return ops;
}

Operator commutator(const Operator& A, const Operator& B) {
    require_same_space(A.space, B.space);
    return Operator(A.space, A.m * B.m - B.m * A.m);
}

EigResult hermitian_eig(const Operator& A) {
    const double scale = max_abs(A.m);
    if (max_abs(A.m - A.m.adjoint()) > 1e-12 * std::max(1.0, scale))
        throw std::invalid_argument("hermitian_eig: input is not Hermitian");

    Eigen::SelfAdjointEigenSolver<Matrix> solver(A.m);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("hermitian_eig: eigensolver failed to converge");
    return EigResult{solver.eigenvalues(), solver.eigenvectors()};
}

Operator operator_function(const Operator& A, const std::function<double(double)>& f) {
    EigResult eig = hermitian_eig(A);
    Eigen::VectorXd fvals(eig.eigenvalues.size());
    for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
        const double y = f(eig.eigenvalues[i]);
        if (!std::isfinite(y)) {
            std::ostringstream msg;
            msg << "operator_function: f is undefined at eigenvalue "
                << eig.eigenvalues[i];
            throw domain_error(msg.str());
        }
        fvals[i] = y;
    }
    Matrix result = eig.eigenvectors * fvals.asDiagonal() * eig.eigenvectors.adjoint();
    return Operator(A.space, std::move(result));
}

namespace detail {

SmallEig hermitian_eig_2x2(double p, const Complex& q, double r) {
    SmallEig out;
    const double mean = 0.5 * (p + r);
    const double hd = 0.5 * (p - r);
    const double root = std::hypot(hd, std::abs(q));

    out.eigenvalues << mean - root, mean + root;

    if (root == 0.0) {
        out.eigenvectors = Eigen::Matrix2cd::Identity();
        return out;
    }

    // Eigenvector for the larger eigenvalue; pick the better-conditioned row.
    Eigen::Vector2cd vp;
    if (hd >= 0.0)
        vp << Complex(hd + root, 0.0), std::conj(q);
    else
        vp << q, Complex(root - hd, 0.0);
    vp.normalize();

    Eigen::Vector2cd vm;
    vm << -std::conj(vp(1)), std::conj(vp(0));

    out.eigenvectors.col(0) = vm;
    out.eigenvectors.col(1) = vp;
    return out;
}

} // namespace detail

} // namespace jcm
