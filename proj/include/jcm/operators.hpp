// operators.hpp — Dense complex operator algebra: elementary operators,
// commutators, Hermitian eigendecomposition, functions of Hermitian operators

#pragma once

#include <functional>

#include "jcm/space.hpp"

namespace jcm {

struct ElementaryOps {
    Operator a;           // annihilation (x) atom identity
    Operator a_dag;       // creation (x) atom identity
    Operator sigma_plus;  // |e><g| (x) Fock identity
    Operator sigma_minus; // |g><e| (x) Fock identity
    Operator sigma_z;     // diag(+1 on e, -1 on g) (x) Fock identity
    Operator identity;
};

ElementaryOps elementary_operators(const SpaceSpec& space);

// AB - BA; throws on dimension mismatch.
Operator commutator(const Operator& A, const Operator& B);

struct EigResult {
    Eigen::VectorXd eigenvalues; // ascending
    Matrix eigenvectors;         // columns, unitary
};

// Dense Hermitian eigendecomposition. Input must satisfy
// max|A - A^H| <= 1e-12 * max|A|.
EigResult hermitian_eig(const Operator& A);

// V diag(f(lambda)) V^H through the dense eigendecomposition. Throws
// domain_error naming the offending eigenvalue when f is non-finite there.
Operator operator_function(const Operator& A, const std::function<double(double)>& f);

// --- small helpers used throughout ---

Matrix kron(const Matrix& A, const Matrix& B);

double fro_norm(const Matrix& A);
double max_abs(const Matrix& A);

// Copy with the guard row and column zeroed.
Matrix project_out_guard(const Matrix& A, const SpaceSpec& space);

// ||A - B||_F / max(1, ||B||_F)
double rel_fro_diff(const Matrix& A, const Matrix& B);

namespace detail {

// Closed-form eigendecomposition of a 1x1 or 2x2 Hermitian block
// [[p, q], [conj(q), r]]; eigenvalues ascending, columns orthonormal.
struct SmallEig {
    Eigen::Vector2d eigenvalues;
    Eigen::Matrix2cd eigenvectors;
};

SmallEig hermitian_eig_2x2(double p, const Complex& q, double r);

} // namespace detail

} // namespace jcm
