// ladder.hpp — Shift operators b, b^dag from the matrix-diagonalizing
// construction: scalar eigenvalue data of the closure matrix, the operator
// coefficients of S = R*M, and residual verification of the ladder relations

#pragma once

#include <array>

#include "jcm/model.hpp"
#include "jcm/report.hpp"

namespace jcm {

// Scalar coefficient maps entering the columns of S, all functions of the
// energy E standing in for H, at fixed parameters. T is the square root
// of g^4 + 4 g^2 E omega + omega^2 delta^2.
struct SEntryFunctions {
    JcmParams params;
    double beta = 1.0;

    double radicand(double E) const;
    double big_t(double E) const; // throws domain_error on negative radicand

    double gamma(double E) const { return -2.0 * params.g * E; }
    double xi(double E) const;    // g^2 - omega delta - T
    double tau(double E) const;   // -g^2 - omega delta + T
    double kappa(double E) const; // -g^2 - omega delta - T
    double eta(double E) const;   // g^2 - omega delta + T
    double alpha(double E) const; // beta (1 + 2 g^2 / T), throws when T == 0

    double lambda3(double E) const; // (g^2 + E omega - T) / omega
    double lambda4(double E) const; // (g^2 + E omega + T) / omega
};

// The 4x4 closure matrix with H replaced by the scalar E, plus its four
// eigenvalues in closed form.
struct GScalar {
    double E = 0.0;
    Eigen::Matrix4d entries;
    std::array<double, 4> lambdas; // lambda1 = lambda2 = E, lambda3, lambda4
    double T = 0.0;
};

GScalar g_scalar(double E, const JcmParams& params);

struct GEigenvalues {
    double lambda1, lambda2, lambda3, lambda4, T;
};

GEigenvalues g_eigenvalues(double E, const JcmParams& params);

struct ShiftPair {
    Operator b;
    Operator b_dag;
    double beta = 1.0;
    JcmParams params;
};

// b      = sigma^+ a [xi(H)] beta + sigma^- a^dag [tau(H)] beta
//          + sigma_z gamma(H) beta - g delta beta,
// b^dag  = sigma^+ a [eta(H)] alpha(H) + sigma^- a^dag [kappa(H)] alpha(H)
//          + sigma_z gamma(H) alpha(H) - g delta alpha(H),
// with every H-function multiplying its elementary operator from the right
// (row-vector-times-S convention) and alpha(H) = beta (1 + 2 g^2 / T(H)).
// H-functions are assembled per charge block, so both operators commute
// with C at the exact matrix level. Requires T(E) > 0 on every eigenvalue
// outside the guard state.
ShiftPair build_shift_pair(const Operator& H, const JcmParams& params, double beta);

// r1: ||[H,b] - b (lambda3(H) - H)||_F / ||b||_F
// r2: ||[H,b^dag] - b^dag (lambda4(H) - H)||_F / ||b^dag||_F
// r3: ||(b^dag)^H - b||_F / ||b||_F
// r4: ||[C,b]||_F and ||[C,b^dag]||_F (structural zeros)
// All norms taken with the guard state projected out of both factors;
// lambda3(H), lambda4(H) realized through the dense functional calculus so
// the construction and the verification take independent routes.
ResidualReport ladder_residuals(const Operator& H, const ShiftPair& pair);

} // namespace jcm
