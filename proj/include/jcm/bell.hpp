// bell.hpp — Pseudo-spin measurements on a Fock pair, the CHSH Bell
// operator at the closed-form settings, and the correlation-matrix maximum

#pragma once

#include "jcm/spectrum.hpp"

namespace jcm {

struct MeasurementSettings {
    Eigen::Vector3d a_vec;
    Eigen::Vector3d a_prime;
    Eigen::Vector3d b_vec;
    Eigen::Vector3d b_prime;
};

// Pauli-like triple on the Fock pair {|n>, |n+1>}, lifted to the full
// space with the atom identity. Orientation follows the pair term of the
// infinite pseudo-spin sums: s_z = |n><n| - |n+1><n+1|, which closes the
// right-handed algebra s_x s_y = i s_z and reproduces the closed-form
// CHSH value at the stated settings.
struct PseudoSpinTriple {
    int pair_n = 0;
    Operator sx;
    Operator sy;
    Operator sz;
};

PseudoSpinTriple pseudo_spin_pair(int n, const SpaceSpec& space);

// a = (0,0,-1), a' = (1,0,0), b = (-sin t*, 0, cos t*), b' = (sin t*, 0,
// cos t*) with t* = pi/2 + arctan(1 / sin 2 theta). Undefined at
// theta in {0, pi/2} (product state).
MeasurementSettings optimal_settings(double theta);

// <state| B_CHSH |state> with the atom Pauli triple on one side and the
// pseudo-spin pair triple on the other.
double chsh_expectation(const StateVector& state, const MeasurementSettings& settings,
                        int n);

// Maximum CHSH value over all unit-vector settings: 2 sqrt(s1^2 + s2^2)
// from the two largest singular values of the 3x3 correlation matrix.
double chsh_max(const StateVector& state, int n);

// Correlation matrix M_ij = <sigma_i (x) s_j>, exposed for the oracle
// cross-checks.
Eigen::Matrix3d correlation_matrix(const StateVector& state, int n);

struct BellResult {
    int n = 0;
    double theta = 0.0;
    double chsh_value = 0.0; // value at the closed-form settings
    double chsh_max = 0.0;   // correlation-matrix maximum
    bool violated = false;   // chsh_value > 2 + 1e-12
};

// One result per n over |psi_n^->. Degenerate angles (theta in {0, pi/2},
// reached at g = 0) carry the continuous-limit value chsh_value = 2. For
// g < 0 the dressed spinor is the sigma_z-conjugate of the g > 0 one, so
// the settings are used with b and b' exchanged (the image of the stated
// settings under that local unitary).
std::vector<BellResult> bell_scan(int n_min, int n_max, const JcmParams& params,
                                  const SpaceSpec& space);

} // namespace jcm
