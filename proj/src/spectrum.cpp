#include "jcm/spectrum.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "jcm/errors.hpp"

namespace jcm {

GroundState ground_state(const JcmParams& params, const SpaceSpec& space) {
    Vector psi = Vector::Zero(space.dim());
    psi[space.index_ground(0)] = 1.0;
    return GroundState{0.5 * params.delta(), StateVector(space, std::move(psi))};
}

double theta_n(int n, const JcmParams& params) {
    if (n < 0)
        throw std::invalid_argument("theta_n: n must be >= 0");
    const double d = params.delta();
    if (params.g == 0.0) {
        if (d > 0.0)
            return 0.0;
        if (d < 0.0)
            return std::numbers::pi / 2.0;
        throw domain_error("theta_n: g = 0 and delta = 0 give a degenerate block");
    }
    const double c = static_cast<double>(n) + 1.0;
    const double num = -d + std::sqrt(d * d + 4.0 * params.g * params.g * c);
    const double den = 2.0 * std::abs(params.g) * std::sqrt(c);
    return std::atan(num / den);
}

DressedPair excited_pair(int n, const JcmParams& params, const SpaceSpec& space) {
    if (n < 0 || n > space.fock_cutoff - 1)
        throw std::invalid_argument("excited_pair: need 0 <= n <= N-1");

    const double c = static_cast<double>(n) + 1.0;
    const double split = std::sqrt(params.g * params.g * c + 0.25 * params.delta() * params.delta());
    const double theta = theta_n(n, params);
    const double sign = params.g < 0.0 ? -1.0 : 1.0;

    const int ig = space.index_ground(n + 1);
    const int ie = space.index_excited(n);

    Vector minus = Vector::Zero(space.dim());
    minus[ig] = std::sin(theta);
    minus[ie] = -sign * std::cos(theta);

    Vector plus = Vector::Zero(space.dim());
    plus[ig] = std::cos(theta);
    plus[ie] = sign * std::sin(theta);

    DressedPair pair;
    pair.n = n;
    pair.E_minus = params.omega * c - split;
    pair.E_plus = params.omega * c + split;
    pair.theta = theta;
    pair.psi_minus = StateVector(space, std::move(minus));
    pair.psi_plus = StateVector(space, std::move(plus));
    return pair;
}

LadderAction verify_ladder_action(int n, const JcmParams& params,
                                  const SpaceSpec& space, const ShiftPair& pair) {
    const DressedPair dressed = excited_pair(n, params, space);
    require_same_space(space, pair.b.space);

    const double b_scale = project_out_guard(pair.b.m, space).norm();

    LadderAction action;
    action.annihilation_residual = (pair.b.m * dressed.psi_minus.v).norm() / b_scale;
    if (action.annihilation_residual > 1e-10) {
        std::ostringstream msg;
        msg << "verify_ladder_action: ||b psi_" << n << "^-|| = "
            << action.annihilation_residual << " ||b||_F exceeds 1e-10";
        throw std::runtime_error(msg.str());
    }

    const Vector raised = pair.b_dag.m * dressed.psi_minus.v;
    action.chi_n = raised.norm();
    action.overlap_plus = std::abs(dressed.psi_plus.v.dot(raised)) / action.chi_n;
    return action;
}

} // namespace jcm
