#include "jcm/ladder.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "jcm/errors.hpp"

namespace jcm {

namespace {

// Tiny negative radicands from rounding are clamped; genuine sign
// violations are reported with the offending energy.
double checked_radicand(double value, double scale, double E) {
    if (value >= 0.0)
        return value;
    if (value >= -1e3 * std::numeric_limits<double>::epsilon() * scale)
        return 0.0;
    std::ostringstream msg;
    msg << "T(E): negative radicand " << value << " at E = " << E;
    throw domain_error(msg.str());
}

} // namespace

double SEntryFunctions::radicand(double E) const {
    const double g2 = params.g * params.g;
    const double wd = params.omega * params.delta();
    return g2 * g2 + 4.0 * g2 * E * params.omega + wd * wd;
}

double SEntryFunctions::big_t(double E) const {
    const double g2 = params.g * params.g;
    const double wd = params.omega * params.delta();
    const double scale = g2 * g2 + std::abs(4.0 * g2 * E * params.omega) + wd * wd;
    return std::sqrt(checked_radicand(radicand(E), scale, E));
}

double SEntryFunctions::xi(double E) const {
    return params.g * params.g - params.omega * params.delta() - big_t(E);
}

double SEntryFunctions::tau(double E) const {
    return -params.g * params.g - params.omega * params.delta() + big_t(E);
}

double SEntryFunctions::kappa(double E) const {
    return -params.g * params.g - params.omega * params.delta() - big_t(E);
}

double SEntryFunctions::eta(double E) const {
    return params.g * params.g - params.omega * params.delta() + big_t(E);
}

double SEntryFunctions::alpha(double E) const {
    const double t = big_t(E);
    if (t == 0.0) {
        std::ostringstream msg;
        msg << "alpha(E): T vanishes at E = " << E;
        throw domain_error(msg.str());
    }
    return beta * (1.0 + 2.0 * params.g * params.g / t);
}

double SEntryFunctions::lambda3(double E) const {
    return (params.g * params.g + E * params.omega - big_t(E)) / params.omega;
}

double SEntryFunctions::lambda4(double E) const {
    return (params.g * params.g + E * params.omega + big_t(E)) / params.omega;
}

GScalar g_scalar(double E, const JcmParams& params) {
    const double w = params.omega;
    const double g = params.g;
    const double d = params.delta();
    const double g2w = g * g / w;

    GScalar out;
    out.E = E;
    out.entries << E - d + g2w, -g2w,          -2.0 * g,          0.0,
                   -g2w,         E + d + g2w,   2.0 * g,          0.0,
                   -(g / w) * E, (g / w) * E,   E,                0.0,
                   -g * d / (2.0 * w), g * d / (2.0 * w), 0.0,    E;

    const SEntryFunctions fn{params, 1.0};
    out.T = fn.big_t(E);
    out.lambdas = {E, E, fn.lambda3(E), fn.lambda4(E)};
    return out;
}

GEigenvalues g_eigenvalues(double E, const JcmParams& params) {
    const SEntryFunctions fn{params, 1.0};
    const double t = fn.big_t(E);
    return GEigenvalues{E, E, fn.lambda3(E), fn.lambda4(E), t};
}

ShiftPair build_shift_pair(const Operator& H, const JcmParams& params, double beta) {
    const SpaceSpec& space = H.space;
    const std::vector<ChargeBlock> blocks = block_decompose(space);
    const SEntryFunctions fn{params, beta};

    // Precondition: T(E) > 0 on every eigenvalue outside the guard state,
    // otherwise alpha(H) is undefined there.
    for (const SpectrumRow& row : numeric_spectrum(H, blocks)) {
        const double t = fn.big_t(row.energy); // throws on negative radicand
        if (t == 0.0) {
            std::ostringstream msg;
            msg << "build_shift_pair: T vanishes at eigenvalue " << row.energy
                << " (block c = " << row.block_c << ")";
            throw domain_error(msg.str());
        }
    }

    const ElementaryOps ops = elementary_operators(space);
    const Matrix sp_a = ops.sigma_plus.m * ops.a.m;
    const Matrix sm_adag = ops.sigma_minus.m * ops.a_dag.m;

    const double gd = params.g * params.delta();

    auto fn_of_h = [&](const std::function<double(double)>& f) {
        return charge_block_function(H, blocks, f).m;
    };

    Matrix b = sp_a * fn_of_h([&](double E) { return beta * fn.xi(E); })
             + sm_adag * fn_of_h([&](double E) { return beta * fn.tau(E); })
             + ops.sigma_z.m * fn_of_h([&](double E) { return beta * fn.gamma(E); })
             - gd * beta * Matrix::Identity(space.dim(), space.dim());

    Matrix b_dag = sp_a * fn_of_h([&](double E) { return fn.eta(E) * fn.alpha(E); })
                 + sm_adag * fn_of_h([&](double E) { return fn.kappa(E) * fn.alpha(E); })
                 + ops.sigma_z.m * fn_of_h([&](double E) { return fn.gamma(E) * fn.alpha(E); })
                 + fn_of_h([&](double E) { return -gd * fn.alpha(E); });

    ShiftPair pair;
    pair.b = Operator(space, std::move(b));
    pair.b_dag = Operator(space, std::move(b_dag));
    pair.beta = beta;
    pair.params = params;
    return pair;
}

ResidualReport ladder_residuals(const Operator& H, const ShiftPair& pair) {
    const SpaceSpec& space = H.space;
    const SEntryFunctions fn{pair.params, pair.beta};

    // Independent route: lambda3(H), lambda4(H) through the dense
    // eigendecomposition, not the block path used by the construction.
    const Matrix lam3 = operator_function(H, [&](double E) { return fn.lambda3(E); }).m;
    const Matrix lam4 = operator_function(H, [&](double E) { return fn.lambda4(E); }).m;

    const Matrix& b = pair.b.m;
    const Matrix& bd = pair.b_dag.m;
    const double b_norm = project_out_guard(b, space).norm();
    const double bd_norm = project_out_guard(bd, space).norm();

    const Matrix res1 = project_out_guard(H.m * b - b * H.m - b * (lam3 - H.m), space);
    const Matrix res2 = project_out_guard(H.m * bd - bd * H.m - bd * (lam4 - H.m), space);
    const Matrix res3 = project_out_guard(bd.adjoint() - b, space);

    const Operator C = build_charge(space);
    const double r4b = (C.m * b - b * C.m).norm();
    const double r4bd = (C.m * bd - bd * C.m).norm();

    const std::string guard_note = "guard state projected out";

    ResidualReport report;
    report.add(make_check("ladder_r1_commutator_b", res1.norm() / b_norm, 1e-10, guard_note));
    report.add(make_check("ladder_r2_commutator_b_dag", res2.norm() / bd_norm, 1e-10, guard_note));
    report.add(make_check("ladder_r3_adjointness", res3.norm() / b_norm, 1e-10, guard_note));
    report.add(make_check("ladder_r4_charge_commutant", std::max(r4b, r4bd), 0.0,
                          "structural zero, no projection"));
    return report;
}

} // namespace jcm
