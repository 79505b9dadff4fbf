#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "jcm/errors.hpp"
#include "jcm/spectrum.hpp"

#include "test_helpers.hpp"

using namespace jcm;
using jcm_test::close_rel;
using jcm_test::pstar;

TEST_CASE("ground state: energy and eigen-residual") {
    const SpaceSpec space = make_space(6);

    const GroundState gs = ground_state(pstar(), space);
    CHECK(gs.E0 == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(gs.psi0.v[space.index_ground(0)] == Complex(1.0, 0.0));

    const GroundState resonant = ground_state(make_params(1.0, 0.0, 0.5), space);
    CHECK(resonant.E0 == 0.0);

    jcm_test::ParamDraw draw(17);
    for (int trial = 0; trial < 30; ++trial) {
        const JcmParams params = draw.next();
        const GroundState g = ground_state(params, space);
        const Operator H = build_hamiltonian(params, space);
        CHECK((H.m * g.psi0.v - g.E0 * g.psi0.v).norm() < 1e-13);

        // matches the 1x1 block of the oracle exactly
        const auto rows = numeric_spectrum(H, block_decompose(space));
        CHECK(rows[0].block_c == 0);
        CHECK(rows[0].energy == g.E0);
    }
}

TEST_CASE("mixing angle: reference value, resonance, and limits") {
    CHECK(theta_n(1, pstar()) == doctest::Approx(0.61547970867038734).epsilon(1e-14));
    CHECK(std::tan(theta_n(1, pstar())) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-13));

    // resonance: delta = 0 gives pi/4 for every n
    const JcmParams res = make_params(1.0, 0.3, 0.5);
    for (int n = 0; n < 8; ++n)
        CHECK(theta_n(n, res) == doctest::Approx(std::numbers::pi / 4.0).epsilon(1e-14));

    // large positive detuning drives theta to 0
    CHECK(theta_n(0, make_params(1000.0, 0.1, 1.0)) < 1.1e-4);

    // g = 0 continuous limits
    CHECK(theta_n(2, make_params(1.0, 0.0, 0.3)) == 0.0);
    CHECK(theta_n(2, make_params(1.0, 0.0, 0.7)) == std::numbers::pi / 2.0);
    CHECK_THROWS_AS(theta_n(2, make_params(1.0, 0.0, 0.5)), domain_error);
    CHECK_THROWS_AS(theta_n(-1, pstar()), std::invalid_argument);
}

TEST_CASE("excited pair at the reference point and in limits") {
    const SpaceSpec space = make_space(8);

    const DressedPair p1 = excited_pair(1, pstar(), space);
    CHECK(p1.E_minus == doctest::Approx(1.7).epsilon(1e-14));
    CHECK(p1.E_plus == doctest::Approx(2.3).epsilon(1e-14));

    // decoupled limit with positive detuning: psi^- -> -|e,n>
    const JcmParams decoupled = make_params(1.0, 0.0, 0.25); // delta = 0.5
    const DressedPair p0 = excited_pair(2, decoupled, space);
    CHECK(p0.theta == 0.0);
    CHECK(p0.psi_minus.v[space.index_excited(2)] == Complex(-1.0, 0.0));
    CHECK(p0.E_minus == doctest::Approx(3.0 - 0.25).epsilon(1e-14)); // omega(n+1) - delta/2

    CHECK_THROWS_AS(excited_pair(8, pstar(), space), std::invalid_argument);
    CHECK_THROWS_AS(excited_pair(-1, pstar(), space), std::invalid_argument);
}

TEST_CASE("dressed states are orthonormal eigenvectors of the built H") {
    jcm_test::ParamDraw draw(23);
    const SpaceSpec space = make_space(7);
    for (int trial = 0; trial < 40; ++trial) {
        const JcmParams params = draw.next();
        if (params.g == 0.0 && params.delta() == 0.0)
            continue;
        const Operator H = build_hamiltonian(params, space);
        for (int n = 0; n < space.fock_cutoff; ++n) {
            DressedPair pair;
            try {
                pair = excited_pair(n, params, space);
            } catch (const domain_error&) {
                continue; // g = 0 with delta = 0
            }
            CHECK(std::abs(pair.psi_minus.norm() - 1.0) < 1e-12);
            CHECK(std::abs(pair.psi_plus.norm() - 1.0) < 1e-12);
            CHECK(std::abs(pair.psi_minus.v.dot(pair.psi_plus.v)) < 1e-12);
            const double s = std::sin(pair.theta);
            const double c = std::cos(pair.theta);
            CHECK(std::abs(s * s + c * c - 1.0) < 1e-15);

            const double scale = std::max(1.0, std::abs(pair.E_minus));
            CHECK((H.m * pair.psi_minus.v - pair.E_minus * pair.psi_minus.v).norm()
                  < 1e-11 * scale);
            CHECK((H.m * pair.psi_plus.v - pair.E_plus * pair.psi_plus.v).norm()
                  < 1e-11 * scale);
        }
    }
}

TEST_CASE("analytic eigenvectors match the numeric block oracle") {
    const JcmParams params = pstar();
    const SpaceSpec space = make_space(8);
    const Operator H = build_hamiltonian(params, space);
    const auto rows = numeric_spectrum(H, block_decompose(space));

    for (int n = 0; n < space.fock_cutoff; ++n) {
        const DressedPair pair = excited_pair(n, params, space);
        for (const auto& row : rows) {
            if (row.block_c != n + 1)
                continue;
            const bool is_minus = close_rel(row.energy, pair.E_minus, 1e-12);
            const StateVector& analytic = is_minus ? pair.psi_minus : pair.psi_plus;
            CHECK(std::abs(std::abs(analytic.v.dot(row.state.v)) - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("full spectrum equivalence against the block oracle over random draws") {
    jcm_test::ParamDraw draw(2025);
    const SpaceSpec space = make_space(6);
    for (int trial = 0; trial < 50; ++trial) {
        const JcmParams params = draw.next();
        const Operator H = build_hamiltonian(params, space);

        std::vector<double> analytic;
        analytic.push_back(ground_state(params, space).E0);
        for (int n = 0; n < space.fock_cutoff; ++n) {
            const double c = n + 1.0;
            const double split =
                std::sqrt(params.g * params.g * c + 0.25 * params.delta() * params.delta());
            analytic.push_back(params.omega * c - split);
            analytic.push_back(params.omega * c + split);
        }
        std::sort(analytic.begin(), analytic.end());

        std::vector<double> oracle;
        for (const auto& row : numeric_spectrum(H, block_decompose(space)))
            oracle.push_back(row.energy);
        std::sort(oracle.begin(), oracle.end());

        REQUIRE(analytic.size() == oracle.size());
        for (std::size_t i = 0; i < oracle.size(); ++i)
            CHECK(close_rel(analytic[i], oracle[i], 1e-12));
    }
}

TEST_CASE("upper dressed energies increase with n") {
    jcm_test::ParamDraw draw(31);
    for (int trial = 0; trial < 40; ++trial) {
        const JcmParams params = draw.next();
        double previous = -1e300;
        for (int n = 0; n < 8; ++n) {
            const double c = n + 1.0;
            const double ep = params.omega * c
                              + std::sqrt(params.g * params.g * c
                                          + 0.25 * params.delta() * params.delta());
            CHECK(ep > previous);
            previous = ep;
        }
    }
}

TEST_CASE("ladder action on the dressed states") {
    const JcmParams params = pstar();
    const SpaceSpec space = make_space(12);
    const Operator H = build_hamiltonian(params, space);
    const ShiftPair pair = build_shift_pair(H, params, 1.0);

    const LadderAction action = verify_ladder_action(1, params, space, pair);
    CHECK(action.overlap_plus >= 1.0 - 1e-10);
    // chi_1^2 = 3.2768 at beta = 1, from the block evaluation of b^dag b
    CHECK(close_rel(action.chi_n * action.chi_n, 3.2768, 1e-12));
    CHECK(close_rel(action.chi_n, 1.28 * std::sqrt(2.0), 1e-12));

    const double bd_scale = project_out_guard(pair.b_dag.m, space).norm();
    for (int n = 0; n < space.fock_cutoff; ++n) {
        const LadderAction a = verify_ladder_action(n, params, space, pair);
        CHECK(a.annihilation_residual <= 1e-10);
        CHECK(a.overlap_plus >= 1.0 - 1e-10);

        // b^dag annihilates the upper dressed state: its would-be image
        // energy lambda4(E+) is no eigenvalue of the block
        const DressedPair dp = excited_pair(n, params, space);
        CHECK((pair.b_dag.m * dp.psi_plus.v).norm() <= 1e-10 * bd_scale);
    }

    CHECK_THROWS_AS(verify_ladder_action(12, params, space, pair), std::invalid_argument);
}

TEST_CASE("chi scales linearly with beta") {
    const JcmParams params = pstar();
    const SpaceSpec space = make_space(8);
    const Operator H = build_hamiltonian(params, space);
    const ShiftPair one = build_shift_pair(H, params, 1.0);
    const ShiftPair three = build_shift_pair(H, params, 3.0);
    const LadderAction a1 = verify_ladder_action(2, params, space, one);
    const LadderAction a3 = verify_ladder_action(2, params, space, three);
    CHECK(close_rel(a3.chi_n, 3.0 * a1.chi_n, 1e-12));
}
