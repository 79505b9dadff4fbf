// acceptance_main.cpp — end-to-end acceptance suite. One line per
// criterion; exits nonzero if any gated criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "jcm/algebra.hpp"
#include "jcm/bell.hpp"
#include "jcm/errors.hpp"
#include "jcm/spectrum.hpp"

#ifndef JCM_CLI_PATH
#error "JCM_CLI_PATH must point at the built binary"
#endif
#ifndef JCM_GOLDEN_DIR
#error "JCM_GOLDEN_DIR must point at tests/golden"
#endif

using namespace jcm;

namespace {

int g_failures = 0;

void criterion(const std::string& id, bool pass, const std::string& detail) {
    std::printf("[%s] %-4s %s\n", pass ? "PASS" : "FAIL", id.c_str(), detail.c_str());
    if (!pass)
        ++g_failures;
}

void info(const std::string& id, const std::string& detail) {
    std::printf("[INFO] %-4s %s\n", id.c_str(), detail.c_str());
}

JcmParams pstar() { return make_params(1.0, 0.2, 0.4); }

struct Draw {
    std::mt19937_64 rng{20260809};
    JcmParams next() {
        std::uniform_real_distribution<double> omega(0.5, 2.0);
        std::uniform_real_distribution<double> gee(-1.0, 1.0);
        std::uniform_real_distribution<double> del(-1.0, 1.0);
        return make_params(omega(rng), gee(rng), del(rng));
    }
};

std::string fmt(double x) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.3e", x);
    return buf;
}

struct CliResult {
    int exit_code = -1;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(JCM_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    CliResult result;
    if (!pipe)
        return result;
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0)
        result.out.append(buf, got);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

// ---- criteria ------------------------------------------------------------

void c1_conservation() {
    const auto start = std::chrono::steady_clock::now();
    const SpaceSpec space = make_space(12);
    const Operator H = build_hamiltonian(pstar(), space);
    const Operator C = build_charge(space);
    const double residual = (H.m * C.m - C.m * H.m).norm();
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    criterion("C1", residual == 0.0 && seconds < 1.0,
              "conservation ||[H,C]||_F = " + fmt(residual) + " (exact zero required), "
                  + fmt(seconds) + " s");
}

void c2_spectrum_equivalence() {
    const auto start = std::chrono::steady_clock::now();
    Draw draw;
    const SpaceSpec space = make_space(10);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const JcmParams params = draw.next();
        const Operator H = build_hamiltonian(params, space);

        std::vector<double> analytic;
        analytic.push_back(ground_state(params, space).E0);
        for (int n = 0; n < space.fock_cutoff; ++n) {
            const double c = n + 1.0;
            const double split = std::sqrt(params.g * params.g * c
                                           + 0.25 * params.delta() * params.delta());
            analytic.push_back(params.omega * c - split);
            analytic.push_back(params.omega * c + split);
        }

        std::vector<double> oracle;
        for (const auto& row : numeric_spectrum(H, block_decompose(space)))
            oracle.push_back(row.energy);

        std::vector<double> a_sorted = analytic;
        std::sort(a_sorted.begin(), a_sorted.end());
        std::sort(oracle.begin(), oracle.end());
        for (std::size_t i = 0; i < oracle.size(); ++i)
            worst = std::max(worst, std::abs(a_sorted[i] - oracle[i])
                                        / std::max({1.0, std::abs(a_sorted[i]),
                                                    std::abs(oracle[i])}));

        analytic.push_back(H.m(space.guard_index(), space.guard_index()).real());
        std::sort(analytic.begin(), analytic.end());
        const EigResult dense = hermitian_eig(H);
        for (std::size_t i = 0; i < analytic.size(); ++i)
            worst = std::max(worst,
                             std::abs(analytic[i] - dense.eigenvalues[static_cast<int>(i)])
                                 / std::max({1.0, std::abs(analytic[i]),
                                             std::abs(dense.eigenvalues[static_cast<int>(i)])}));
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    criterion("C2", worst <= 1e-12 && seconds < 10.0,
              "spectrum equivalence over 100 draws, worst rel diff " + fmt(worst)
                  + " (tol 1e-12), " + fmt(seconds) + " s");
}

void c3_c4_ladder(const Operator& H, const ShiftPair& unit_pair) {
    const ResidualReport report = ladder_residuals(H, unit_pair);
    const double r1 = *report.find("ladder_r1_commutator_b")->residual;
    const double r2 = *report.find("ladder_r2_commutator_b_dag")->residual;
    criterion("C3", r1 <= 1e-10 && r2 <= 1e-10,
              "ladder relations r1 = " + fmt(r1) + ", r2 = " + fmt(r2) + " (tol 1e-10)");

    double worst_r3 = 0.0;
    for (double beta : {1.0, 2.0}) {
        const ShiftPair pair = beta == 1.0 ? unit_pair
                                           : build_shift_pair(H, pstar(), beta);
        worst_r3 = std::max(worst_r3,
                            *ladder_residuals(H, pair).find("ladder_r3_adjointness")->residual);
    }
    criterion("C4", worst_r3 <= 1e-10,
              "adjointness with alpha = beta (1 + 2g^2/T), beta in {1,2}: r3 = "
                  + fmt(worst_r3) + " (tol 1e-10)");
}

void c5_eigenstate_action(const SpaceSpec& space, const ShiftPair& pair) {
    const double b_scale = project_out_guard(pair.b.m, space).norm();
    double worst_annihilation = 0.0;
    double worst_overlap_defect = 0.0;
    for (int n = 0; n <= 10; ++n) {
        const DressedPair dp = excited_pair(n, pstar(), space);
        worst_annihilation =
            std::max(worst_annihilation, (pair.b.m * dp.psi_minus.v).norm() / b_scale);
        const Vector raised = pair.b_dag.m * dp.psi_minus.v;
        worst_overlap_defect =
            std::max(worst_overlap_defect,
                     1.0 - std::abs(dp.psi_plus.v.dot(raised)) / raised.norm());
    }
    criterion("C5", worst_annihilation <= 1e-10 && worst_overlap_defect <= 1e-10,
              "eigenstate action for n <= 10: ||b psi-||/||b||_F = "
                  + fmt(worst_annihilation) + ", 1 - overlap = "
                  + fmt(worst_overlap_defect) + " (tol 1e-10)");
}

void c6_energy_mapping() {
    Draw draw;
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const JcmParams params = draw.next();
        const SEntryFunctions fn{params, 1.0};
        for (int n = 0; n <= 10; ++n) {
            const double c = n + 1.0;
            const double split = std::sqrt(params.g * params.g * c
                                           + 0.25 * params.delta() * params.delta());
            const double em = params.omega * c - split;
            const double ep = params.omega * c + split;
            worst = std::max(worst, std::abs(fn.lambda4(em) - ep)
                                        / std::max({1.0, std::abs(em), std::abs(ep)}));
            worst = std::max(worst, std::abs(fn.lambda3(ep) - em)
                                        / std::max({1.0, std::abs(em), std::abs(ep)}));
        }
    }
    const SEntryFunctions ref{pstar(), 1.0};
    const double instance = std::abs(ref.lambda4(1.7) - 2.3);
    criterion("C6", worst <= 1e-10 && instance <= 1e-10 * 2.3,
              "energy mapping lambda4(E-) = E+, lambda3(E+) = E-: worst " + fmt(worst)
                  + " over 100 draws, lambda4(1.7) - 2.3 = " + fmt(instance));
}

void c7_algebra(const Operator& H, const ShiftPair& pair) {
    double worst_comm = 0.0;
    double worst_gap = 0.0;
    double j0_low = 0.0, j0_high = 0.0;
    ResidualReport last_report;
    for (double nu : {0.0, 1.5}) {
        const AlgebraGenerators gens = build_generators(H, pair, pstar(), nu);
        const ResidualReport report = algebra_residuals(gens, H, pair, pstar());
        worst_comm = std::max({worst_comm,
                               *report.find("algebra_j0_b_commutator")->residual,
                               *report.find("algebra_j0_bdag_commutator")->residual});
        worst_gap = std::max(worst_gap, *report.find("algebra_j0_block_gap")->residual);
        if (nu == 0.0) {
            j0_low = gens.blocks[2].j0[0];
            j0_high = gens.blocks[2].j0[1];
            last_report = report;
        }
    }
    const bool instance_ok =
        std::abs(j0_low - 7.0) <= 1e-10 * 7.0 && std::abs(j0_high - 8.0) <= 1e-10 * 8.0;
    criterion("C7", worst_comm <= 1e-10 && worst_gap <= 1e-10 && instance_ok,
              "[J0,b] = -b, [J0,b_dag] = b_dag at nu in {0, 1.5}: worst " + fmt(worst_comm)
                  + "; block gap defect " + fmt(worst_gap) + "; c=2 J0 = ("
                  + std::to_string(j0_low) + ", " + std::to_string(j0_high) + ")");

    // closed-form comparisons are recorded, never gated
    for (const char* id : {"algebra_a3_btb_closed_form", "algebra_a4_bbt_closed_form",
                           "algebra_a5_bracket_closed_form"}) {
        const CheckEntry* e = last_report.find(id);
        info("C7", std::string(id) + " residual " + fmt(*e->residual)
                       + (e->residual <= e->tolerance ? " (agrees with the numeric matrices)"
                                                      : " (disagrees; recorded only)"));
    }
}

void c8_bell(const SpaceSpec& space) {
    double worst = 0.0;
    double worst_vs_max = 0.0;
    for (int n = 0; n <= 10; ++n) {
        const DressedPair dp = excited_pair(n, pstar(), space);
        const double s2t = std::sin(2.0 * dp.theta);
        const double closed = 2.0 * std::sqrt(1.0 + s2t * s2t);
        const double value = chsh_expectation(dp.psi_minus, optimal_settings(dp.theta), n);
        worst = std::max(worst, std::abs(value - closed));
        worst_vs_max = std::max(worst_vs_max, std::abs(value - chsh_max(dp.psi_minus, n)));
    }

    const DressedPair ref = excited_pair(1, pstar(), space);
    const double ref_value = chsh_expectation(ref.psi_minus, optimal_settings(ref.theta), 1);
    const bool instance_ok =
        std::abs(ref_value - 2.0 * std::sqrt(17.0) / 3.0) <= 1e-12 * 3.0;

    const JcmParams resonant = make_params(1.0, 0.2, 0.5);
    const DressedPair res = excited_pair(2, resonant, space);
    const double res_value = chsh_expectation(res.psi_minus, optimal_settings(res.theta), 2);
    const bool resonance_ok = std::abs(res_value - 2.0 * std::sqrt(2.0)) <= 1e-12 * 3.0;

    bool limits_ok = true;
    for (double Delta : {0.25, 0.75}) { // g -> 0 forces theta to 0 or pi/2
        const auto scan = bell_scan(0, 3, make_params(1.0, 0.0, Delta), space);
        for (const BellResult& r : scan)
            limits_ok = limits_ok && r.chsh_value <= 2.0 + 1e-12
                        && r.chsh_max <= 2.0 + 1e-12 && !r.violated;
    }

    criterion("C8", worst <= 1e-12 && worst_vs_max <= 1e-12 && instance_ok
                        && resonance_ok && limits_ok,
              "CHSH: |value - closed form| = " + fmt(worst) + ", |value - max| = "
                  + fmt(worst_vs_max) + ", n=1 value " + fmt(ref_value)
                  + ", resonance " + fmt(res_value) + ", g = 0 limits bounded by 2");
}

void c9_ground_state() {
    Draw draw;
    const SpaceSpec space = make_space(10);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const JcmParams params = draw.next();
        const Operator H = build_hamiltonian(params, space);
        const GroundState gs = ground_state(params, space);
        const auto rows = numeric_spectrum(H, block_decompose(space));
        worst = std::max(worst, std::abs(gs.E0 - rows[0].energy)
                                    / std::max({1.0, std::abs(gs.E0)}));
    }

    const CliResult verify = run_cli("verify --omega 1 --g 0.2 --Delta 0.4");
    const bool note_present =
        verify.out.find("ground_energy_note") != std::string::npos
        && verify.out.find("delta/2 + omega") != std::string::npos;

    criterion("C9", worst <= 1e-13 && note_present && verify.exit_code == 0,
              "ground energy vs oracle over 100 draws: worst " + fmt(worst)
                  + " (tol 1e-13); informational discrepancy note "
                  + (note_present ? "present" : "MISSING"));
}

void c10_cli_determinism() {
    const std::string pstar_args = "--omega 1 --g 0.2 --Delta 0.4";
    const CliResult v1 = run_cli("verify " + pstar_args + " --fock-cutoff 12");
    const CliResult v2 = run_cli("verify " + pstar_args + " --fock-cutoff 12");
    const CliResult s1 = run_cli("spectrum " + pstar_args + " --n-max 8 --format csv");
    const CliResult s2 = run_cli("spectrum " + pstar_args + " --n-max 8 --format csv");

    std::ifstream golden_in(std::string(JCM_GOLDEN_DIR) + "/spectrum_pstar.csv",
                            std::ios::binary);
    std::stringstream golden;
    golden << golden_in.rdbuf();

    const bool deterministic = v1.out == v2.out && s1.out == s2.out;
    const bool golden_ok = s1.out == golden.str() && !s1.out.empty();
    criterion("C10", deterministic && golden_ok && v1.exit_code == 0,
              std::string("byte-identical verify and spectrum reports: ")
                  + (deterministic ? "yes" : "NO") + "; golden spectrum CSV: "
                  + (golden_ok ? "match" : "MISMATCH"));
}

} // namespace

int main() {
    std::printf("acceptance suite: reference point omega = 1, g = 0.2, Delta = 0.4\n");

    c1_conservation();
    c2_spectrum_equivalence();

    const SpaceSpec space = make_space(12);
    const Operator H = build_hamiltonian(pstar(), space);
    const ShiftPair pair = build_shift_pair(H, pstar(), 1.0);

    c3_c4_ladder(H, pair);
    c5_eigenstate_action(space, pair);
    c6_energy_mapping();
    c7_algebra(H, pair);
    c8_bell(space);
    c9_ground_state();
    c10_cli_determinism();

    if (g_failures == 0) {
        std::printf("all acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d acceptance criteria FAILED\n", g_failures);
    return 1;
}
