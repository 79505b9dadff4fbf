// algebra.hpp — Deformed su-type generators J0, J+- built from the shift
// pair, and numerical adjudication of their closed-form structure relations

#pragma once

#include "jcm/ladder.hpp"

namespace jcm {

// Per-block scalar data entering xi^2 and the closed-form comparisons.
// Within block c both J0 and the charge reduce to scalars, which is what
// makes the expressions well defined.
struct BlockAlgebraData {
    int c = 0;
    std::vector<double> j0;     // J0 eigenvalues, ascending with energy
    std::vector<double> xi_sq;  // xi^2 at each j0
    bool admissible = false;    // J+- built on this block
};

struct AlgebraGenerators {
    double nu = 0.0;
    Operator J0;      // T(H) / (2 g^2) + nu
    Operator Jplus;   // xi(J0) b^dag
    Operator Jminus;  // b xi(J0)
    Operator f_of_H;  // (T(H) - g^2) / omega, the commutator shift function
    std::vector<BlockAlgebraData> blocks;
    std::vector<int> skipped_blocks; // xi^2 not finite and positive there
};

// Scalar closed forms from the structure-relation display, evaluated with
// the block's charge value C = c - 1/2 substituted.
double xi_sq_closed(double j0, double nu, const JcmParams& params);
double btb_closed(double j0, double charge, double nu, const JcmParams& params);
double bbt_closed(double j0, double charge, double nu, const JcmParams& params);
double bracket_closed(double j0, double charge, double nu, const JcmParams& params);

// Requires g != 0. J+- are assembled only on blocks where xi^2 is finite
// and positive; the ground block always fails (its j0 sits exactly on the
// xi^2 pole) and is reported as skipped, as is the guard.
AlgebraGenerators build_generators(const Operator& H, const ShiftPair& pair,
                                   const JcmParams& params, double nu);

// a1: ||[J0,J-] + J-|| / ||J-||        (gated, 1e-10)
// a2: ||[J0,J+] - J+|| / ||J+||        (gated, 1e-10)
// a3: b^dag b vs the closed form f(J0, C, nu), per admissible block
// a4: b b^dag vs g(J0, C, nu), per admissible block
// a5: [J+,J-] vs its closed-form display, per admissible block
// a3-a5 are informational: the numeric matrices are the ground truth and
// the report records how well the printed forms match them.
ResidualReport algebra_residuals(const AlgebraGenerators& gens, const Operator& H,
                                 const ShiftPair& pair, const JcmParams& params);

} // namespace jcm
