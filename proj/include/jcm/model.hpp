// model.hpp — Jaynes-Cummings Hamiltonian, conserved charge, exact block
// decomposition and the per-block numeric spectrum oracle

#pragma once

#include <functional>
#include <vector>

#include "jcm/operators.hpp"

namespace jcm {

// omega > 0 is the mode frequency, g the coupling, 2*Delta the level
// splitting. The detuning delta = omega - 2*Delta is always derived,
// never stored, so the triple can not drift out of sync.
struct JcmParams {
    double omega = 1.0;
    double g = 0.0;
    double Delta = 0.0;

    double delta() const { return omega - 2.0 * Delta; }
};

JcmParams make_params(double omega, double g, double Delta);
JcmParams make_params_delta(double omega, double g, double delta);

// Invariant subspace of the conserved charge C = a^dag a + sigma_z/2.
// Block c = 0 holds only |g,0>; blocks 1 <= c <= N hold {|g,c>, |e,c-1>}
// in that order. The guard state |e,N> belongs to no block.
struct ChargeBlock {
    int c = 0;
    std::vector<int> basis_indices;
};

// H = omega (a^dag a + 1/2) + g (sigma^+ a + sigma^- a^dag) + Delta sigma_z.
// Real symmetric and exactly block diagonal over the charge blocks.
Operator build_hamiltonian(const JcmParams& params, const SpaceSpec& space);

// C = a^dag a + sigma_z/2, diagonal with value c - 1/2 on block c.
Operator build_charge(const SpaceSpec& space);

std::vector<ChargeBlock> block_decompose(const SpaceSpec& space);

struct SpectrumRow {
    double energy = 0.0;
    StateVector state;
    int block_c = 0;
};

// Independent oracle: diagonalizes each 1x1 / 2x2 charge block in closed
// form, never touching the dense eigensolver. Energies ascend within a
// block; rows are ordered by block.
std::vector<SpectrumRow> numeric_spectrum(const Operator& H,
                                          const std::vector<ChargeBlock>& blocks);

// f(H) assembled block by block, so the result carries exact zeros between
// different charge blocks and commutes with C at the matrix level. On the
// guard state the value is f of its diagonal entry, or 0 when f is not
// finite there; nothing downstream reads the guard entry.
Operator charge_block_function(const Operator& H,
                               const std::vector<ChargeBlock>& blocks,
                               const std::function<double(double)>& f);

} // namespace jcm
