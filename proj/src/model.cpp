#include "jcm/model.hpp"

#include <cmath>
#include <sstream>

#include "jcm/errors.hpp"

namespace jcm {

JcmParams make_params(double omega, double g, double Delta) {
    if (!(omega > 0.0))
        throw std::invalid_argument("omega must be > 0");
    if (!std::isfinite(omega) || !std::isfinite(g) || !std::isfinite(Delta))
        throw std::invalid_argument("parameters must be finite");
    return JcmParams{omega, g, Delta};
}

JcmParams make_params_delta(double omega, double g, double delta) {
    return make_params(omega, g, 0.5 * (omega - delta));
}

Operator build_hamiltonian(const JcmParams& params, const SpaceSpec& space) {
    const int nf = space.fock_dim();
    Matrix H = Matrix::Zero(space.dim(), space.dim());

    for (int n = 0; n < nf; ++n) {
        const double number_term = params.omega * (n + 0.5);
        H(space.index_excited(n), space.index_excited(n)) = number_term + params.Delta;
        H(space.index_ground(n), space.index_ground(n)) = number_term - params.Delta;
    }
    // g (sigma^+ a + sigma^- a^dag): couples |g,n> <-> |e,n-1>
    for (int n = 1; n < nf; ++n) {
        const double coupling = params.g * std::sqrt(static_cast<double>(n));
        H(space.index_excited(n - 1), space.index_ground(n)) = coupling;
        H(space.index_ground(n), space.index_excited(n - 1)) = coupling;
    }
    return Operator(space, std::move(H));
}

Operator build_charge(const SpaceSpec& space) {
    const int nf = space.fock_dim();
    Matrix C = Matrix::Zero(space.dim(), space.dim());
    for (int n = 0; n < nf; ++n) {
        C(space.index_excited(n), space.index_excited(n)) = n + 0.5;
        C(space.index_ground(n), space.index_ground(n)) = n - 0.5;
    }
    return Operator(space, std::move(C));
}

std::vector<ChargeBlock> block_decompose(const SpaceSpec& space) {
    std::vector<ChargeBlock> blocks;
    blocks.reserve(space.fock_cutoff + 1);
    blocks.push_back(ChargeBlock{0, {space.index_ground(0)}});
    for (int c = 1; c <= space.fock_cutoff; ++c)
        blocks.push_back(ChargeBlock{c, {space.index_ground(c), space.index_excited(c - 1)}});
    return blocks;
}

std::vector<SpectrumRow> numeric_spectrum(const Operator& H,
                                          const std::vector<ChargeBlock>& blocks) {
    const SpaceSpec& space = H.space;
    std::vector<SpectrumRow> rows;
    rows.reserve(2 * blocks.size());

    for (const ChargeBlock& block : blocks) {
        if (block.basis_indices.size() == 1) {
            const int i = block.basis_indices[0];
            Vector state = Vector::Zero(space.dim());
            state[i] = 1.0;
            rows.push_back(SpectrumRow{H.m(i, i).real(), StateVector(space, std::move(state)), block.c});
            continue;
        }

        const int i = block.basis_indices[0];
        const int j = block.basis_indices[1];
        const detail::SmallEig eig =
            detail::hermitian_eig_2x2(H.m(i, i).real(), H.m(i, j), H.m(j, j).real());

        for (int k = 0; k < 2; ++k) {
            Vector state = Vector::Zero(space.dim());
            state[i] = eig.eigenvectors(0, k);
            state[j] = eig.eigenvectors(1, k);
            rows.push_back(SpectrumRow{eig.eigenvalues[k], StateVector(space, std::move(state)), block.c});
        }
    }
    return rows;
}

Operator charge_block_function(const Operator& H,
                               const std::vector<ChargeBlock>& blocks,
                               const std::function<double(double)>& f) {
    const SpaceSpec& space = H.space;
    Matrix R = Matrix::Zero(space.dim(), space.dim());

    auto checked = [](double value, double at) {
        if (!std::isfinite(value)) {
            std::ostringstream msg;
            msg << "charge_block_function: f is undefined at eigenvalue " << at;
            throw domain_error(msg.str());
        }
        return value;
    };

    for (const ChargeBlock& block : blocks) {
        if (block.basis_indices.size() == 1) {
            const int i = block.basis_indices[0];
            const double e = H.m(i, i).real();
            R(i, i) = checked(f(e), e);
            continue;
        }
        const int i = block.basis_indices[0];
        const int j = block.basis_indices[1];
        const detail::SmallEig eig =
            detail::hermitian_eig_2x2(H.m(i, i).real(), H.m(i, j), H.m(j, j).real());

        Eigen::Matrix2cd fm = Eigen::Matrix2cd::Zero();
        for (int k = 0; k < 2; ++k) {
            const double fe = checked(f(eig.eigenvalues[k]), eig.eigenvalues[k]);
            fm += fe * (eig.eigenvectors.col(k) * eig.eigenvectors.col(k).adjoint());
        }
        R(i, i) = fm(0, 0);
        R(i, j) = fm(0, 1);
        R(j, i) = fm(1, 0);
        R(j, j) = fm(1, 1);
    }

    const int gd = space.guard_index();
    const double fg = f(H.m(gd, gd).real());
    R(gd, gd) = std::isfinite(fg) ? fg : 0.0;
    return Operator(space, std::move(R));
}

} // namespace jcm
