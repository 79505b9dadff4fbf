#include "jcm/bell.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "jcm/errors.hpp"

namespace jcm {

namespace {

constexpr Complex kI{0.0, 1.0};

// theta in {0, pi/2} up to rounding of sin(2 theta)
bool settings_degenerate(double sin_2theta) {
    return std::abs(sin_2theta) <= 4.0 * std::numeric_limits<double>::epsilon();
}

Matrix atom_pauli(int axis, const SpaceSpec& space) {
    Matrix s = Matrix::Zero(2, 2);
    switch (axis) {
    case 0: s(0, 1) = 1.0; s(1, 0) = 1.0; break;
    case 1: s(0, 1) = -kI; s(1, 0) = kI; break;
    default: s(0, 0) = 1.0; s(1, 1) = -1.0; break;
    }
    return kron(s, Matrix::Identity(space.fock_dim(), space.fock_dim()));
}

Matrix dot_triple(const PseudoSpinTriple& t, const Eigen::Vector3d& v) {
    return v[0] * t.sx.m + v[1] * t.sy.m + v[2] * t.sz.m;
}

Matrix dot_atom(const Eigen::Vector3d& v, const SpaceSpec& space) {
    return v[0] * atom_pauli(0, space) + v[1] * atom_pauli(1, space)
           + v[2] * atom_pauli(2, space);
}

} // namespace

PseudoSpinTriple pseudo_spin_pair(int n, const SpaceSpec& space) {
    if (n < 0 || n + 1 > space.fock_cutoff)
        throw std::invalid_argument("pseudo_spin_pair: need 0 <= n and n+1 <= N");

    const int nf = space.fock_dim();
    Matrix fx = Matrix::Zero(nf, nf);
    Matrix fy = Matrix::Zero(nf, nf);
    Matrix fz = Matrix::Zero(nf, nf);
    fx(n, n + 1) = 1.0;
    fx(n + 1, n) = 1.0;
    fy(n + 1, n) = kI;
    fy(n, n + 1) = -kI;
    fz(n, n) = 1.0;
    fz(n + 1, n + 1) = -1.0;

    const Matrix id2 = Matrix::Identity(2, 2);
    PseudoSpinTriple t;
    t.pair_n = n;
    t.sx = Operator(space, kron(id2, fx));
    t.sy = Operator(space, kron(id2, fy));
    t.sz = Operator(space, kron(id2, fz));
    return t;
}

MeasurementSettings optimal_settings(double theta) {
    const double s2t = std::sin(2.0 * theta);
    if (settings_degenerate(s2t)) {
        std::ostringstream msg;
        msg << "optimal_settings: sin(2 theta) = 0 at theta = " << theta
            << " (product state, settings undefined)";
        throw domain_error(msg.str());
    }
    const double tstar = std::numbers::pi / 2.0 + std::atan(1.0 / s2t);

    MeasurementSettings s;
    s.a_vec << 0.0, 0.0, -1.0;
    s.a_prime << 1.0, 0.0, 0.0;
    s.b_vec << -std::sin(tstar), 0.0, std::cos(tstar);
    s.b_prime << std::sin(tstar), 0.0, std::cos(tstar);
    return s;
}

double chsh_expectation(const StateVector& state, const MeasurementSettings& settings,
                        int n) {
    const SpaceSpec& space = state.space;
    const PseudoSpinTriple t = pseudo_spin_pair(n, space);

    const Matrix A = dot_atom(settings.a_vec, space);
    const Matrix Ap = dot_atom(settings.a_prime, space);
    const Matrix B = dot_triple(t, settings.b_vec);
    const Matrix Bp = dot_triple(t, settings.b_prime);

    const Matrix bell = A * B + A * Bp + Ap * B - Ap * Bp;
    const Complex value = state.v.dot(bell * state.v);
    if (std::abs(value.imag()) > 1e-12 * std::max(1.0, std::abs(value.real())))
        throw std::runtime_error("chsh_expectation: non-real expectation value");
    return value.real();
}

Eigen::Matrix3d correlation_matrix(const StateVector& state, int n) {
    const SpaceSpec& space = state.space;
    const PseudoSpinTriple t = pseudo_spin_pair(n, space);
    const Matrix* fock[3] = {&t.sx.m, &t.sy.m, &t.sz.m};

    Eigen::Matrix3d M;
    for (int i = 0; i < 3; ++i) {
        const Matrix ai = atom_pauli(i, space);
        for (int j = 0; j < 3; ++j)
            M(i, j) = state.v.dot(ai * (*fock[j]) * state.v).real();
    }
    return M;
}

double chsh_max(const StateVector& state, int n) {
    const Eigen::Matrix3d M = correlation_matrix(state, n);
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(M);
    const auto& s = svd.singularValues();
    return 2.0 * std::sqrt(s[0] * s[0] + s[1] * s[1]);
}

std::vector<BellResult> bell_scan(int n_min, int n_max, const JcmParams& params,
                                  const SpaceSpec& space) {
    if (n_min > n_max)
        throw std::invalid_argument("bell_scan: empty range");
    if (n_min < 0 || n_max > space.fock_cutoff - 1)
        throw std::invalid_argument("bell_scan: range outside [0, N-1]");

    std::vector<BellResult> results;
    results.reserve(n_max - n_min + 1);

    for (int n = n_min; n <= n_max; ++n) {
        const DressedPair pair = excited_pair(n, params, space);
        BellResult r;
        r.n = n;
        r.theta = pair.theta;
        r.chsh_max = chsh_max(pair.psi_minus, n);

        const double s2t = std::sin(2.0 * pair.theta);
        if (settings_degenerate(s2t)) {
            r.chsh_value = 2.0; // continuous limit of 2 sqrt(1 + sin^2 2 theta)
        } else {
            MeasurementSettings settings = optimal_settings(pair.theta);
            if (params.g < 0.0)
                std::swap(settings.b_vec, settings.b_prime);
            r.chsh_value = chsh_expectation(pair.psi_minus, settings, n);
        }
        r.violated = r.chsh_value > 2.0 + 1e-12;
        results.push_back(r);
    }
    return results;
}

} // namespace jcm
