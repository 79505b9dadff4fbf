// space.hpp — Truncated qubit (x) Fock space: basis layout, operators, states

#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace jcm {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Basis layout is atom-major with the excited atom state in the upper
// spinor slot: index(e, n) = n and index(g, n) = (N+1) + n for Fock
// levels n = 0..N. The single state |e,N> sits in an incomplete
// conserved-charge block after truncation; it is tracked as the guard
// state and excluded from every residual check.
struct SpaceSpec {
    int fock_cutoff = 0; // N, max photon number retained

    int fock_dim() const { return fock_cutoff + 1; }
    int dim() const { return 2 * (fock_cutoff + 1); }

    int index_excited(int n) const { return n; }
    int index_ground(int n) const { return fock_dim() + n; }
    int guard_index() const { return index_excited(fock_cutoff); }

    bool is_excited(int idx) const { return idx < fock_dim(); }
    int fock_level(int idx) const { return is_excited(idx) ? idx : idx - fock_dim(); }

    friend bool operator==(const SpaceSpec& a, const SpaceSpec& b) {
        return a.fock_cutoff == b.fock_cutoff;
    }
};

inline SpaceSpec make_space(int fock_cutoff) {
    if (fock_cutoff < 1)
        throw std::invalid_argument("fock_cutoff must be >= 1");
    return SpaceSpec{fock_cutoff};
}

struct Operator {
    SpaceSpec space;
    Matrix m;

    Operator() = default;
    Operator(const SpaceSpec& s, Matrix mat) : space(s), m(std::move(mat)) {
        if (m.rows() != space.dim() || m.cols() != space.dim())
            throw std::invalid_argument("operator matrix does not match space dimension");
    }
};

struct StateVector {
    SpaceSpec space;
    Vector v;

    StateVector() = default;
    StateVector(const SpaceSpec& s, Vector vec) : space(s), v(std::move(vec)) {
        if (v.size() != space.dim())
            throw std::invalid_argument("state vector does not match space dimension");
    }

    double norm() const { return v.norm(); }
};

inline void require_same_space(const SpaceSpec& a, const SpaceSpec& b) {
    if (!(a == b))
        throw std::invalid_argument("operands live on different spaces");
}

} // namespace jcm
