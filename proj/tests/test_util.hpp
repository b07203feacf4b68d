#pragma once

#include "sdr/rng.hpp"
#include "sdr/spectral.hpp"

#include <cmath>
#include <cstdint>

namespace sdr::test {

inline Matrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
    RandomStream rng(seed, 99);
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.normal();
    return m;
}

inline SymMatrix random_symmetric(Eigen::Index q, std::uint64_t seed) {
    const Matrix a = random_matrix(q, q, seed);
    return SymMatrix(a + a.transpose());
}

// Orthogonal matrix from the QR factorization of a Gaussian matrix.
inline Matrix random_orthogonal(Eigen::Index q, std::uint64_t seed) {
    const Matrix a = random_matrix(q, q, seed);
    Eigen::HouseholderQR<Matrix> qr(a);
    return qr.householderQ() * Matrix::Identity(q, q);
}

// Well-conditioned SPD matrix with a non-degenerate spectrum.
inline SymMatrix random_spd(Eigen::Index q, std::uint64_t seed) {
    const Matrix qm = random_orthogonal(q, seed);
    Vector d(q);
    for (Eigen::Index i = 0; i < q; ++i) d(i) = 0.5 + 1.5 * double(i + 1) / double(q);
    return SymMatrix(qm * d.asDiagonal() * qm.transpose());
}

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace sdr::test
