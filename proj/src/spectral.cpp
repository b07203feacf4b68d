#include "sdr/spectral.hpp"

#include "sdr/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sdr {

namespace {

void require_points(const DataSet& points) {
    if (points.rows() == 0) throw DataError("empty sample");
    if (!points.allFinite()) throw DataError("non-finite sample");
}

Matrix symmetrize(const Matrix& m) {
    if (m.rows() != m.cols()) throw InvalidArgument("matrix is not square");
    Matrix out = m;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = j + 1; i < m.rows(); ++i) {
            const double v = 0.5 * (m(i, j) + m(j, i));
            out(i, j) = v;
            out(j, i) = v;
        }
    }
    return out;
}

// C^T C / denom, computed on the lower triangle and mirrored.
SymMatrix gram(const Matrix& centered, double denom) {
    const Eigen::Index q = centered.cols();
    Matrix g = Matrix::Zero(q, q);
    g.selfadjointView<Eigen::Lower>().rankUpdate(centered.transpose(), 1.0 / denom);
    g.triangularView<Eigen::StrictlyUpper>() = g.transpose();
    return SymMatrix(g);
}

}  // namespace

SymMatrix::SymMatrix(const Matrix& m) : m_(symmetrize(m)) {}

SymMatrix SymMatrix::identity(Eigen::Index q) { return SymMatrix(Matrix::Identity(q, q)); }

SymMatrix SymMatrix::zero(Eigen::Index q) { return SymMatrix(Matrix::Zero(q, q)); }

SymMatrix SymMatrix::diagonal(const Vector& d) { return SymMatrix(Matrix(d.asDiagonal())); }

SymMatrix SymMatrix::scaled(double c) const { return SymMatrix(m_ * c); }

SymMatrix SymMatrix::congruence(const Matrix& basis) const {
    return SymMatrix(basis.transpose() * m_ * basis);
}

Vector sample_mean(const DataSet& points) {
    require_points(points);
    return points.colwise().mean().transpose();
}

SymMatrix sample_covariance(const DataSet& points, bool unbiased) {
    require_points(points);
    const Vector mean = sample_mean(points);
    const Eigen::Index m = points.rows();
    if (unbiased && m == 1) return SymMatrix::zero(points.cols());
    const Matrix centered = points.rowwise() - mean.transpose();
    return gram(centered, unbiased ? double(m - 1) : double(m));
}

Vector subset_mean(const DataSet& points, const std::vector<Eigen::Index>& rows) {
    if (rows.empty()) throw DataError("empty sample");
    Vector sum = Vector::Zero(points.cols());
    for (Eigen::Index r : rows) sum += points.row(r).transpose();
    return sum / double(rows.size());
}

SymMatrix subset_covariance(const DataSet& points, const std::vector<Eigen::Index>& rows,
                            const Vector& mean, bool unbiased) {
    const auto m = static_cast<Eigen::Index>(rows.size());
    if (m == 0) throw DataError("empty sample");
    if (unbiased && m == 1) return SymMatrix::zero(points.cols());
    Matrix centered(m, points.cols());
    for (Eigen::Index k = 0; k < m; ++k) centered.row(k) = points.row(rows[k]) - mean.transpose();
    return gram(centered, unbiased ? double(m - 1) : double(m));
}

void orient(Eigen::Ref<Vector> v) {
    if (v.size() == 0) return;
    const double top = v.cwiseAbs().maxCoeff();
    // Entries within a relative 1e-10 of the maximum count as tied; the
    // lowest index among them decides the sign.
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) >= top * (1.0 - 1e-10)) {
            if (v(i) < 0) v = -v;
            return;
        }
    }
}

EigenSystem sym_eigendecomposition(const SymMatrix& m) {
    if (!m.all_finite()) throw DataError("non-finite matrix");
    const Eigen::Index q = m.dim();
    if (q == 0) return {};

    Eigen::SelfAdjointEigenSolver<Matrix> solver(m.matrix());
    if (solver.info() != Eigen::Success) throw DataError("eigendecomposition did not converge");

    // The solver already sorts ascending; a stable sort pins the tie order
    // to the solver's index order.
    std::vector<Eigen::Index> order(static_cast<std::size_t>(q));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    const Vector& raw = solver.eigenvalues();
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return raw(a) < raw(b); });

    EigenSystem out;
    out.values.resize(q);
    out.vectors.resize(q, q);
    for (Eigen::Index j = 0; j < q; ++j) {
        out.values(j) = raw(order[j]);
        out.vectors.col(j) = solver.eigenvectors().col(order[j]);
        orient(out.vectors.col(j));
    }
    return out;
}

Matrix bottom_k_eigenvectors(const SymMatrix& m, Eigen::Index k) {
    if (k < 1 || k > m.dim()) throw InvalidArgument("k must lie in [1, dim]");
    const EigenSystem es = sym_eigendecomposition(m);
    return es.vectors.leftCols(k).transpose();
}

double operator_norm(const SymMatrix& m) {
    if (!m.all_finite()) throw DataError("non-finite matrix");
    if (m.dim() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m.matrix(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw DataError("eigendecomposition did not converge");
    const Vector& v = solver.eigenvalues();
    return std::max(std::abs(v(0)), std::abs(v(v.size() - 1)));
}

double effective_rank(const SymMatrix& s) {
    const double op = operator_norm(s);
    if (op == 0.0) throw DataError("zero covariance");
    return s.matrix().trace() / op;
}

}  // namespace sdr
