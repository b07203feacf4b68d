#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace sdr {

// Observations are stored row-wise: an n x q matrix holds n points of R^q.
using DataSet = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Dense symmetric matrix. The constructor symmetrizes its argument, so
// entries(i, j) == entries(j, i) holds bit-for-bit afterwards.
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(const Matrix& m);

    static SymMatrix identity(Eigen::Index q);
    static SymMatrix zero(Eigen::Index q);
    static SymMatrix diagonal(const Vector& d);

    Eigen::Index dim() const noexcept { return m_.rows(); }
    const Matrix& matrix() const noexcept { return m_; }
    double operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

    bool all_finite() const { return m_.allFinite(); }

    SymMatrix scaled(double c) const;
    // B^T M B for a q x k basis B.
    SymMatrix congruence(const Matrix& basis) const;

private:
    Matrix m_;
};

// Eigenpairs of a symmetric matrix. values ascend; column j of vectors
// pairs with values[j]; in every column the entry of largest magnitude is
// positive (the first such entry when several tie).
struct EigenSystem {
    Vector values;
    Matrix vectors;
};

// All of the following throw DataError on an empty sample or non-finite
// input and InvalidArgument on out-of-range sizes.

Vector sample_mean(const DataSet& points);

// Biased (1/m) covariance unless `unbiased` is set, in which case 1/(m-1)
// is used (and a single point yields the zero matrix).
SymMatrix sample_covariance(const DataSet& points, bool unbiased = false);

// Same as sample_mean/sample_covariance restricted to the listed rows.
Vector subset_mean(const DataSet& points, const std::vector<Eigen::Index>& rows);
SymMatrix subset_covariance(const DataSet& points, const std::vector<Eigen::Index>& rows,
                            const Vector& mean, bool unbiased = false);

EigenSystem sym_eigendecomposition(const SymMatrix& m);

// k x q matrix whose rows are the eigenvectors of the k smallest eigenvalues.
Matrix bottom_k_eigenvectors(const SymMatrix& m, Eigen::Index k);

double operator_norm(const SymMatrix& m);

// Tr(S) / ||S||_op for a PSD S; DataError on the zero matrix.
double effective_rank(const SymMatrix& s);

// Applies the sign convention of EigenSystem to one vector in place.
void orient(Eigen::Ref<Vector> v);

}  // namespace sdr
