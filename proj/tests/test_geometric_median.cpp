#include "sdr/error.hpp"
#include "sdr/geometric_median.hpp"

#include "test_util.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

using namespace sdr;

namespace {

double objective(const DataSet& x, const Vector& m) { return (x.rowwise() - m.transpose()).rowwise().norm().sum(); }

WeiszfeldConfig tight() { return {20000, 1e-13, 1e-14}; }

}  // namespace

TEST_CASE("univariate medians") {
    const std::vector<double> odd{0, 1, 2, 3, 100};
    CHECK(univariate_median(odd) == 2.0);
    const std::vector<double> even{4, 2, 1, 3};
    CHECK(univariate_median(even) == 2.0);
    CHECK(midpoint_median(even) == 2.5);
    const std::vector<double> one{7};
    CHECK(univariate_median(one) == 7.0);
    CHECK(midpoint_median(one) == 7.0);
    CHECK_THROWS_AS(univariate_median(std::vector<double>{}), DataError);
    CHECK_THROWS_AS(midpoint_median(std::vector<double>{}), DataError);
}

TEST_CASE("geometric median examples") {
    SUBCASE("single point") {
        DataSet x(1, 3);
        x << 1.5, -2, 7;
        CHECK(geometric_median(x, WeiszfeldConfig{}) == x.row(0).transpose());
    }
    SUBCASE("equilateral triangle") {
        DataSet x(3, 2);
        x << 0, 0, 1, 0, 0.5, std::sqrt(3.0) / 2;
        const WeiszfeldConfig cfg{500, 1e-10, 1e-14};
        const Vector m = geometric_median(x, cfg);
        const Vector centroid = x.colwise().mean().transpose();
        CHECK((m - centroid).norm() < 1e-8);
    }
    SUBCASE("one dimensional with a heavy tie") {
        DataSet x(4, 1);
        x << 0, 0, 0, 10;
        const WeiszfeldConfig cfg{500, 1e-8, 1e-12};
        CHECK(std::abs(geometric_median(x, cfg)(0)) < cfg.tol);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(geometric_median(DataSet(0, 2), WeiszfeldConfig{}), DataError);
        DataSet bad = DataSet::Zero(2, 2);
        bad(1, 1) = INFINITY;
        CHECK_THROWS_AS(geometric_median(bad, WeiszfeldConfig{}), DataError);
        CHECK_THROWS_AS(geometric_median(DataSet::Zero(2, 2), WeiszfeldConfig{0, 1.0, 1.0}), InvalidArgument);
        CHECK_THROWS_AS(geometric_median(DataSet::Zero(2, 2), WeiszfeldConfig{1, 0.0, 1.0}), InvalidArgument);
        CHECK_THROWS_AS(geometric_median(DataSet::Zero(2, 2), WeiszfeldConfig{1, 1.0, 0.0}), InvalidArgument);
    }
}

TEST_CASE("rough profile constants") {
    const WeiszfeldConfig r = WeiszfeldConfig::rough();
    CHECK(r.max_iter == 15);
    CHECK(r.tol == 1.0);
}

TEST_CASE("Weiszfeld objective is non-increasing") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const DataSet x = test::random_matrix(40 + Eigen::Index(seed), 1 + Eigen::Index(seed % 7), seed);
        const WeiszfeldResult res = weiszfeld(x, WeiszfeldConfig::full_accuracy(x));
        REQUIRE(res.objective.size() == std::size_t(res.iterations) + 1);
        // Up to rounding in the evaluation of the sum.
        for (std::size_t k = 1; k < res.objective.size(); ++k)
            CHECK(res.objective[k] <= res.objective[k - 1] * (1 + 1e-13));
        CHECK(res.objective.back() == doctest::Approx(objective(x, res.median)).epsilon(1e-12));
    }
}

TEST_CASE("geometric median equivariance and permutation invariance") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        CAPTURE(seed);
        const Eigen::Index q = 2 + Eigen::Index(seed % 5);
        const DataSet x = test::random_matrix(31, q, seed);
        const Vector m = geometric_median(x, tight());

        const Vector shift = test::random_matrix(q, 1, seed + 50).col(0) * 10.0;
        const DataSet shifted = x.rowwise() + shift.transpose();
        CHECK((geometric_median(shifted, tight()) - (m + shift)).norm() <= 1e-9);

        const Matrix qm = test::random_orthogonal(q, seed + 100);
        const DataSet rotated = x * qm.transpose();
        CHECK((geometric_median(rotated, tight()) - qm * m).norm() <= 1e-8);

        std::vector<Eigen::Index> perm(static_cast<std::size_t>(x.rows()));
        std::iota(perm.begin(), perm.end(), Eigen::Index{0});
        std::reverse(perm.begin(), perm.end());
        std::rotate(perm.begin(), perm.begin() + 7, perm.end());
        DataSet permuted(x.rows(), q);
        for (Eigen::Index i = 0; i < x.rows(); ++i) permuted.row(i) = x.row(perm[i]);
        CHECK(geometric_median(permuted, tight()) == m);
    }
}

TEST_CASE("geometric median beats the mean under gross outliers") {
    DataSet x = test::random_matrix(101, 3, 7);
    for (Eigen::Index i = 0; i < 40; ++i) x.row(i).setConstant(1e6);
    const Vector gm = geometric_median(x, WeiszfeldConfig::full_accuracy(x));
    CHECK(gm.norm() < 5.0);
}
