#include "sdr/baselines.hpp"
#include "sdr/error.hpp"

#include "test_util.hpp"

#include <doctest.h>

using namespace sdr;

TEST_CASE("coordinatewise_median") {
    DataSet x(4, 2);
    x << 1, 10, 4, 30, 2, 20, 3, 40;
    // Lower median in each column.
    CHECK(coordinatewise_median(x) == Vector((Vector(2) << 2, 20).finished()));
    CHECK_THROWS_AS(coordinatewise_median(DataSet(0, 2)), DataError);
}

TEST_CASE("geometric_median_estimator") {
    DataSet x(3, 2);
    x << 0, 0, 1, 0, 0.5, std::sqrt(3.0) / 2;
    CHECK((geometric_median_estimator(x) - x.colwise().mean().transpose()).norm() < 1e-6);

    DataSet y = test::random_matrix(200, 4, 3);
    for (Eigen::Index i = 0; i < 60; ++i) y.row(i).setConstant(1e4);
    CHECK(geometric_median_estimator(y).norm() < 3.0);
}

TEST_CASE("oracle_mean") {
    DataSet x(3, 1);
    x << 1, 100, 3;
    CHECK(oracle_mean(x, {true, false, true})(0) == 2.0);
    CHECK_THROWS_AS(oracle_mean(x, {false, false, false}), DataError);
    CHECK_THROWS_AS(oracle_mean(x, {true, true}), InvalidArgument);
}
