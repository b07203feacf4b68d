#pragma once

#include "sdr/spectral.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sdr {

enum class Scheme {
    cuo,  // uniform outliers: N(m, I) with m_j ~ U[0, uniform_high]
    gmc,  // Gaussian mixture: N(shift_norm * u, I), u a random unit vector
    cse,  // the rows most aligned with the smallest principal direction
          // are replaced by sqrt(p) v_p
};

std::string_view to_string(Scheme s);
Scheme parse_scheme(std::string_view name);

struct ContaminationSpec {
    Scheme scheme = Scheme::gmc;
    double eps = 0.0;
    double shift_norm = 15.0;
    double uniform_high = 3.0;
    std::uint64_t seed = 0;

    void validate() const;
};

struct LabeledSample {
    DataSet x;
    std::vector<bool> inlier_mask;
    Vector true_mean;

    std::size_t outlier_count() const;
};

// floor(n * eps), guarded against representation error in eps.
std::size_t outlier_count(std::size_t n, double eps);

enum class SubGaussianFamily { rademacher, uniform };

// Rows mu + Sigma^{1/2} zeta_i with zeta_i standard normal. Draws come from
// the Philox stream (seed, 1) in row-major order.
DataSet sample_gaussian(std::size_t n, const Vector& mu, const SymMatrix& sigma, std::uint64_t seed);

// As sample_gaussian with zeta coordinates Rademacher or uniform on
// [-sqrt 3, sqrt 3] (both zero mean, unit variance).
DataSet sample_subgaussian(std::size_t n, const Vector& mu, const SymMatrix& sigma,
                           SubGaussianFamily family, std::uint64_t seed);

LabeledSample contaminate_cuo(LabeledSample sample, const ContaminationSpec& spec);
LabeledSample contaminate_gmc(LabeledSample sample, const ContaminationSpec& spec);
LabeledSample contaminate_cse(LabeledSample sample, double eps);
LabeledSample contaminate(LabeledSample sample, const ContaminationSpec& spec);

// n draws of N(0, I_p) contaminated by spec. The inlier draw depends on the
// seed only, so varying eps keeps the clean sample fixed.
LabeledSample generate_sample(std::size_t n, std::size_t p, const ContaminationSpec& spec);

}  // namespace sdr
