#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace quermass {

/// A Monte Carlo value. `raw_mean` / `raw_stderr` describe the averaged
/// integrand before any nonlinear map; `value` / `std_error` the final quantity,
/// with the error carried through by the delta method.
struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    double raw_mean = 0.0;
    double raw_stderr = 0.0;
};

/// Sample means of several integrands evaluated on the same draws, with the
/// covariance matrix of the means (sample covariance / N).
struct MeanVector {
    Eigen::VectorXd mean;
    Eigen::MatrixXd cov;
    std::size_t samples = 0;
};

MeanVector sample_means(const std::vector<const std::vector<double>*>& columns);

struct Propagated {
    double value = 0.0;
    double std_error = 0.0;
};

/// f(mean) with stderr sqrt(g^T cov g), g a central-difference gradient.
Propagated propagate(const MeanVector& m, const std::function<double(const Eigen::VectorXd&)>& f);

} // namespace quermass
