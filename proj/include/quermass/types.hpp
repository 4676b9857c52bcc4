#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace quermass {

/// Largest ambient dimension handled by the library.
inline constexpr int kMaxDim = 4;

// Dynamically sized, but never larger than kMaxDim: storage stays on the stack.
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDim, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;

using PointList = std::vector<Vec>;

/// Raised for malformed arguments: non-unit directions, singular maps,
/// dimension mismatches, bodies that do not contain the origin.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a computation cannot produce a meaningful answer
/// (degenerate hull, unbounded halfspace intersection, ...).
class ComputationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& msg)
{
    if (!cond) throw InvalidInput(msg);
}

inline Vec make_vec(std::initializer_list<double> xs)
{
    Vec v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v(i++) = x;
    return v;
}

} // namespace quermass
