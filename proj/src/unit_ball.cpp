#include "quermass/unit_ball.hpp"

#include <cmath>
#include <numbers>

#include "quermass/types.hpp"

namespace quermass {

double omega(int k)
{
    require(k >= 0, "omega: k must be nonnegative");
    return std::pow(std::numbers::pi, 0.5 * k) / std::tgamma(0.5 * k + 1.0);
}

} // namespace quermass
