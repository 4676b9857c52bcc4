#pragma once

namespace quermass {

/// Volume of the unit ball of R^k, pi^{k/2} / Gamma(k/2 + 1); omega(0) = 1.
double omega(int k);

} // namespace quermass
