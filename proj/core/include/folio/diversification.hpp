#pragma once

#include <vector>

namespace folio {

/// Long-only fully invested weight vector: x >= 0, sum x = 1.
using Diversification = std::vector<double>;

bool on_simplex(const Diversification& x, double tol = 1e-9);

/// Throws ContractError when x violates the simplex constraints beyond tol.
void require_simplex(const Diversification& x, double tol = 1e-9);

/// Clips negatives to zero and renormalizes. A vector with zero mass maps to
/// uniform weights.
Diversification repair_simplex(Diversification x);

} // namespace folio
