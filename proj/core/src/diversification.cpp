#include "folio/diversification.hpp"

#include <cmath>

#include "folio/errors.hpp"
#include "folio/io.hpp"

namespace folio {

bool on_simplex(const Diversification& x, double tol) {
    if (x.empty()) return false;
    double total = 0.0;
    for (double xi : x) {
        if (!std::isfinite(xi) || xi < -tol) return false;
        total += xi;
    }
    return std::abs(total - 1.0) <= tol;
}

void require_simplex(const Diversification& x, double tol) {
    if (!on_simplex(x, tol)) {
        std::string s = "weights off the simplex: [";
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (i) s += ", ";
            s += format_double(x[i]);
        }
        throw ContractError(s + "]");
    }
}

Diversification repair_simplex(Diversification x) {
    double total = 0.0;
    for (auto& xi : x) {
        if (!std::isfinite(xi) || xi < 0.0) xi = 0.0;
        total += xi;
    }
    if (total <= 0.0) {
        const double uniform = 1.0 / static_cast<double>(x.size());
        for (auto& xi : x) xi = uniform;
        return x;
    }
    for (auto& xi : x) xi /= total;
    return x;
}

} // namespace folio
