#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

// Exact singular values via one-sided Jacobi, independent of the library
// under test. Intended for the small matrices that appear in tests.
namespace oracles {

inline std::vector<double> singular_values(const std::vector<double>& a, int rows, int cols) {
    // Work on the taller orientation; singular values are transpose-invariant.
    const int m = std::max(rows, cols);
    const int n = std::min(rows, cols);
    std::vector<std::vector<double>> col(static_cast<std::size_t>(n),
                                         std::vector<double>(static_cast<std::size_t>(m)));
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            const double v = a[static_cast<std::size_t>(i) * cols + j];
            if (rows >= cols) {
                col[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = v;
            } else {
                col[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
            }
        }
    }

    for (int sweep = 0; sweep < 100; ++sweep) {
        bool rotated = false;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double alpha = 0.0, beta = 0.0, gamma = 0.0;
                for (int i = 0; i < m; ++i) {
                    alpha += col[p][i] * col[p][i];
                    beta += col[q][i] * col[q][i];
                    gamma += col[p][i] * col[q][i];
                }
                if (gamma == 0.0 || std::abs(gamma) <= 1e-14 * std::sqrt(alpha * beta)) continue;
                rotated = true;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t =
                    (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (int i = 0; i < m; ++i) {
                    const double vp = col[p][i];
                    col[p][i] = c * vp - s * col[q][i];
                    col[q][i] = s * vp + c * col[q][i];
                }
            }
        }
        if (!rotated) break;
    }

    std::vector<double> sv(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        double acc = 0.0;
        for (int i = 0; i < m; ++i) acc += col[j][i] * col[j][i];
        sv[static_cast<std::size_t>(j)] = std::sqrt(acc);
    }
    std::sort(sv.begin(), sv.end(), std::greater<>());
    return sv;
}

inline double top_singular_value(const std::vector<double>& a, int rows, int cols) {
    return singular_values(a, rows, cols)[0];
}

} // namespace oracles
