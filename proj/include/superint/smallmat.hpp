#pragma once

/** \file smallmat.hpp
    Tiny dense kernels for the fixed-size problems in this project:
    a partial-pivot solve for the 4x4 Newton systems and singular values of
    n x 4 gradient stacks via Jacobi iteration on A^T A.
*/

#include <array>
#include <cmath>
#include <vector>

namespace superint {

using Mat4 = std::array<std::array<double, 4>, 4>;

/// Solve M x = b in place (partial pivoting). Returns false if singular.
inline bool solve4(Mat4 M, std::array<double, 4> b, std::array<double, 4>& x) {
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::fabs(M[r][col]) > std::fabs(M[piv][col])) piv = r;
        if (std::fabs(M[piv][col]) < 1e-300) return false;
        std::swap(M[piv], M[col]);
        std::swap(b[piv], b[col]);
        for (int r = col + 1; r < 4; ++r) {
            const double f = M[r][col] / M[col][col];
            for (int c = col; c < 4; ++c) M[r][c] -= f * M[col][c];
            b[r] -= f * b[col];
        }
    }
    for (int r = 3; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < 4; ++c) s -= M[r][c] * x[c];
        x[r] = s / M[r][r];
    }
    return true;
}

/// Singular values (descending) of the n x 4 matrix whose rows are `rows`.
/// One-sided Jacobi on the columns: accurate to machine precision even for
/// tiny singular values (forming A^T A would put the noise floor at
/// sqrt(eps), exactly where independence thresholds live).
inline std::array<double, 4> singular_values(const std::vector<std::array<double, 4>>& rows) {
    const size_t n = rows.size();
    std::vector<std::array<double, 4>> a(rows);  // columns get rotated in place
    for (int sweep = 0; sweep < 64; ++sweep) {
        bool converged = true;
        for (int p = 0; p < 4; ++p)
            for (int q = p + 1; q < 4; ++q) {
                double app = 0, aqq = 0, apq = 0;
                for (size_t i = 0; i < n; ++i) {
                    app += a[i][p] * a[i][p];
                    aqq += a[i][q] * a[i][q];
                    apq += a[i][p] * a[i][q];
                }
                if (std::fabs(apq) <= 1e-30 + 1e-17 * std::sqrt(app * aqq)) continue;
                converged = false;
                const double theta = 0.5 * std::atan2(2 * apq, aqq - app);
                const double c = std::cos(theta), s = std::sin(theta);
                for (size_t i = 0; i < n; ++i) {
                    const double vp = a[i][p], vq = a[i][q];
                    a[i][p] = c * vp - s * vq;
                    a[i][q] = s * vp + c * vq;
                }
            }
        if (converged) break;
    }
    std::array<double, 4> sv{};
    for (int j = 0; j < 4; ++j) {
        double s = 0;
        for (size_t i = 0; i < n; ++i) s += a[i][j] * a[i][j];
        sv[j] = std::sqrt(s);
    }
    std::sort(sv.begin(), sv.end(), std::greater<double>());
    return sv;
}

}  // namespace superint
