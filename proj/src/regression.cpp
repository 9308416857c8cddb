#include "lsmc/regression.hpp"

#include "lsmc/error.hpp"

#include <cmath>

namespace lsmc {

namespace {

constexpr double kRankTolerance = 1e-10;

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

[[noreturn]] void throw_collinear(const std::vector<std::string>& names, std::size_t j,
                                  double column_norm) {
    const std::string& name = j < names.size() ? names[j] : "column " + std::to_string(j);
    if (column_norm == 0.0 || j == 0) {
        throw Error(ErrorCode::collinearity, "regressor '" + name + "' has no variation");
    }
    std::string others;
    for (std::size_t i = 0; i < j; ++i) {
        if (!others.empty()) others += ", ";
        others += "'" + (i < names.size() ? names[i] : "column " + std::to_string(i)) + "'";
    }
    throw Error(ErrorCode::collinearity,
                "regressor '" + name + "' is collinear with " + others);
}

// Inverse of the upper-triangular p x p matrix stored in the top of qr.
Matrix invert_upper(const Matrix& qr, const std::vector<double>& diag) {
    const std::size_t p = qr.cols();
    Matrix inv(p, p);
    for (std::size_t j = 0; j < p; ++j) {
        inv(j, j) = 1.0 / diag[j];
        for (std::size_t i = j; i-- > 0;) {
            double s = 0.0;
            for (std::size_t k = i + 1; k <= j; ++k) s += qr(i, k) * inv(k, j);
            inv(i, j) = -s / diag[i];
        }
    }
    return inv;
}

} // namespace

OlsSolution least_squares(const Matrix& design, std::span<const double> y,
                          const std::vector<std::string>& names, StdErrorKind se_kind) {
    const std::size_t n = design.rows();
    const std::size_t p = design.cols();
    if (y.size() != n) {
        throw Error(ErrorCode::invalid_argument, "response length does not match design rows");
    }
    if (n <= p) {
        throw Error(ErrorCode::invalid_argument,
                    "need more observations (" + std::to_string(n) + ") than regressors (" +
                        std::to_string(p) + ")");
    }

    Matrix qr = design;
    std::vector<double> qty(y.begin(), y.end());
    std::vector<double> diag(p);

    for (std::size_t j = 0; j < p; ++j) {
        const auto original = design.column(j);
        const double column_norm = std::sqrt(dot(original, original));
        auto col = qr.column(j);
        double norm = 0.0;
        for (std::size_t i = j; i < n; ++i) norm += col[i] * col[i];
        norm = std::sqrt(norm);
        if (!(norm > kRankTolerance * column_norm)) throw_collinear(names, j, column_norm);

        const double alpha = col[j] > 0.0 ? -norm : norm;
        col[j] -= alpha;
        // v = col[j..n); H = I - 2 v v^T / (v^T v)
        double vtv = 0.0;
        for (std::size_t i = j; i < n; ++i) vtv += col[i] * col[i];
        auto reflect = [&](std::span<double> target) {
            double s = 0.0;
            for (std::size_t i = j; i < n; ++i) s += col[i] * target[i];
            const double f = 2.0 * s / vtv;
            for (std::size_t i = j; i < n; ++i) target[i] -= f * col[i];
        };
        for (std::size_t k = j + 1; k < p; ++k) reflect(qr.column(k));
        reflect(qty);
        diag[j] = alpha;
    }

    OlsSolution sol;
    sol.coefficients.assign(p, 0.0);
    for (std::size_t i = p; i-- > 0;) {
        double s = qty[i];
        for (std::size_t k = i + 1; k < p; ++k) s -= qr(i, k) * sol.coefficients[k];
        sol.coefficients[i] = s / diag[i];
    }

    sol.residuals.assign(y.begin(), y.end());
    for (std::size_t k = 0; k < p; ++k) {
        const auto col = design.column(k);
        const double b = sol.coefficients[k];
        for (std::size_t i = 0; i < n; ++i) sol.residuals[i] -= b * col[i];
    }
    sol.rss = dot(sol.residuals, sol.residuals);

    double sum_y = 0.0, sum_y2 = 0.0;
    for (double v : y) {
        sum_y += v;
        sum_y2 += v * v;
    }
    const double mean_y = sum_y / static_cast<double>(n);
    double centered = 0.0;
    for (double v : y) centered += (v - mean_y) * (v - mean_y);
    sol.r_squared_raw = sum_y2 > 0.0 ? 1.0 - sol.rss / sum_y2 : 1.0;
    sol.r_squared_centered = centered > 0.0 ? 1.0 - sol.rss / centered : 1.0;

    const Matrix rinv = invert_upper(qr, diag);
    double r_fro = 0.0, rinv_fro = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
        for (std::size_t i = 0; i <= j; ++i) {
            const double rij = i == j ? diag[j] : qr(i, j);
            r_fro += rij * rij;
            rinv_fro += rinv(i, j) * rinv(i, j);
        }
    }
    sol.condition_estimate = std::sqrt(r_fro) * std::sqrt(rinv_fro);

    sol.standard_errors.assign(p, 0.0);
    if (se_kind == StdErrorKind::classical) {
        // Var(b) = s^2 (R^T R)^-1 = s^2 R^-1 R^-T
        const double s2 = sol.rss / static_cast<double>(n - p);
        for (std::size_t i = 0; i < p; ++i) {
            double v = 0.0;
            for (std::size_t k = i; k < p; ++k) v += rinv(i, k) * rinv(i, k);
            sol.standard_errors[i] = std::sqrt(s2 * v);
        }
    } else {
        // HC0: R^-1 (Q^T diag(e^2) Q) R^-T with thin Q rows q_i = x_i R^-1
        Matrix meat(p, p);
        std::vector<double> q(p);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < p; ++c) {
                double s = 0.0;
                for (std::size_t k = 0; k <= c; ++k) s += design(r, k) * rinv(k, c);
                q[c] = s;
            }
            const double e2 = sol.residuals[r] * sol.residuals[r];
            for (std::size_t a = 0; a < p; ++a) {
                for (std::size_t b = 0; b < p; ++b) meat(a, b) += e2 * q[a] * q[b];
            }
        }
        for (std::size_t i = 0; i < p; ++i) {
            double v = 0.0;
            for (std::size_t a = i; a < p; ++a) {
                for (std::size_t b = i; b < p; ++b) v += rinv(i, a) * meat(a, b) * rinv(i, b);
            }
            sol.standard_errors[i] = std::sqrt(v);
        }
    }
    return sol;
}

} // namespace lsmc
