#ifndef LSMC_REGRESSION_HPP
#define LSMC_REGRESSION_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace lsmc {

// Dense column-major matrix, just enough for tall-skinny least squares.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double& operator()(std::size_t r, std::size_t c) { return data_[c * rows_ + r]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[c * rows_ + r]; }
    std::span<double> column(std::size_t c) { return {data_.data() + c * rows_, rows_}; }
    std::span<const double> column(std::size_t c) const { return {data_.data() + c * rows_, rows_}; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

enum class StdErrorKind { classical, hc0 };

struct OlsSolution {
    std::vector<double> coefficients;
    std::vector<double> standard_errors;
    std::vector<double> residuals;
    double rss = 0.0;
    double r_squared_raw = 0.0;      // 1 - RSS / sum y^2
    double r_squared_centered = 0.0; // 1 - RSS / sum (y - mean y)^2
    double condition_estimate = 0.0; // ||R||_F ||R^-1||_F, bounds cond_2 of the design
};

// Ordinary least squares via Householder QR of the design. Throws a
// collinearity error naming the offending column when the design is
// numerically rank deficient.
OlsSolution least_squares(const Matrix& design, std::span<const double> y,
                          const std::vector<std::string>& column_names,
                          StdErrorKind se_kind = StdErrorKind::classical);

} // namespace lsmc

#endif // LSMC_REGRESSION_HPP
