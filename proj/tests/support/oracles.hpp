#pragma once

// Test-only reference computations, independent of the library internals:
// batch least squares by Gaussian elimination, naive fuzzy evaluation
// straight from the defining formulas, and brute-force metric evaluation.

#include <cmath>
#include <cstddef>
#include <random>
#include <stdexcept>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<double>>;

// Solves A x = b with partial pivoting. A must be square.
inline std::vector<double> solve_linear(Matrix A, std::vector<double> b) {
    const std::size_t n = A.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(A[r][col]) > std::abs(A[pivot][col])) pivot = r;
        if (A[pivot][col] == 0.0) throw std::runtime_error("singular system");
        std::swap(A[col], A[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = A[r][col] / A[col][col];
            for (std::size_t c = col; c < n; ++c) A[r][c] -= f * A[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double acc = b[i];
        for (std::size_t c = i + 1; c < n; ++c) acc -= A[i][c] * x[c];
        x[i] = acc / A[i][i];
    }
    return x;
}

// Ridge-regularized weighted least squares on extended inputs [1, x]:
// (X' W X + ridge I) theta = X' W y.
inline std::vector<double> weighted_least_squares(const Matrix& X, const std::vector<double>& y,
                                                  const std::vector<double>& w, double ridge) {
    const std::size_t n = X.front().size() + 1;
    Matrix A(n, std::vector<double>(n, 0.0));
    std::vector<double> b(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) A[i][i] = ridge;
    std::vector<double> ext(n);
    for (std::size_t k = 0; k < X.size(); ++k) {
        ext[0] = 1.0;
        for (std::size_t j = 0; j + 1 < n; ++j) ext[j + 1] = X[k][j];
        for (std::size_t i = 0; i < n; ++i) {
            b[i] += w[k] * ext[i] * y[k];
            for (std::size_t j = 0; j < n; ++j) A[i][j] += w[k] * ext[i] * ext[j];
        }
    }
    return solve_linear(std::move(A), std::move(b));
}

inline std::vector<double> least_squares(const Matrix& X, const std::vector<double>& y,
                                         double ridge) {
    return weighted_least_squares(X, y, std::vector<double>(X.size(), 1.0), ridge);
}

// Naive Gaussian product firing degrees, straight from the formula.
inline std::vector<double> naive_firing(const std::vector<double>& x, const Matrix& means,
                                        const Matrix& stds) {
    std::vector<double> raw(means.size(), 1.0);
    for (std::size_t i = 0; i < means.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) {
            const double t = (x[j] - means[i][j]) / stds[i][j];
            raw[i] *= std::exp(-0.5 * t * t);
        }
    double sum = 0.0;
    for (double r : raw) sum += r;
    for (double& r : raw) r /= sum;
    return raw;
}

inline double naive_rmse(const std::vector<double>& y, const std::vector<double>& y_hat) {
    double acc = 0.0;
    for (std::size_t k = 0; k < y.size(); ++k) acc += (y[k] - y_hat[k]) * (y[k] - y_hat[k]);
    return std::sqrt(acc / static_cast<double>(y.size()));
}

inline double population_std(const std::vector<double>& y) {
    double mean = 0.0;
    for (double v : y) mean += v;
    mean /= static_cast<double>(y.size());
    double var = 0.0;
    for (double v : y) var += (v - mean) * (v - mean);
    return std::sqrt(var / static_cast<double>(y.size()));
}

// Synthetic regression problem with a bounded condition number: standard
// normal attributes, known coefficients, optional noise.
struct SyntheticProblem {
    Matrix X;
    std::vector<double> y;
    std::vector<double> true_theta; // intercept first
};

inline SyntheticProblem make_regression(std::size_t T, std::size_t p, double noise_std,
                                        std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    SyntheticProblem problem;
    problem.true_theta.resize(p + 1);
    for (auto& c : problem.true_theta) c = coef(rng);
    problem.X.assign(T, std::vector<double>(p));
    problem.y.resize(T);
    for (std::size_t k = 0; k < T; ++k) {
        double acc = problem.true_theta[0];
        for (std::size_t j = 0; j < p; ++j) {
            problem.X[k][j] = gauss(rng);
            acc += problem.true_theta[j + 1] * problem.X[k][j];
        }
        problem.y[k] = acc + noise_std * gauss(rng);
    }
    return problem;
}

} // namespace oracle
