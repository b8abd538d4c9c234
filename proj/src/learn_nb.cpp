#include <algorithm>
#include <cmath>

#include "tidalsim/learn.hpp"
#include "tidalsim/learn_detail.hpp"

namespace tidalsim {

GaussianNbModel fit_gaussian_nb(const DataMatrix& x, const std::vector<int>& y) {
    const auto counts = detail::validate_labels(x, y);

    GaussianNbModel m;
    m.dims = x.cols;
    m.mean.assign(kNumClasses * x.cols, 0.0);
    m.var.assign(kNumClasses * x.cols, 0.0);

    for (std::size_t i = 0; i < x.rows; ++i) {
        const auto c = static_cast<std::size_t>(y[i]);
        const double* row = x.row(i);
        for (std::size_t j = 0; j < x.cols; ++j) m.mean[c * x.cols + j] += row[j];
    }
    for (std::size_t c = 0; c < kNumClasses; ++c) {
        m.prior[c] = static_cast<double>(counts[c]) / static_cast<double>(x.rows);
        for (std::size_t j = 0; j < x.cols; ++j) {
            m.mean[c * x.cols + j] /= static_cast<double>(counts[c]);
        }
    }
    for (std::size_t i = 0; i < x.rows; ++i) {
        const auto c = static_cast<std::size_t>(y[i]);
        const double* row = x.row(i);
        for (std::size_t j = 0; j < x.cols; ++j) {
            const double d = row[j] - m.mean[c * x.cols + j];
            m.var[c * x.cols + j] += d * d;
        }
    }
    for (std::size_t c = 0; c < kNumClasses; ++c) {
        for (std::size_t j = 0; j < x.cols; ++j) {
            m.var[c * x.cols + j] /= static_cast<double>(counts[c]);
        }
    }

    // Smooth all class variances by a fraction of the widest overall feature
    // variance, so zero-variance features stay usable.
    double max_overall_var = 0.0;
    std::vector<double> col_mean(x.cols, 0.0);
    for (std::size_t i = 0; i < x.rows; ++i) {
        const double* row = x.row(i);
        for (std::size_t j = 0; j < x.cols; ++j) col_mean[j] += row[j];
    }
    for (std::size_t j = 0; j < x.cols; ++j) col_mean[j] /= static_cast<double>(x.rows);
    for (std::size_t j = 0; j < x.cols; ++j) {
        double v = 0.0;
        for (std::size_t i = 0; i < x.rows; ++i) {
            const double d = x.at(i, j) - col_mean[j];
            v += d * d;
        }
        max_overall_var = std::max(max_overall_var, v / static_cast<double>(x.rows));
    }
    const double smoothing = 1e-9 * max_overall_var;
    for (double& v : m.var) v += smoothing;
    return m;
}

namespace detail {

std::array<double, kNumClasses> score_gaussian_nb(const GaussianNbModel& m, const double* x) {
    // Work in log space, then normalize to posteriors.
    std::array<double, kNumClasses> logp{};
    for (std::size_t c = 0; c < kNumClasses; ++c) {
        double lp = std::log(m.prior[c]);
        for (std::size_t j = 0; j < m.dims; ++j) {
            const double var = m.var[c * m.dims + j];
            const double d = x[j] - m.mean[c * m.dims + j];
            lp += -0.5 * std::log(2.0 * 3.14159265358979323846 * var) - d * d / (2.0 * var);
        }
        logp[c] = lp;
    }
    const double top = *std::max_element(logp.begin(), logp.end());
    std::array<double, kNumClasses> post{};
    double sum = 0.0;
    for (std::size_t c = 0; c < kNumClasses; ++c) {
        post[c] = std::exp(logp[c] - top);
        sum += post[c];
    }
    for (double& p : post) p /= sum;
    return post;
}

}  // namespace detail

}  // namespace tidalsim
