#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "tidalsim/error.hpp"
#include "tidalsim/learn.hpp"
#include "tidalsim/learn_detail.hpp"

namespace tidalsim {

namespace detail {

double rbf_kernel(const double* a, const double* b, std::size_t dims, double gamma) {
    double sq = 0.0;
    for (std::size_t j = 0; j < dims; ++j) {
        const double d = a[j] - b[j];
        sq += d * d;
    }
    return std::exp(-gamma * sq);
}

SmoResult solve_binary_smo(const std::vector<double>& kernel, std::size_t n,
                           const std::vector<double>& y, double c, double tol,
                           std::size_t max_iter) {
    SmoResult res;
    res.alpha.assign(n, 0.0);
    // grad_i = d/d alpha_i of the dual objective = y_i * u_i - 1 with
    // u_i = sum_j alpha_j y_j K_ij; starts at -1 for alpha = 0.
    std::vector<double> grad(n, -1.0);

    const auto k_at = [&](std::size_t i, std::size_t j) { return kernel[i * n + j]; };

    std::size_t iter = 0;
    double m_up = 0.0;
    double m_low = 0.0;
    for (; iter < max_iter; ++iter) {
        // Maximal violating pair over the up/low index sets.
        std::size_t i_up = n;
        std::size_t i_low = n;
        m_up = -std::numeric_limits<double>::infinity();
        m_low = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            const bool in_up = (y[i] > 0.0) ? (res.alpha[i] < c) : (res.alpha[i] > 0.0);
            const bool in_low = (y[i] > 0.0) ? (res.alpha[i] > 0.0) : (res.alpha[i] < c);
            const double v = -y[i] * grad[i];
            if (in_up && v > m_up) {
                m_up = v;
                i_up = i;
            }
            if (in_low && v < m_low) {
                m_low = v;
                i_low = i;
            }
        }
        if (i_up == n || i_low == n || m_up - m_low <= tol) {
            res.converged = (i_up != n && i_low != n);
            break;
        }

        const std::size_t i = i_up;
        const std::size_t j = i_low;
        const double quad = std::max(k_at(i, i) + k_at(j, j) - 2.0 * k_at(i, j), 1e-12);
        // Unconstrained optimum along the feasible pair direction.
        double delta = (m_up - m_low) / quad;

        // Clip so both multipliers stay inside the box. The pair moves as
        // alpha_i y_i += delta, alpha_j y_j -= delta (preserving the equality
        // constraint exactly).
        const double yi = y[i];
        const double yj = y[j];
        double lo = -std::numeric_limits<double>::infinity();
        double hi = std::numeric_limits<double>::infinity();
        if (yi > 0.0) {
            hi = std::min(hi, c - res.alpha[i]);
            lo = std::max(lo, -res.alpha[i]);
        } else {
            hi = std::min(hi, res.alpha[i]);
            lo = std::max(lo, res.alpha[i] - c);
        }
        if (yj > 0.0) {
            hi = std::min(hi, res.alpha[j]);
            lo = std::max(lo, res.alpha[j] - c);
        } else {
            hi = std::min(hi, c - res.alpha[j]);
            lo = std::max(lo, -res.alpha[j]);
        }
        delta = std::clamp(delta, lo, hi);
        if (delta == 0.0) {
            res.converged = true;  // box-bound pair; gap cannot be reduced
            break;
        }

        const double di = yi * delta;   // change of alpha_i
        const double dj = -yj * delta;  // change of alpha_j
        res.alpha[i] += di;
        res.alpha[j] += dj;
        // Exact clip against roundoff.
        res.alpha[i] = std::clamp(res.alpha[i], 0.0, c);
        res.alpha[j] = std::clamp(res.alpha[j], 0.0, c);

        for (std::size_t k = 0; k < n; ++k) {
            grad[k] += y[k] * (delta * k_at(i, k) - delta * k_at(j, k));
        }
    }
    res.iterations = iter;
    // Bias that centers the decision function between the active bounds:
    // decision(x) = sum alpha_i y_i k(x_i, x) + bias.
    if (std::isfinite(m_up) && std::isfinite(m_low)) {
        res.bias = (m_up + m_low) / 2.0;
    }
    return res;
}

}  // namespace detail

SvmModel fit_svm_rbf(const DataMatrix& x, const std::vector<int>& y, const SvmConfig& cfg) {
    detail::validate_labels(x, y);
    if (!(cfg.gamma > 0.0) || !(cfg.c > 0.0) || !(cfg.tol > 0.0)) {
        throw std::invalid_argument("invalid SVM configuration");
    }

    const std::size_t n = x.rows;
    const std::size_t d = x.cols;

    // One kernel matrix shared by the three one-vs-rest problems.
    std::vector<double> kernel(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        kernel[i * n + i] = 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double k = detail::rbf_kernel(x.row(i), x.row(j), d, cfg.gamma);
            kernel[i * n + j] = k;
            kernel[j * n + i] = k;
        }
    }

    SvmModel m;
    m.dims = d;
    m.gamma = cfg.gamma;
    m.c = cfg.c;

    std::vector<bool> is_support(n, false);
    std::vector<std::vector<double>> all_alpha(kNumClasses);
    std::vector<double> ybin(n);
    for (std::size_t c = 0; c < kNumClasses; ++c) {
        for (std::size_t i = 0; i < n; ++i) {
            ybin[i] = (y[i] == static_cast<int>(c)) ? 1.0 : -1.0;
        }
        detail::SmoResult r =
            detail::solve_binary_smo(kernel, n, ybin, cfg.c, cfg.tol, cfg.max_iter);
        m.ovr[c].bias = r.bias;
        m.ovr[c].converged = r.converged;
        m.ovr[c].iterations = r.iterations;
        for (std::size_t i = 0; i < n; ++i) {
            if (r.alpha[i] > 0.0) is_support[i] = true;
        }
        all_alpha[c] = std::move(r.alpha);
    }

    // Pack the union of support vectors once; per-class coefficients refer to
    // rows of that pack.
    std::vector<std::size_t> pack_index(n, n);
    std::size_t n_support = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (is_support[i]) pack_index[i] = n_support++;
    }
    m.support = DataMatrix(n_support, d);
    for (std::size_t i = 0; i < n; ++i) {
        if (!is_support[i]) continue;
        double* dst = m.support.row(pack_index[i]);
        const double* src = x.row(i);
        std::copy(src, src + d, dst);
    }
    for (std::size_t c = 0; c < kNumClasses; ++c) {
        for (std::size_t i = 0; i < n; ++i) {
            const double a = all_alpha[c][i];
            if (a > 0.0) {
                const double ybin_i = (y[i] == static_cast<int>(c)) ? 1.0 : -1.0;
                m.ovr[c].support_indices.push_back(pack_index[i]);
                m.ovr[c].coeff.push_back(a * ybin_i);
            }
        }
    }
    return m;
}

namespace detail {

std::array<double, kNumClasses> score_svm(const SvmModel& m, const double* x) {
    // Kernel evaluations against the support pack are shared by the three
    // decision functions.
    std::vector<double> k(m.support.rows);
    for (std::size_t i = 0; i < m.support.rows; ++i) {
        k[i] = rbf_kernel(m.support.row(i), x, m.dims, m.gamma);
    }
    std::array<double, kNumClasses> margins{};
    for (std::size_t c = 0; c < kNumClasses; ++c) {
        double z = m.ovr[c].bias;
        const BinarySvm& bin = m.ovr[c];
        for (std::size_t s = 0; s < bin.support_indices.size(); ++s) {
            z += bin.coeff[s] * k[bin.support_indices[s]];
        }
        margins[c] = z;
    }
    return margins;
}

}  // namespace detail

}  // namespace tidalsim
