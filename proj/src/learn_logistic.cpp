#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "tidalsim/error.hpp"
#include "tidalsim/learn.hpp"
#include "tidalsim/learn_detail.hpp"

namespace tidalsim {

namespace {

void softmax_row(const LogisticModel& m, const double* x, double* p) {
    double logits[kNumClasses];
    double top = -1e300;
    for (std::size_t c = 0; c < kNumClasses; ++c) {
        double z = m.bias[c];
        for (std::size_t j = 0; j < m.dims; ++j) z += m.weights[c * m.dims + j] * x[j];
        logits[c] = z;
        top = std::max(top, z);
    }
    double sum = 0.0;
    for (std::size_t c = 0; c < kNumClasses; ++c) {
        p[c] = std::exp(logits[c] - top);
        sum += p[c];
    }
    for (std::size_t c = 0; c < kNumClasses; ++c) p[c] /= sum;
}

/// In-place Cholesky solve of a (p x p) SPD system a*x = b.
void cholesky_solve(std::vector<double>& a, std::vector<double>& b, std::size_t p) {
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = a[i * p + j];
            for (std::size_t k = 0; k < j; ++k) s -= a[i * p + k] * a[j * p + k];
            if (i == j) {
                if (!(s > 0.0)) throw FitError("logistic Hessian lost positive definiteness");
                a[i * p + i] = std::sqrt(s);
            } else {
                a[i * p + j] = s / a[j * p + j];
            }
        }
    }
    for (std::size_t i = 0; i < p; ++i) {
        double s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= a[i * p + k] * b[k];
        b[i] = s / a[i * p + i];
    }
    for (std::size_t ii = p; ii-- > 0;) {
        double s = b[ii];
        for (std::size_t k = ii + 1; k < p; ++k) s -= a[k * p + ii] * b[k];
        b[ii] = s / a[ii * p + ii];
    }
}

}  // namespace

namespace detail {

double logistic_loss(const DataMatrix& x, const std::vector<int>& y,
                     const std::vector<double>& weights,
                     const std::array<double, kNumClasses>& bias, double l2) {
    LogisticModel probe;
    probe.dims = x.cols;
    probe.weights = weights;
    probe.bias = bias;
    double loss = 0.0;
    for (const double w : weights) loss += 0.5 * l2 * w * w;
    double p[kNumClasses];
    for (std::size_t i = 0; i < x.rows; ++i) {
        softmax_row(probe, x.row(i), p);
        loss -= std::log(std::max(p[y[i]], 1e-300));
    }
    return loss;
}

void logistic_gradient(const DataMatrix& x, const std::vector<int>& y,
                       const std::vector<double>& weights,
                       const std::array<double, kNumClasses>& bias, double l2,
                       std::vector<double>& grad_w,
                       std::array<double, kNumClasses>& grad_b) {
    LogisticModel probe;
    probe.dims = x.cols;
    probe.weights = weights;
    probe.bias = bias;
    grad_w.assign(weights.size(), 0.0);
    grad_b.fill(0.0);
    double p[kNumClasses];
    for (std::size_t i = 0; i < x.rows; ++i) {
        const double* row = x.row(i);
        softmax_row(probe, row, p);
        for (std::size_t c = 0; c < kNumClasses; ++c) {
            const double resid = p[c] - (static_cast<int>(c) == y[i] ? 1.0 : 0.0);
            grad_b[c] += resid;
            for (std::size_t j = 0; j < x.cols; ++j) {
                grad_w[c * x.cols + j] += resid * row[j];
            }
        }
    }
    for (std::size_t k = 0; k < weights.size(); ++k) grad_w[k] += l2 * weights[k];
}

}  // namespace detail

LogisticModel fit_logistic(const DataMatrix& x, const std::vector<int>& y,
                           const LogisticConfig& cfg) {
    detail::validate_labels(x, y);
    if (!(cfg.l2 >= 0.0) || !(cfg.tol > 0.0) || cfg.max_iter < 1) {
        throw std::invalid_argument("invalid logistic regression configuration");
    }

    const std::size_t d = x.cols;
    const std::size_t aug = d + 1;            // weights plus bias per class
    const std::size_t p = kNumClasses * aug;  // full parameter count

    LogisticModel m;
    m.dims = d;
    m.weights.assign(kNumClasses * d, 0.0);
    m.bias.fill(0.0);

    std::vector<double> grad_w;
    std::array<double, kNumClasses> grad_b{};
    std::vector<double> hess(p * p);
    std::vector<double> step(p);

    double loss = detail::logistic_loss(x, y, m.weights, m.bias, cfg.l2);
    for (int iter = 0; iter < cfg.max_iter; ++iter) {
        detail::logistic_gradient(x, y, m.weights, m.bias, cfg.l2, grad_w, grad_b);
        double gmax = 0.0;
        for (const double g : grad_w) gmax = std::max(gmax, std::abs(g));
        for (const double g : grad_b) gmax = std::max(gmax, std::abs(g));
        if (gmax < cfg.tol) {
            m.converged = true;
            m.iterations = iter;
            return m;
        }

        // Assemble the Newton system. Parameter layout per class: d weights
        // then the bias, classes stacked.
        double pr[kNumClasses];
        std::fill(hess.begin(), hess.end(), 0.0);
        for (std::size_t i = 0; i < x.rows; ++i) {
            const double* row = x.row(i);
            softmax_row(m, row, pr);
            for (std::size_t c = 0; c < kNumClasses; ++c) {
                for (std::size_t l = 0; l < kNumClasses; ++l) {
                    const double w = pr[c] * ((c == l ? 1.0 : 0.0) - pr[l]);
                    if (w == 0.0) continue;
                    for (std::size_t a = 0; a < aug; ++a) {
                        const double xa = (a < d) ? row[a] : 1.0;
                        double* hrow = hess.data() + (c * aug + a) * p + l * aug;
                        for (std::size_t b = 0; b < aug; ++b) {
                            const double xb = (b < d) ? row[b] : 1.0;
                            hrow[b] += w * xa * xb;
                        }
                    }
                }
            }
        }
        for (std::size_t c = 0; c < kNumClasses; ++c) {
            for (std::size_t a = 0; a < d; ++a) {
                hess[(c * aug + a) * p + (c * aug + a)] += cfg.l2;
            }
        }
        // Tiny ridge: the shared-bias direction is a null direction of the
        // cross-entropy Hessian (and carries zero gradient).
        for (std::size_t k = 0; k < p; ++k) hess[k * p + k] += 1e-10;

        for (std::size_t c = 0; c < kNumClasses; ++c) {
            for (std::size_t a = 0; a < aug; ++a) {
                step[c * aug + a] = -(a < d ? grad_w[c * d + a] : grad_b[c]);
            }
        }
        cholesky_solve(hess, step, p);

        double slope = 0.0;  // directional derivative along the step
        for (std::size_t c = 0; c < kNumClasses; ++c) {
            for (std::size_t a = 0; a < aug; ++a) {
                slope += (a < d ? grad_w[c * d + a] : grad_b[c]) * step[c * aug + a];
            }
        }

        // Backtracking line search keeps the loss non-increasing.
        double t = 1.0;
        const std::vector<double> w0 = m.weights;
        const std::array<double, kNumClasses> b0 = m.bias;
        for (;;) {
            for (std::size_t c = 0; c < kNumClasses; ++c) {
                for (std::size_t a = 0; a < d; ++a) {
                    m.weights[c * d + a] = w0[c * d + a] + t * step[c * aug + a];
                }
                m.bias[c] = b0[c] + t * step[c * aug + d];
            }
            const double trial = detail::logistic_loss(x, y, m.weights, m.bias, cfg.l2);
            if (trial <= loss + 1e-4 * t * slope) {
                loss = trial;
                break;
            }
            t *= 0.5;
            if (t < 1e-12) {
                m.weights = w0;
                m.bias = b0;
                m.iterations = iter + 1;
                return m;  // numerically stalled; gradient already tiny-ish
            }
        }
        m.iterations = iter + 1;
    }
    return m;
}

namespace detail {

std::array<double, kNumClasses> score_logistic(const LogisticModel& m, const double* x) {
    std::array<double, kNumClasses> p{};
    softmax_row(m, x, p.data());
    return p;
}

}  // namespace detail

}  // namespace tidalsim
