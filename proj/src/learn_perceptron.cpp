#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "tidalsim/learn.hpp"
#include "tidalsim/learn_detail.hpp"
#include "tidalsim/rng.hpp"

namespace tidalsim {

PerceptronModel fit_perceptron(const DataMatrix& x, const std::vector<int>& y,
                               const PerceptronConfig& cfg) {
    detail::validate_labels(x, y);
    if (!(cfg.eta > 0.0) || cfg.max_epochs < 1) {
        throw std::invalid_argument("invalid perceptron configuration");
    }

    const std::size_t d = x.cols;
    PerceptronModel m;
    m.dims = d;
    m.weights.assign(kNumClasses * d, 0.0);
    m.bias.fill(0.0);
    m.converged = true;

    // One binary perceptron per class against the rest. Each sees the samples
    // in a deterministic per-epoch shuffle keyed by (seed, class, epoch).
    for (std::size_t c = 0; c < kNumClasses; ++c) {
        double* w = m.weights.data() + c * d;
        double& b = m.bias[c];
        std::vector<std::size_t> order(x.rows);
        std::iota(order.begin(), order.end(), std::size_t{0});

        int epoch = 0;
        bool clean = false;
        for (; epoch < cfg.max_epochs && !clean; ++epoch) {
            Rng rng = Rng::stream(cfg.seed, c * 1000003ull + static_cast<std::uint64_t>(epoch));
            rng.shuffle(order);
            clean = true;
            for (const std::size_t i : order) {
                const double* row = x.row(i);
                double z = b;
                for (std::size_t j = 0; j < d; ++j) z += w[j] * row[j];
                const double predicted = z >= 0.0 ? 1.0 : 0.0;
                const double target = (static_cast<int>(c) == y[i]) ? 1.0 : 0.0;
                const double delta = target - predicted;
                if (delta != 0.0) {
                    clean = false;
                    for (std::size_t j = 0; j < d; ++j) w[j] += cfg.eta * delta * row[j];
                    b += cfg.eta * delta;
                }
            }
        }
        m.converged = m.converged && clean;
        m.epochs_run = std::max(m.epochs_run, epoch);
    }
    return m;
}

namespace detail {

std::array<double, kNumClasses> score_perceptron(const PerceptronModel& m, const double* x) {
    std::array<double, kNumClasses> margins{};
    for (std::size_t c = 0; c < kNumClasses; ++c) {
        double z = m.bias[c];
        for (std::size_t j = 0; j < m.dims; ++j) z += m.weights[c * m.dims + j] * x[j];
        margins[c] = z;
    }
    return margins;
}

}  // namespace detail

}  // namespace tidalsim
