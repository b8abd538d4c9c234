#include "tidalsim/features.hpp"

#include <cmath>
#include <stdexcept>

namespace tidalsim {

namespace {

std::size_t checked_cutoff_index(const VolumeSignal& sig) {
    const std::size_t n = sig.v.size();
    const std::size_t i0 = sig.grid.cutoff_index();
    if (n < 2 || i0 + 2 > n) {
        throw std::invalid_argument("post-transient window holds fewer than two samples");
    }
    return i0;
}

}  // namespace

FeatureVector extract_features(const VolumeSignal& sig) {
    const std::size_t i0 = checked_cutoff_index(sig);
    const std::size_t n = sig.v.size();
    const double count = static_cast<double>(n - i0);

    double sum = 0.0;
    for (std::size_t i = i0; i < n; ++i) sum += sig.v[i];
    const double mu = sum / count;

    double sq = 0.0;
    for (std::size_t i = i0; i < n; ++i) {
        const double d = sig.v[i] - mu;
        sq += d * d;
    }
    return {mu, std::sqrt(sq / count)};
}

std::vector<double> flow(const VolumeSignal& sig) {
    const std::size_t n = sig.v.size();
    if (n < 2) {
        throw std::invalid_argument("flow needs at least two samples");
    }
    const double dt = sig.grid.dt;
    std::vector<double> phi(n);
    phi[0] = (sig.v[1] - sig.v[0]) / dt;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        phi[i] = (sig.v[i + 1] - sig.v[i - 1]) / (2.0 * dt);
    }
    phi[n - 1] = (sig.v[n - 1] - sig.v[n - 2]) / dt;
    return phi;
}

LoopCurve pv_loop(const VolumeSignal& sig, const PressureProfile& pp) {
    const std::size_t i0 = checked_cutoff_index(sig);
    LoopCurve loop;
    loop.kind = "pressure-volume";
    loop.points.reserve(sig.v.size() - i0);
    for (std::size_t i = i0; i < sig.v.size(); ++i) {
        loop.points.emplace_back(sample_pressure(pp, sig.grid.time_at(i)), sig.v[i]);
    }
    return loop;
}

LoopCurve fv_loop(const VolumeSignal& sig) {
    const std::size_t i0 = checked_cutoff_index(sig);
    const std::vector<double> phi = flow(sig);
    LoopCurve loop;
    loop.kind = "flow-volume";
    loop.points.reserve(sig.v.size() - i0);
    for (std::size_t i = i0; i < sig.v.size(); ++i) {
        loop.points.emplace_back(sig.v[i], phi[i]);
    }
    return loop;
}

}  // namespace tidalsim
