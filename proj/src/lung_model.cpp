#include "tidalsim/lung_model.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "tidalsim/error.hpp"

namespace tidalsim {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_positive(double value, const char* name) {
    if (!(value > 0.0)) {
        throw std::invalid_argument(std::string(name) + " must be positive, got " +
                                    std::to_string(value));
    }
}

}  // namespace

void LungParams::validate() const {
    require_positive(r1, "r1");
    require_positive(r2, "r2");
    require_positive(rt, "rt");
    require_positive(e1, "e1");
    require_positive(e2, "e2");
}

void EquivalentParams::validate() const {
    require_positive(r_eq, "r_eq");
    require_positive(e_eq, "e_eq");
}

EquivalentParams equivalent_of(const LungParams& p) {
    p.validate();
    return {p.rt + p.r1 * p.r2 / (p.r1 + p.r2), p.e1 * p.e2 / (p.e1 + p.e2)};
}

LungParams split_equivalent(const EquivalentParams& eq) {
    eq.validate();
    return {eq.r_eq, eq.r_eq, eq.r_eq / 2.0, 2.0 * eq.e_eq, 2.0 * eq.e_eq};
}

void PressureProfile::validate() const {
    require_positive(amplitude, "pressure amplitude");
    require_positive(frequency, "pressure frequency");
    if (!std::isfinite(phase)) {
        throw std::invalid_argument("pressure phase must be finite");
    }
}

double sample_pressure(const PressureProfile& pp, double t) {
    const double arg = 2.0 * kPi * pp.frequency * t + pp.phase;
    switch (pp.waveform) {
        case Waveform::RaisedCosine:
            return pp.amplitude * (1.0 - std::cos(arg)) / 2.0;
        case Waveform::Sinusoid:
            return pp.amplitude * std::sin(arg);
    }
    throw std::invalid_argument("unknown pressure waveform");
}

void TimeGrid::validate() const {
    require_positive(dt, "dt");
    require_positive(duration, "duration");
    if (!(transient_cutoff >= 0.0)) {
        throw std::invalid_argument("transient_cutoff must be nonnegative");
    }
    if (!(transient_cutoff < duration)) {
        throw std::invalid_argument("transient_cutoff must be smaller than duration");
    }
}

std::size_t TimeGrid::sample_count() const {
    return static_cast<std::size_t>(std::floor(duration / dt)) + 1;
}

std::size_t TimeGrid::cutoff_index() const {
    // Guard against 20.0/0.01 landing a hair above an integer.
    return static_cast<std::size_t>(std::ceil(transient_cutoff / dt - 1e-9));
}

void SimConfig::validate() const {
    pressure.validate();
    grid.validate();
}

double poiseuille_resistance(double mu_air, double length, double radius) {
    if (!(mu_air > 0.0) || !(length > 0.0) || !(radius > 0.0)) {
        throw std::domain_error("poiseuille_resistance requires positive viscosity, length and radius");
    }
    return 8.0 * mu_air * length / (kPi * radius * radius * radius * radius);
}

ComplexGain transfer_function(const LungParams& p, double omega) {
    p.validate();
    if (!std::isfinite(omega)) {
        throw std::invalid_argument("omega must be finite");
    }
    const std::complex<double> s(0.0, omega);
    const double a = p.resistance_det();
    const double b = (p.r2 + p.rt) * p.e1 + (p.r1 + p.rt) * p.e2;
    const double c = p.e1 * p.e2;
    const std::complex<double> num = s * (p.r1 + p.r2) + (p.e1 + p.e2);
    const std::complex<double> den = s * s * a + s * b + c;
    const std::complex<double> h = num / den;
    return {std::abs(h), std::arg(h)};
}

VolumeSignal simulate_bi(const LungParams& p, const PressureProfile& pp,
                         const TimeGrid& grid, double v1_0, double v2_0) {
    p.validate();
    pp.validate();
    grid.validate();

    // Constant inverse of the resistance matrix.
    const double det = p.resistance_det();
    const double m11 = (p.r2 + p.rt) / det;
    const double m12 = -p.rt / det;
    const double m21 = -p.rt / det;
    const double m22 = (p.r1 + p.rt) / det;
    const double e1 = p.e1;
    const double e2 = p.e2;

    const auto deriv = [&](double pressure, double v1, double v2, double& d1, double& d2) {
        const double b1 = pressure - e1 * v1;
        const double b2 = pressure - e2 * v2;
        d1 = m11 * b1 + m12 * b2;
        d2 = m21 * b1 + m22 * b2;
    };

    const std::size_t n = grid.sample_count();
    VolumeSignal sig;
    sig.grid = grid;
    sig.v.resize(n);
    sig.v1.resize(n);
    sig.v2.resize(n);

    double v1 = v1_0;
    double v2 = v2_0;
    sig.v1[0] = v1;
    sig.v2[0] = v2;
    sig.v[0] = v1 + v2;

    const double dt = grid.dt;
    for (std::size_t i = 1; i < n; ++i) {
        const double t = grid.time_at(i - 1);
        const double p0 = sample_pressure(pp, t);
        const double ph = sample_pressure(pp, t + dt / 2.0);
        const double p1 = sample_pressure(pp, t + dt);

        double k1a, k1b, k2a, k2b, k3a, k3b, k4a, k4b;
        deriv(p0, v1, v2, k1a, k1b);
        deriv(ph, v1 + dt / 2.0 * k1a, v2 + dt / 2.0 * k1b, k2a, k2b);
        deriv(ph, v1 + dt / 2.0 * k2a, v2 + dt / 2.0 * k2b, k3a, k3b);
        deriv(p1, v1 + dt * k3a, v2 + dt * k3b, k4a, k4b);

        v1 += dt / 6.0 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a);
        v2 += dt / 6.0 * (k1b + 2.0 * k2b + 2.0 * k3b + k4b);
        if (!std::isfinite(v1) || !std::isfinite(v2)) {
            throw IntegrationDiverged("two-compartment integration diverged at t = " +
                                      std::to_string(grid.time_at(i)));
        }
        sig.v1[i] = v1;
        sig.v2[i] = v2;
        sig.v[i] = v1 + v2;
    }
    return sig;
}

VolumeSignal simulate_mono(double r, double e, const PressureProfile& pp,
                           const TimeGrid& grid, double v0) {
    require_positive(r, "r");
    require_positive(e, "e");
    pp.validate();
    grid.validate();

    const auto deriv = [&](double pressure, double v) { return (pressure - e * v) / r; };

    const std::size_t n = grid.sample_count();
    VolumeSignal sig;
    sig.grid = grid;
    sig.v.resize(n);

    double v = v0;
    sig.v[0] = v;
    const double dt = grid.dt;
    for (std::size_t i = 1; i < n; ++i) {
        const double t = grid.time_at(i - 1);
        const double p0 = sample_pressure(pp, t);
        const double ph = sample_pressure(pp, t + dt / 2.0);
        const double p1 = sample_pressure(pp, t + dt);

        const double k1 = deriv(p0, v);
        const double k2 = deriv(ph, v + dt / 2.0 * k1);
        const double k3 = deriv(ph, v + dt / 2.0 * k2);
        const double k4 = deriv(p1, v + dt * k3);
        v += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!std::isfinite(v)) {
            throw IntegrationDiverged("single-compartment integration diverged at t = " +
                                      std::to_string(grid.time_at(i)));
        }
        sig.v[i] = v;
    }
    return sig;
}

}  // namespace tidalsim
