#pragma once

#include <cstddef>
#include <vector>

namespace tidalsim {

/// Mechanical parameters of the two-compartment parallel airway model.
/// Resistances in cmH2O*s/L, elastances in cmH2O/L. r1/r2 feed the two
/// compartments, rt is the shared trachea branch, e1/e2 are the compartment
/// elastances.
struct LungParams {
    double r1 = 0.0;
    double r2 = 0.0;
    double rt = 0.0;
    double e1 = 0.0;
    double e2 = 0.0;

    /// Throws std::invalid_argument unless all five values are positive.
    void validate() const;

    /// Determinant of the resistance matrix: r1*r2 + rt*(r1+r2). Positive for
    /// valid parameters, which keeps the ODE system solvable.
    double resistance_det() const { return r1 * r2 + rt * (r1 + r2); }
};

/// Single-compartment equivalent of a parameter set.
struct EquivalentParams {
    double r_eq = 0.0;
    double e_eq = 0.0;

    void validate() const;
};

/// R_eq = rt + r1*r2/(r1+r2), E_eq = e1*e2/(e1+e2).
EquivalentParams equivalent_of(const LungParams& p);

/// Canonical symmetric split of equivalent parameters:
/// rt = r_eq/2, r1 = r2 = r_eq, e1 = e2 = 2*e_eq.
/// Satisfies equivalent_of(split_equivalent(eq)) == eq and collapses the
/// two-compartment transfer function exactly onto the single-compartment one.
LungParams split_equivalent(const EquivalentParams& eq);

/// Airway pressure waveform at the opening.
enum class Waveform { RaisedCosine, Sinusoid };

struct PressureProfile {
    Waveform waveform = Waveform::RaisedCosine;
    double amplitude = 5.0;   // cmH2O
    double frequency = 0.25;  // Hz, resting tidal breathing
    double phase = 0.0;       // rad

    void validate() const;
};

/// RaisedCosine: A*(1-cos(2*pi*f*t + phi))/2, nonnegative with mean A/2.
/// Sinusoid:     A*sin(2*pi*f*t + phi).
double sample_pressure(const PressureProfile& pp, double t);

/// Uniform simulation grid. Samples lie at t_i = i*dt for
/// i = 0..floor(duration/dt); statistics are taken over t >= transient_cutoff.
struct TimeGrid {
    double dt = 0.01;                // s
    double duration = 60.0;          // s
    double transient_cutoff = 20.0;  // s

    void validate() const;
    std::size_t sample_count() const;
    double time_at(std::size_t i) const { return static_cast<double>(i) * dt; }
    /// Index of the first sample at or after the transient cutoff.
    std::size_t cutoff_index() const;
};

/// Pressure waveform plus grid: everything a simulation run needs besides the
/// mechanics.
struct SimConfig {
    PressureProfile pressure;
    TimeGrid grid;

    void validate() const;
};

/// Sampled volume trajectory. v is the total volume; v1/v2 hold the
/// per-compartment volumes for two-compartment runs and stay empty otherwise.
struct VolumeSignal {
    TimeGrid grid;
    std::vector<double> v;
    std::vector<double> v1;
    std::vector<double> v2;
};

struct ComplexGain {
    double magnitude = 0.0;
    double phase = 0.0;  // rad
};

/// Poiseuille resistance 8*mu*l/(pi*r^4) of a rigid tube.
/// Throws std::domain_error for non-positive inputs.
double poiseuille_resistance(double mu_air, double length, double radius);

/// Volume-over-pressure transfer function of the two-compartment model
/// evaluated at s = i*omega:
///   H(s) = (s*(r1+r2) + e1+e2) /
///          (s^2*(r1*r2 + rt*(r1+r2)) + s*((r2+rt)*e1 + (r1+rt)*e2) + e1*e2)
ComplexGain transfer_function(const LungParams& p, double omega);

/// Integrates the two-compartment model with classical fixed-step RK4.
/// State (V1, V2) obeys
///   [r1+rt  rt  ] [dV1/dt]   [P - e1*V1]
///   [rt    r2+rt] [dV2/dt] = [P - e2*V2]
/// Throws IntegrationDiverged if the state becomes non-finite.
VolumeSignal simulate_bi(const LungParams& p, const PressureProfile& pp,
                         const TimeGrid& grid, double v1_0 = 0.0, double v2_0 = 0.0);

/// Integrates the single-compartment model dV/dt = (P - e*V)/r with RK4.
VolumeSignal simulate_mono(double r, double e, const PressureProfile& pp,
                           const TimeGrid& grid, double v0 = 0.0);

}  // namespace tidalsim
