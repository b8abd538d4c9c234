#include "tidalsim/validity.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tidalsim {

namespace {

constexpr double kPi = 3.14159265358979323846;

FeatureVector simulate_point(double r_eq, double e_eq, const SimConfig& sim) {
    const LungParams p = split_equivalent({r_eq, e_eq});
    return extract_features(simulate_bi(p, sim.pressure, sim.grid));
}

bool on_segment(const FeatureVector& p, const FeatureVector& a, const FeatureVector& b) {
    const double cross =
        (b.mu - a.mu) * (p.sigma - a.sigma) - (b.sigma - a.sigma) * (p.mu - a.mu);
    if (cross != 0.0) return false;
    const double dot =
        (p.mu - a.mu) * (b.mu - a.mu) + (p.sigma - a.sigma) * (b.sigma - a.sigma);
    const double len_sq =
        (b.mu - a.mu) * (b.mu - a.mu) + (b.sigma - a.sigma) * (b.sigma - a.sigma);
    return dot >= 0.0 && dot <= len_sq;
}

bool segments_intersect(const FeatureVector& a, const FeatureVector& b,
                        const FeatureVector& c, const FeatureVector& d) {
    const auto orient = [](const FeatureVector& p, const FeatureVector& q,
                           const FeatureVector& r) {
        const double v = (q.mu - p.mu) * (r.sigma - p.sigma) - (q.sigma - p.sigma) * (r.mu - p.mu);
        return (v > 0.0) - (v < 0.0);
    };
    const int o1 = orient(a, b, c);
    const int o2 = orient(a, b, d);
    const int o3 = orient(c, d, a);
    const int o4 = orient(c, d, b);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(c, a, b)) return true;
    if (o2 == 0 && on_segment(d, a, b)) return true;
    if (o3 == 0 && on_segment(a, c, d)) return true;
    if (o4 == 0 && on_segment(b, c, d)) return true;
    return false;
}

}  // namespace

void ParamRectangle::validate() const {
    if (!(r_min > 0.0) || !(e_min > 0.0)) {
        throw std::invalid_argument("rectangle bounds must be positive");
    }
    if (!(r_min < r_max) || !(e_min < e_max)) {
        throw std::invalid_argument("rectangle must have positive extent on both axes");
    }
}

FeaturePolygon map_rectangle_boundary(const ParamRectangle& rect, const SimConfig& sim,
                                      std::size_t samples_per_edge, ExecMode mode) {
    rect.validate();
    sim.validate();
    if (samples_per_edge < 1) {
        throw std::invalid_argument("samples_per_edge must be positive");
    }

    // Counterclockwise walk, each edge contributing samples_per_edge points
    // including its start corner and excluding its end corner.
    std::vector<std::pair<double, double>> params;
    params.reserve(4 * samples_per_edge);
    const double n = static_cast<double>(samples_per_edge);
    for (std::size_t k = 0; k < samples_per_edge; ++k) {
        const double t = static_cast<double>(k) / n;
        params.emplace_back(rect.r_min + t * (rect.r_max - rect.r_min), rect.e_min);
    }
    for (std::size_t k = 0; k < samples_per_edge; ++k) {
        const double t = static_cast<double>(k) / n;
        params.emplace_back(rect.r_max, rect.e_min + t * (rect.e_max - rect.e_min));
    }
    for (std::size_t k = 0; k < samples_per_edge; ++k) {
        const double t = static_cast<double>(k) / n;
        params.emplace_back(rect.r_max - t * (rect.r_max - rect.r_min), rect.e_max);
    }
    for (std::size_t k = 0; k < samples_per_edge; ++k) {
        const double t = static_cast<double>(k) / n;
        params.emplace_back(rect.r_min, rect.e_max - t * (rect.e_max - rect.e_min));
    }

    FeaturePolygon poly;
    poly.vertices.resize(params.size());
    std::exception_ptr error;
    parallel_for(params.size(), mode, [&](std::size_t i) {
        try {
            poly.vertices[i] = simulate_point(params[i].first, params[i].second, sim);
        } catch (...) {
#pragma omp critical
            error = std::current_exception();
        }
    });
    if (error) std::rethrow_exception(error);
    return poly;
}

bool contains(const FeaturePolygon& poly, const FeatureVector& f) {
    const auto& v = poly.vertices;
    if (v.size() < 3) {
        throw std::invalid_argument("polygon needs at least three vertices");
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::size_t j = (i + 1) % v.size();
        if (on_segment(f, v[i], v[j])) return true;
    }
    bool inside = false;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::size_t j = (i + 1) % v.size();
        const FeatureVector& a = v[i];
        const FeatureVector& b = v[j];
        if ((a.sigma > f.sigma) != (b.sigma > f.sigma)) {
            const double x_hit =
                a.mu + (f.sigma - a.sigma) / (b.sigma - a.sigma) * (b.mu - a.mu);
            if (x_hit > f.mu) inside = !inside;
        }
    }
    return inside;
}

ValidationResult validate_measurement(const FeaturePolygon& poly, const FeatureVector& f) {
    if (contains(poly, f)) {
        return {Verdict::Accepted, "measurement lies inside the physiological region"};
    }
    std::ostringstream msg;
    msg << "wrong acquisition: features (mu=" << f.mu << ", sigma=" << f.sigma
        << ") fall outside the physiological region";
    return {Verdict::WrongAcquisition, msg.str()};
}

ClassEllipse class_ellipse(const ClassSpec& spec) {
    spec.validate();
    if (!(spec.sigma_r > 0.0) || !(spec.sigma_e > 0.0)) {
        throw std::invalid_argument("zero-spread class spec has a degenerate ellipse");
    }
    return {spec.mean_r, spec.mean_e, 3.0 * spec.sigma_r, 3.0 * spec.sigma_e};
}

std::vector<FeatureVector> map_ellipse(const ClassEllipse& ellipse, const SimConfig& sim,
                                       std::size_t n_points, const PositivityFloors& floors,
                                       ExecMode mode) {
    sim.validate();
    if (n_points < 3) {
        throw std::invalid_argument("ellipse needs at least three boundary points");
    }
    if (!(ellipse.width > 0.0) || !(ellipse.height > 0.0)) {
        throw std::invalid_argument("degenerate ellipse");
    }
    if (ellipse.center_r - ellipse.width / 2.0 < floors.r_min ||
        ellipse.center_e - ellipse.height / 2.0 < floors.e_min) {
        throw std::invalid_argument("ellipse dips below the positivity floors");
    }
    std::vector<FeatureVector> curve(n_points);
    std::exception_ptr error;
    parallel_for(n_points, mode, [&](std::size_t i) {
        try {
            const double theta = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n_points);
            const double r = ellipse.center_r + ellipse.width / 2.0 * std::cos(theta);
            const double e = ellipse.center_e + ellipse.height / 2.0 * std::sin(theta);
            curve[i] = simulate_point(r, e, sim);
        } catch (...) {
#pragma omp critical
            error = std::current_exception();
        }
    });
    if (error) std::rethrow_exception(error);
    return curve;
}

double polygon_area(const FeaturePolygon& poly) {
    const auto& v = poly.vertices;
    if (v.size() < 3) return 0.0;
    double twice = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::size_t j = (i + 1) % v.size();
        twice += v[i].mu * v[j].sigma - v[j].mu * v[i].sigma;
    }
    return std::abs(twice) / 2.0;
}

bool polygon_self_intersects(const FeaturePolygon& poly) {
    const auto& v = poly.vertices;
    const std::size_t n = v.size();
    if (n < 4) return false;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            // Skip identical and adjacent edges (they share a vertex).
            if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
            if (segments_intersect(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n])) {
                return true;
            }
        }
    }
    return false;
}

}  // namespace tidalsim
