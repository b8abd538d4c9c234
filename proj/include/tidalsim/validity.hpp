#pragma once

#include <string>
#include <vector>

#include "tidalsim/cohort.hpp"
#include "tidalsim/features.hpp"
#include "tidalsim/lung_model.hpp"
#include "tidalsim/parallel.hpp"

namespace tidalsim {

/// Axis-aligned box of plausible equivalent parameters. Defaults bracket the
/// healthy/asthma/fibrosis population with generous margins.
struct ParamRectangle {
    double r_min = 1.0;
    double r_max = 8.0;
    double e_min = 4.0;
    double e_max = 32.0;

    void validate() const;  // requires r_min < r_max, e_min < e_max, positive
};

/// Closed polygon in (mu, sigma) feature space; the edge between the last and
/// first vertex is implicit.
struct FeaturePolygon {
    std::vector<FeatureVector> vertices;
};

/// Walks the rectangle boundary counterclockwise with samples_per_edge points
/// per edge (corners included once), simulates each parameter pair through
/// the two-compartment model and collects the feature images. Simulation
/// failure at any boundary point aborts construction.
FeaturePolygon map_rectangle_boundary(const ParamRectangle& rect, const SimConfig& sim,
                                      std::size_t samples_per_edge = 200,
                                      ExecMode mode = ExecMode::Serial);

/// Edge-inclusive point-in-polygon test (ray casting; points exactly on an
/// edge count as inside).
bool contains(const FeaturePolygon& poly, const FeatureVector& f);

enum class Verdict { Accepted, WrongAcquisition };

struct ValidationResult {
    Verdict verdict = Verdict::Accepted;
    std::string message;
};

/// Accepts measurements inside the polygon; everything else is flagged as a
/// wrong acquisition.
ValidationResult validate_measurement(const FeaturePolygon& poly, const FeatureVector& f);

/// Parameter-space ellipse of one class: centered on the class means with
/// full width 3*sigma_r and full height 3*sigma_e. Rejects zero spreads
/// (degenerate ellipse).
struct ClassEllipse {
    double center_r = 0.0;
    double center_e = 0.0;
    double width = 0.0;
    double height = 0.0;
};

ClassEllipse class_ellipse(const ClassSpec& spec);

/// Maps n points of the ellipse boundary through the simulator into feature
/// space. Throws std::invalid_argument if the ellipse dips below the
/// positivity floors.
std::vector<FeatureVector> map_ellipse(const ClassEllipse& ellipse, const SimConfig& sim,
                                       std::size_t n_points = 256,
                                       const PositivityFloors& floors = {},
                                       ExecMode mode = ExecMode::Serial);

/// Shoelace area (absolute value).
double polygon_area(const FeaturePolygon& poly);

/// True if any two non-adjacent edges intersect.
bool polygon_self_intersects(const FeaturePolygon& poly);

}  // namespace tidalsim
