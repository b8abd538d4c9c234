#pragma once

#include <string>
#include <vector>

#include "tidalsim/cohort.hpp"
#include "tidalsim/eval.hpp"
#include "tidalsim/features.hpp"
#include "tidalsim/learn.hpp"
#include "tidalsim/lung_model.hpp"
#include "tidalsim/validity.hpp"

namespace tidalsim {

/// Shortest exact decimal representation at 17 significant digits.
std::string format_double(double value);

/// Signal CSV: header `t,v,v1,v2,p`, one row per grid sample. The pressure
/// column is re-evaluated from the profile.
void write_signal_csv(const VolumeSignal& sig, const PressureProfile& pp,
                      const std::string& path);

/// Cohort CSV: header `id,label,r_eq,e_eq`, lowercase label names.
void write_cohort_csv(const std::vector<Subject>& subjects, const std::string& path);

/// Feature CSV: header `id,label,mu,sigma`.
void write_features_csv(const std::vector<Subject>& subjects,
                        const std::vector<FeatureVector>& features,
                        const std::string& path);

/// Loop CSV: `# <kind> loop` comment line, then header `x,y`.
void write_loop_csv(const LoopCurve& loop, const std::string& path);

/// Polygon CSV: header `mu,sigma`, vertices in walk order.
void write_polygon_csv(const FeaturePolygon& poly, const std::string& path);

/// ROC CSV: header `class,fpr,tpr`; per-class staircases then the macro
/// curve under class name `macro`.
void write_roc_csv(const RocCurve& roc, const std::string& path);

/// Region CSV: header `x,y,label`, row-major over the grid.
void write_region_csv(const RegionGrid& grid, const std::string& path);

/// Grid-search CSV: header row of C values, one row per gamma.
void write_grid_csv(const GridSearchResult& grid, const std::string& path);

/// Measurements CSV parser for validity probes: header `mu,sigma`.
std::vector<FeatureVector> read_measurements_csv(const std::string& path);

/// Whole-file read (binary, for byte comparisons).
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace tidalsim
