#include "tidalsim/cohort.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tidalsim {

const char* label_name(Label label) {
    switch (label) {
        case Label::Healthy: return "healthy";
        case Label::Asthma: return "asthma";
        case Label::Fibrosis: return "fibrosis";
    }
    throw std::invalid_argument("unknown label value");
}

Label parse_label(std::string_view name) {
    if (name == "healthy") return Label::Healthy;
    if (name == "asthma") return Label::Asthma;
    if (name == "fibrosis") return Label::Fibrosis;
    throw std::invalid_argument("unknown label '" + std::string(name) + "'");
}

void ClassSpec::validate() const {
    if (!(mean_r > 0.0) || !(mean_e > 0.0)) {
        throw std::invalid_argument("class means must be positive");
    }
    if (!(sigma_r >= 0.0) || !(sigma_e >= 0.0)) {
        throw std::invalid_argument("class sigmas must be nonnegative");
    }
}

Preset parse_preset(std::string_view name) {
    if (name == "paper-stated") return Preset::PaperStated;
    if (name == "reproduction") return Preset::Reproduction;
    if (name == "spread-study") return Preset::SpreadStudy;
    throw std::invalid_argument("unknown preset '" + std::string(name) +
                                "' (expected paper-stated, reproduction or spread-study)");
}

const char* preset_name(Preset preset) {
    switch (preset) {
        case Preset::PaperStated: return "paper-stated";
        case Preset::Reproduction: return "reproduction";
        case Preset::SpreadStudy: return "spread-study";
    }
    throw std::invalid_argument("unknown preset value");
}

std::vector<ClassSpec> default_class_specs(Preset preset) {
    double sigma_r = 0.0;
    double sigma_e = 0.0;
    switch (preset) {
        case Preset::PaperStated:
            sigma_r = 0.5;
            sigma_e = 5.0;
            break;
        case Preset::Reproduction:
            sigma_r = 0.5;
            sigma_e = std::sqrt(5.0);
            break;
        case Preset::SpreadStudy:
            sigma_r = 1.0;
            sigma_e = 3.5;
            break;
    }
    return {
        {Label::Healthy, 3.0, 10.0, sigma_r, sigma_e},
        {Label::Asthma, 5.0, 10.0, sigma_r, sigma_e},
        {Label::Fibrosis, 3.0, 20.0, sigma_r, sigma_e},
    };
}

void CohortConfig::validate() const {
    if (specs.empty()) {
        throw std::invalid_argument("cohort needs at least one class spec");
    }
    for (const ClassSpec& spec : specs) spec.validate();
    for (std::size_t i = 0; i < specs.size(); ++i) {
        for (std::size_t j = i + 1; j < specs.size(); ++j) {
            if (specs[i].label == specs[j].label) {
                throw std::invalid_argument("duplicate class label in cohort config");
            }
        }
    }
    if (n_per_class == 0) {
        throw std::invalid_argument("n_per_class must be positive");
    }
    if (!(floors.r_min > 0.0) || !(floors.e_min > 0.0)) {
        throw std::invalid_argument("positivity floors must be positive");
    }
}

Subject sample_subject(const ClassSpec& spec, const PositivityFloors& floors, Rng& rng) {
    spec.validate();
    constexpr int kMaxRejections = 1000;
    int rejections = 0;
    for (;;) {
        const double r = rng.normal(spec.mean_r, spec.sigma_r);
        const double e = rng.normal(spec.mean_e, spec.sigma_e);
        if (r >= floors.r_min && e >= floors.e_min) {
            return {0, spec.label, {r, e}};
        }
        if (++rejections > kMaxRejections) {
            throw std::invalid_argument(
                "class spec for '" + std::string(label_name(spec.label)) +
                "' rejected more than 1000 consecutive draws against the positivity floors");
        }
    }
}

std::vector<Subject> generate_cohort(const CohortConfig& cfg, ExecMode mode) {
    cfg.validate();
    const std::size_t total = cfg.specs.size() * cfg.n_per_class;
    std::vector<Subject> subjects(total);
    // Exceptions cannot cross an OpenMP region; capture and rethrow.
    std::exception_ptr error;
    parallel_for(total, mode, [&](std::size_t id) {
        try {
            const ClassSpec& spec = cfg.specs[id / cfg.n_per_class];
            Rng rng = Rng::stream(cfg.seed, id);
            Subject s = sample_subject(spec, cfg.floors, rng);
            s.id = id;
            subjects[id] = s;
        } catch (...) {
#pragma omp critical
            error = std::current_exception();
        }
    });
    if (error) std::rethrow_exception(error);
    return subjects;
}

}  // namespace tidalsim
