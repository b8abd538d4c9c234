#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "tidalsim/cohort.hpp"

using namespace tidalsim;
using Catch::Matchers::WithinAbs;

TEST_CASE("labels and presets round-trip through their names") {
    for (const Label label : {Label::Healthy, Label::Asthma, Label::Fibrosis}) {
        REQUIRE(parse_label(label_name(label)) == label);
    }
    REQUIRE(std::string(label_name(Label::Healthy)) == "healthy");
    REQUIRE_THROWS_AS(parse_label("Healthy"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_label("copd"), std::invalid_argument);

    for (const Preset preset :
         {Preset::PaperStated, Preset::Reproduction, Preset::SpreadStudy}) {
        REQUIRE(parse_preset(preset_name(preset)) == preset);
    }
    REQUIRE_THROWS_AS(parse_preset("default"), std::invalid_argument);
}

TEST_CASE("default class specs encode the three conditions") {
    const auto specs = default_class_specs(Preset::Reproduction);
    REQUIRE(specs.size() == 3);
    REQUIRE(specs[0].label == Label::Healthy);
    REQUIRE(specs[0].mean_r == 3.0);
    REQUIRE(specs[0].mean_e == 10.0);
    REQUIRE(specs[1].label == Label::Asthma);
    REQUIRE(specs[1].mean_r == 5.0);
    REQUIRE(specs[1].mean_e == 10.0);
    REQUIRE(specs[2].label == Label::Fibrosis);
    REQUIRE(specs[2].mean_r == 3.0);
    REQUIRE(specs[2].mean_e == 20.0);
    for (const ClassSpec& spec : specs) {
        REQUIRE(spec.sigma_r == 0.5);
        REQUIRE(spec.sigma_e == std::sqrt(5.0));
    }

    for (const ClassSpec& spec : default_class_specs(Preset::PaperStated)) {
        REQUIRE(spec.sigma_r == 0.5);
        REQUIRE(spec.sigma_e == 5.0);
    }
    for (const ClassSpec& spec : default_class_specs(Preset::SpreadStudy)) {
        REQUIRE(spec.sigma_r == 1.0);
        REQUIRE(spec.sigma_e == 3.5);
    }
}

TEST_CASE("zero-spread specs collapse to the class means") {
    Rng rng(7);
    const ClassSpec spec{Label::Asthma, 5.0, 10.0, 0.0, 0.0};
    const Subject s = sample_subject(spec, PositivityFloors{}, rng);
    REQUIRE(s.label == Label::Asthma);
    REQUIRE(s.eq.r_eq == 5.0);
    REQUIRE(s.eq.e_eq == 10.0);
}

TEST_CASE("sampled moments match the class parameters") {
    const ClassSpec spec = default_class_specs(Preset::Reproduction)[0];
    const PositivityFloors floors;
    Rng rng = Rng::stream(123, 7);

    const std::size_t n = 100000;
    double sum_r = 0.0, sum_e = 0.0, sum_rr = 0.0, sum_ee = 0.0, sum_re = 0.0;
    double min_r = 1e300, min_e = 1e300;
    for (std::size_t i = 0; i < n; ++i) {
        const Subject s = sample_subject(spec, floors, rng);
        sum_r += s.eq.r_eq;
        sum_e += s.eq.e_eq;
        sum_rr += s.eq.r_eq * s.eq.r_eq;
        sum_ee += s.eq.e_eq * s.eq.e_eq;
        sum_re += s.eq.r_eq * s.eq.e_eq;
        min_r = std::min(min_r, s.eq.r_eq);
        min_e = std::min(min_e, s.eq.e_eq);
    }
    const double nd = static_cast<double>(n);
    const double mean_r = sum_r / nd;
    const double mean_e = sum_e / nd;
    const double var_r = sum_rr / nd - mean_r * mean_r;
    const double var_e = sum_ee / nd - mean_e * mean_e;
    const double cov = sum_re / nd - mean_r * mean_e;

    // Tolerances are three standard errors of the respective estimates.
    REQUIRE_THAT(mean_r, WithinAbs(3.0, 0.005));
    REQUIRE_THAT(mean_e, WithinAbs(10.0, 0.022));
    REQUIRE_THAT(std::sqrt(var_r), WithinAbs(0.5, 0.0035));
    REQUIRE_THAT(std::sqrt(var_e), WithinAbs(std::sqrt(5.0), 0.016));
    REQUIRE_THAT(cov / std::sqrt(var_r * var_e), WithinAbs(0.0, 0.01));
    REQUIRE(min_r >= floors.r_min);
    REQUIRE(min_e >= floors.e_min);
}

TEST_CASE("floors truncate draws and reject impossible specs") {
    const ClassSpec tight{Label::Healthy, 0.25, 10.0, 0.05, 1.0};
    Rng rng(11);
    for (int i = 0; i < 1000; ++i) {
        const Subject s = sample_subject(tight, PositivityFloors{}, rng);
        REQUIRE(s.eq.r_eq >= 0.2);
        REQUIRE(s.eq.e_eq >= 1.0);
    }

    // Mean far below the resistance floor with negligible spread: every draw
    // is rejected, and after 1000 consecutive rejections the sampler gives up.
    const ClassSpec impossible{Label::Healthy, 0.01, 10.0, 0.001, 1.0};
    REQUIRE_THROWS_WITH(sample_subject(impossible, PositivityFloors{}, rng),
                        Catch::Matchers::ContainsSubstring("rejected"));
}

TEST_CASE("cohort generation is deterministic and class-ordered") {
    CohortConfig cfg;
    cfg.specs = default_class_specs(Preset::Reproduction);
    cfg.n_per_class = 50;
    cfg.seed = 99;

    const auto a = generate_cohort(cfg);
    const auto b = generate_cohort(cfg);
    REQUIRE(a.size() == 150);
    REQUIRE(b.size() == 150);
    for (std::size_t i = 0; i < a.size(); ++i) {
        REQUIRE(a[i].id == i);
        REQUIRE(a[i].label == static_cast<Label>(i / 50));
        REQUIRE(a[i].eq.r_eq == b[i].eq.r_eq);
        REQUIRE(a[i].eq.e_eq == b[i].eq.e_eq);
    }

    // Each subject is a pure function of (seed, id), independent of cohort
    // evaluation order.
    for (const std::size_t k : {std::size_t{0}, std::size_t{73}, std::size_t{149}}) {
        Rng stream = Rng::stream(cfg.seed, k);
        const Subject direct = sample_subject(cfg.specs[k / 50], cfg.floors, stream);
        REQUIRE(a[k].eq.r_eq == direct.eq.r_eq);
        REQUIRE(a[k].eq.e_eq == direct.eq.e_eq);
    }

    CohortConfig other = cfg;
    other.seed = 100;
    const auto c = generate_cohort(other);
    bool any_diff = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        any_diff = any_diff || a[i].eq.r_eq != c[i].eq.r_eq;
    }
    REQUIRE(any_diff);
}

TEST_CASE("cohort config validation rejects bad setups") {
    CohortConfig cfg;
    cfg.specs = default_class_specs(Preset::Reproduction);

    CohortConfig empty = cfg;
    empty.specs.clear();
    REQUIRE_THROWS_AS(empty.validate(), std::invalid_argument);

    CohortConfig dup = cfg;
    dup.specs.push_back(dup.specs[0]);
    REQUIRE_THROWS_AS(dup.validate(), std::invalid_argument);

    CohortConfig zero = cfg;
    zero.n_per_class = 0;
    REQUIRE_THROWS_AS(zero.validate(), std::invalid_argument);

    CohortConfig floors = cfg;
    floors.floors.r_min = 0.0;
    REQUIRE_THROWS_AS(floors.validate(), std::invalid_argument);

    ClassSpec bad = cfg.specs[0];
    bad.mean_r = -3.0;
    REQUIRE_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg.specs[0];
    bad.sigma_e = -1.0;
    REQUIRE_THROWS_AS(bad.validate(), std::invalid_argument);
}
