#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "tidalsim/error.hpp"
#include "tidalsim/learn.hpp"
#include "tidalsim/learn_detail.hpp"
#include "tidalsim/rng.hpp"

using namespace tidalsim;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

struct Clusters {
    DataMatrix x;
    std::vector<int> y;
};

Clusters make_clusters(std::size_t per_class, double spread, std::uint64_t seed,
                       std::array<std::array<double, 2>, 3> centers = {
                           {{0.0, 0.0}, {6.0, 0.0}, {0.0, 6.0}}}) {
    Clusters out;
    out.x = DataMatrix(3 * per_class, 2);
    out.y.resize(3 * per_class);
    for (std::size_t c = 0; c < 3; ++c) {
        Rng rng = Rng::stream(seed, c);
        for (std::size_t i = 0; i < per_class; ++i) {
            const std::size_t row = c * per_class + i;
            out.x.at(row, 0) = centers[c][0] + spread * rng.normal();
            out.x.at(row, 1) = centers[c][1] + spread * rng.normal();
            out.y[row] = static_cast<int>(c);
        }
    }
    return out;
}

ScalerParams identity_scaler(std::size_t dims) {
    return ScalerParams{std::vector<double>(dims, 0.0), std::vector<double>(dims, 1.0)};
}

std::size_t argmax3(const std::array<double, kNumClasses>& s) {
    std::size_t best = 0;
    for (std::size_t c = 1; c < kNumClasses; ++c) {
        if (s[c] > s[best]) best = c;
    }
    return best;
}

}  // namespace

TEST_CASE("scaler computes column means and population stds with a floor") {
    DataMatrix x(3, 2);
    const double rows[3][2] = {{1.0, 10.0}, {3.0, 10.0}, {5.0, 10.0}};
    for (std::size_t i = 0; i < 3; ++i) {
        x.at(i, 0) = rows[i][0];
        x.at(i, 1) = rows[i][1];
    }

    const ScalerParams sp = fit_scaler(x);
    REQUIRE(sp.mean.size() == 2);
    REQUIRE(sp.mean[0] == 3.0);
    REQUIRE(sp.mean[1] == 10.0);
    REQUIRE_THAT(sp.std[0], WithinRel(std::sqrt(8.0 / 3.0), 1e-15));
    // Constant column: population std is zero, floored so scaling is defined.
    REQUIRE(sp.std[1] == 1e-12);

    const DataMatrix xs = apply_scaler(sp, x);
    REQUIRE_THAT(xs.at(0, 0), WithinRel(-2.0 / std::sqrt(8.0 / 3.0), 1e-15));
    REQUIRE(xs.at(1, 0) == 0.0);
    REQUIRE_THAT(xs.at(2, 0), WithinRel(2.0 / std::sqrt(8.0 / 3.0), 1e-15));
    for (std::size_t i = 0; i < 3; ++i) REQUIRE(xs.at(i, 1) == 0.0);

    double out[2];
    apply_scaler_row(sp, x.row(2), out);
    REQUIRE(out[0] == xs.at(2, 0));
    REQUIRE(out[1] == xs.at(2, 1));
}

TEST_CASE("gaussian NB recovers hand moments and matches brute-force posteriors") {
    // Two points per class placed so every class variance is exactly one.
    DataMatrix x(6, 2);
    const double rows[6][2] = {{0.0, 0.0}, {2.0, 2.0}, {4.0, 0.0},
                               {6.0, 2.0}, {1.0, 5.0}, {3.0, 7.0}};
    for (std::size_t i = 0; i < 6; ++i) {
        x.at(i, 0) = rows[i][0];
        x.at(i, 1) = rows[i][1];
    }
    const std::vector<int> y = {0, 0, 1, 1, 2, 2};

    const GaussianNbModel m = fit_gaussian_nb(x, y);
    REQUIRE(m.dims == 2);
    const double expected_mean[3][2] = {{1.0, 1.0}, {5.0, 1.0}, {2.0, 6.0}};
    for (std::size_t c = 0; c < 3; ++c) {
        REQUIRE_THAT(m.prior[c], WithinRel(1.0 / 3.0, 1e-15));
        REQUIRE(m.mean[c * 2] == expected_mean[c][0]);
        REQUIRE(m.mean[c * 2 + 1] == expected_mean[c][1]);
        // Smoothing adds 1e-9 times the widest overall column variance (59/9).
        REQUIRE_THAT(m.var[c * 2], WithinRel(1.0 + 59.0 / 9.0 * 1e-9, 1e-12));
        REQUIRE_THAT(m.var[c * 2 + 1], WithinRel(1.0 + 59.0 / 9.0 * 1e-9, 1e-12));
    }

    const double probes[5][2] = {
        {1.5, 2.5}, {4.0, 1.0}, {2.0, 6.0}, {-3.0, 10.0}, {100.0, -50.0}};
    for (const auto& p : probes) {
        // Independent Bayes computation in log space from the model moments.
        std::array<double, kNumClasses> logp{};
        for (std::size_t c = 0; c < kNumClasses; ++c) {
            double lp = std::log(m.prior[c]);
            for (std::size_t j = 0; j < 2; ++j) {
                const double var = m.var[c * 2 + j];
                const double d = p[j] - m.mean[c * 2 + j];
                lp -= 0.5 * (std::log(2.0 * M_PI * var) + d * d / var);
            }
            logp[c] = lp;
        }
        const double top = std::max({logp[0], logp[1], logp[2]});
        std::array<double, kNumClasses> expect{};
        double norm = 0.0;
        for (std::size_t c = 0; c < kNumClasses; ++c) {
            expect[c] = std::exp(logp[c] - top);
            norm += expect[c];
        }
        for (double& e : expect) e /= norm;

        const auto got = detail::score_gaussian_nb(m, p);
        double sum = 0.0;
        for (std::size_t c = 0; c < kNumClasses; ++c) {
            REQUIRE_THAT(got[c], WithinAbs(expect[c], 1e-9));
            sum += got[c];
        }
        REQUIRE_THAT(sum, WithinAbs(1.0, 1e-12));
    }

    TrainedModel tm{identity_scaler(2), m};
    REQUIRE(tm.kind() == ClassifierKind::GaussianNb);
    const double near_healthy[2] = {1.5, 2.5};
    REQUIRE(predict(tm, near_healthy, 2) == Label::Healthy);
}

TEST_CASE("logistic gradient matches central finite differences") {
    DataMatrix x(9, 2);
    const double rows[9][2] = {{0.2, 1.1},  {-0.5, 0.3}, {1.4, -0.7},
                               {2.1, 0.4},  {-1.3, 1.8}, {0.9, 2.2},
                               {-0.4, -1.9}, {1.7, 1.3},  {0.6, -0.2}};
    for (std::size_t i = 0; i < 9; ++i) {
        x.at(i, 0) = rows[i][0];
        x.at(i, 1) = rows[i][1];
    }
    const std::vector<int> y = {0, 1, 2, 0, 1, 2, 0, 1, 2};
    const std::vector<double> w = {0.1, -0.2, 0.3, 0.05, -0.1, 0.2};
    const std::array<double, kNumClasses> b = {0.01, -0.02, 0.03};
    const double l2 = 0.7;

    std::vector<double> grad_w;
    std::array<double, kNumClasses> grad_b{};
    detail::logistic_gradient(x, y, w, b, l2, grad_w, grad_b);
    REQUIRE(grad_w.size() == 6);

    const double h = 1e-6;
    double max_grad = 0.0;
    for (std::size_t k = 0; k < 6; ++k) {
        std::vector<double> wp = w, wm = w;
        wp[k] += h;
        wm[k] -= h;
        const double fd = (detail::logistic_loss(x, y, wp, b, l2) -
                           detail::logistic_loss(x, y, wm, b, l2)) /
                          (2.0 * h);
        REQUIRE_THAT(grad_w[k], WithinAbs(fd, 1e-5));
        max_grad = std::max(max_grad, std::abs(grad_w[k]));
    }
    for (std::size_t c = 0; c < kNumClasses; ++c) {
        std::array<double, kNumClasses> bp = b, bm = b;
        bp[c] += h;
        bm[c] -= h;
        const double fd = (detail::logistic_loss(x, y, w, bp, l2) -
                           detail::logistic_loss(x, y, w, bm, l2)) /
                          (2.0 * h);
        REQUIRE_THAT(grad_b[c], WithinAbs(fd, 1e-5));
    }
    REQUIRE(max_grad > 1e-3);  // the probe point is not a stationary point
}

TEST_CASE("logistic fit converges on clean clusters and lowers the loss") {
    const Clusters data = make_clusters(12, 0.4, 13);
    const ScalerParams sp = fit_scaler(data.x);
    const DataMatrix xs = apply_scaler(sp, data.x);

    const LogisticConfig cfg;
    const LogisticModel m = fit_logistic(xs, data.y, cfg);
    REQUIRE(m.converged);
    REQUIRE(m.iterations >= 1);

    std::size_t correct = 0;
    for (std::size_t i = 0; i < xs.rows; ++i) {
        if (argmax3(detail::score_logistic(m, xs.row(i))) ==
            static_cast<std::size_t>(data.y[i])) {
            ++correct;
        }
    }
    REQUIRE(correct == xs.rows);

    const std::vector<double> zero_w(6, 0.0);
    const std::array<double, kNumClasses> zero_b{};
    const double loss_fit = detail::logistic_loss(xs, data.y, m.weights, m.bias, cfg.l2);
    const double loss_zero = detail::logistic_loss(xs, data.y, zero_w, zero_b, cfg.l2);
    REQUIRE_THAT(loss_zero, WithinRel(static_cast<double>(xs.rows) * std::log(3.0), 1e-12));
    REQUIRE(loss_fit < loss_zero);
}

TEST_CASE("perceptron converges on integer-separable data with integer weights") {
    // Integer coordinates and eta=1 keep every weight update on the integer
    // lattice, so the learned parameters must be exact integers.
    DataMatrix x(9, 2);
    const double rows[9][2] = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0},
                               {10.0, 0.0}, {11.0, 1.0}, {10.0, 1.0},
                               {0.0, 10.0}, {1.0, 11.0}, {0.0, 11.0}};
    for (std::size_t i = 0; i < 9; ++i) {
        x.at(i, 0) = rows[i][0];
        x.at(i, 1) = rows[i][1];
    }
    const std::vector<int> y = {0, 0, 0, 1, 1, 1, 2, 2, 2};

    PerceptronConfig cfg;
    cfg.seed = 3;
    const PerceptronModel m = fit_perceptron(x, y, cfg);
    REQUIRE(m.converged);
    REQUIRE(m.epochs_run >= 1);
    REQUIRE(m.epochs_run < cfg.max_epochs);
    for (const double w : m.weights) REQUIRE(w == std::nearbyint(w));
    for (const double b : m.bias) REQUIRE(b == std::nearbyint(b));

    TrainedModel tm{identity_scaler(2), m};
    for (std::size_t i = 0; i < x.rows; ++i) {
        REQUIRE(static_cast<int>(predict(tm, x.row(i), 2)) == y[i]);
    }
}

TEST_CASE("perceptron reports non-convergence on contradictory labels") {
    DataMatrix x(3, 2);
    x.at(0, 0) = 1.0;
    x.at(0, 1) = 1.0;
    x.at(1, 0) = 1.0;
    x.at(1, 1) = 1.0;
    x.at(2, 0) = 5.0;
    x.at(2, 1) = 5.0;
    const std::vector<int> y = {0, 1, 2};  // identical point with two labels

    PerceptronConfig cfg;
    cfg.max_epochs = 40;
    const PerceptronModel m = fit_perceptron(x, y, cfg);
    REQUIRE_FALSE(m.converged);
    REQUIRE(m.epochs_run == cfg.max_epochs);
}

TEST_CASE("binary SMO solves the four-point toy problem to its known optimum") {
    // Points -2,-1 (negative) and 1,2 (positive) with gamma=0.1, C=100. The
    // optimum keeps only the inner pair as support vectors with equal duals
    // alpha = 1/(1 - exp(-0.4)) and zero bias; the outer pair sits beyond
    // margin one, so its duals rest exactly on the lower box bound.
    const double xs[4] = {-2.0, -1.0, 1.0, 2.0};
    const std::vector<double> yb = {-1.0, -1.0, 1.0, 1.0};
    std::vector<double> kernel(16);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            const double d = xs[i] - xs[j];
            kernel[i * 4 + j] = std::exp(-0.1 * d * d);
        }
    }

    const detail::SmoResult r = detail::solve_binary_smo(kernel, 4, yb, 100.0, 1e-8, 200000);
    REQUIRE(r.converged);

    const double a = 1.0 / (1.0 - std::exp(-0.4));
    REQUIRE_THAT(r.alpha[0], WithinAbs(0.0, 1e-12));
    REQUIRE_THAT(r.alpha[3], WithinAbs(0.0, 1e-12));
    REQUIRE_THAT(r.alpha[1], WithinRel(a, 1e-6));
    REQUIRE_THAT(r.alpha[2] - r.alpha[1], WithinAbs(0.0, 1e-12));
    REQUIRE_THAT(r.bias, WithinAbs(0.0, 1e-7));

    double equality = 0.0;
    for (std::size_t i = 0; i < 4; ++i) equality += yb[i] * r.alpha[i];
    REQUIRE_THAT(equality, WithinAbs(0.0, 1e-12));

    const auto decide = [&](double q) {
        double z = r.bias;
        for (std::size_t i = 0; i < 4; ++i) {
            const double d = q - xs[i];
            z += r.alpha[i] * yb[i] * std::exp(-0.1 * d * d);
        }
        return z;
    };
    REQUIRE_THAT(decide(1.0), WithinAbs(1.0, 1e-6));
    REQUIRE_THAT(decide(-1.0), WithinAbs(-1.0, 1e-6));
    REQUIRE_THAT(decide(2.0), WithinRel(a * (std::exp(-0.1) - std::exp(-0.9)), 1e-5));
    REQUIRE_THAT(decide(0.0), WithinAbs(0.0, 1e-7));
}

TEST_CASE("SVM duals satisfy the box and equality constraints") {
    const Clusters data =
        make_clusters(30, 1.2, 77, {{{0.0, 0.0}, {2.5, 0.0}, {0.0, 2.5}}});
    SvmConfig cfg;
    cfg.gamma = 0.5;
    cfg.c = 1.0;
    const SvmModel m = fit_svm_rbf(data.x, data.y, cfg);
    REQUIRE(m.dims == 2);
    REQUIRE(m.support.cols == 2);
    REQUIRE(m.support.rows >= 1);

    for (std::size_t c = 0; c < kNumClasses; ++c) {
        const BinarySvm& bin = m.ovr[c];
        REQUIRE(bin.converged);
        REQUIRE(bin.support_indices.size() == bin.coeff.size());
        REQUIRE(!bin.coeff.empty());
        double equality = 0.0;
        for (std::size_t s = 0; s < bin.coeff.size(); ++s) {
            REQUIRE(bin.support_indices[s] < m.support.rows);
            REQUIRE(std::abs(bin.coeff[s]) <= cfg.c + 1e-9);
            REQUIRE(std::abs(bin.coeff[s]) > 0.0);
            equality += bin.coeff[s];
        }
        // Non-support rows carry zero dual, so the support sum is the whole sum.
        REQUIRE_THAT(equality, WithinAbs(0.0, 1e-9));
    }

    TrainedModel tm{identity_scaler(2), m};
    std::size_t correct = 0;
    for (std::size_t i = 0; i < data.x.rows; ++i) {
        if (static_cast<int>(predict(tm, data.x.row(i), 2)) == data.y[i]) ++correct;
    }
    REQUIRE(correct >= 75 * data.x.rows / 100);
}

TEST_CASE("gini impurity hand values") {
    REQUIRE(gini_impurity({2.0, 2.0, 0.0}) == 0.5);
    REQUIRE(gini_impurity({4.0, 0.0, 0.0}) == 0.0);
    REQUIRE_THAT(gini_impurity({1.0, 1.0, 1.0}), WithinRel(2.0 / 3.0, 1e-15));
    REQUIRE(gini_impurity({0.0, 0.0, 0.0}) == 0.0);
}

TEST_CASE("single tree reproduces the brute-force split on a four-sample set") {
    // Labels 0,0,1,2 on feature values 0,1,2,3; feature 1 is constant. The
    // best weighted Gini (0.25) is the midpoint split at 1.5, and the right
    // child then separates labels 1 and 2 at 2.5.
    DataMatrix x(4, 2);
    for (std::size_t i = 0; i < 4; ++i) {
        x.at(i, 0) = static_cast<double>(i);
        x.at(i, 1) = 0.0;
    }
    const std::vector<int> y = {0, 0, 1, 2};

    ForestConfig cfg;
    cfg.n_trees = 1;
    cfg.all_features = true;
    cfg.bootstrap = false;
    const ForestModel m = fit_random_forest(x, y, cfg);
    REQUIRE(m.trees.size() == 1);
    const Tree& t = m.trees[0];
    REQUIRE(t.nodes.size() == 5);

    REQUIRE(t.nodes[0].feature == 0);
    REQUIRE(t.nodes[0].threshold == 1.5);
    const TreeNode& left = t.nodes[static_cast<std::size_t>(t.nodes[0].left)];
    const TreeNode& right = t.nodes[static_cast<std::size_t>(t.nodes[0].right)];
    REQUIRE(left.feature < 0);
    REQUIRE(left.proportions == std::array<double, kNumClasses>{1.0, 0.0, 0.0});
    REQUIRE(right.feature == 0);
    REQUIRE(right.threshold == 2.5);

    const double p1[2] = {0.5, 0.0};
    const double p2[2] = {2.2, 0.0};
    const double p3[2] = {3.7, 0.0};
    const double edge[2] = {1.5, 0.0};  // boundary value goes left
    REQUIRE(detail::score_forest(m, p1) == std::array<double, kNumClasses>{1.0, 0.0, 0.0});
    REQUIRE(detail::score_forest(m, p2) == std::array<double, kNumClasses>{0.0, 1.0, 0.0});
    REQUIRE(detail::score_forest(m, p3) == std::array<double, kNumClasses>{0.0, 0.0, 1.0});
    REQUIRE(detail::score_forest(m, edge) == std::array<double, kNumClasses>{1.0, 0.0, 0.0});
}

TEST_CASE("single unbagged tree memorizes training data with distinct values") {
    DataMatrix x(30, 2);
    std::vector<int> y(30);
    Rng rng(91);
    for (std::size_t i = 0; i < 30; ++i) {
        x.at(i, 0) = static_cast<double>(i);
        x.at(i, 1) = rng.uniform(-1.0, 1.0);
        y[i] = static_cast<int>(i % 3);
    }

    ForestConfig cfg;
    cfg.n_trees = 1;
    cfg.all_features = true;
    cfg.bootstrap = false;
    const ForestModel m = fit_random_forest(x, y, cfg);
    for (std::size_t i = 0; i < 30; ++i) {
        const auto s = detail::score_forest(m, x.row(i));
        REQUIRE(argmax3(s) == static_cast<std::size_t>(y[i]));
        REQUIRE(s[static_cast<std::size_t>(y[i])] == 1.0);  // pure leaves
    }
}

TEST_CASE("forest fits are deterministic in the seed") {
    const Clusters data = make_clusters(20, 0.8, 5);
    ForestConfig cfg;
    cfg.n_trees = 10;
    cfg.seed = 42;
    const ForestModel m1 = fit_random_forest(data.x, data.y, cfg);
    const ForestModel m2 = fit_random_forest(data.x, data.y, cfg);
    const std::string j1 = model_to_json(TrainedModel{identity_scaler(2), m1});
    const std::string j2 = model_to_json(TrainedModel{identity_scaler(2), m2});
    REQUIRE(j1 == j2);

    cfg.seed = 43;
    const ForestModel m3 = fit_random_forest(data.x, data.y, cfg);
    REQUIRE(model_to_json(TrainedModel{identity_scaler(2), m3}) != j1);
}

TEST_CASE("grid search scores every cell and tie-breaks toward the first") {
    const Clusters data = make_clusters(12, 0.3, 9);
    const std::vector<double> gammas = {0.5, 1.0};
    const std::vector<double> cs = {1.0, 10.0};

    const GridSearchResult r = grid_search_svm(data.x, data.y, gammas, cs, 3, 4);
    REQUIRE(r.gammas == gammas);
    REQUIRE(r.cs == cs);
    REQUIRE(r.accuracy.size() == 4);
    for (std::size_t gi = 0; gi < 2; ++gi) {
        for (std::size_t ci = 0; ci < 2; ++ci) {
            // Widely separated clusters: every cell classifies perfectly.
            REQUIRE(r.at(gi, ci) == 1.0);
            REQUIRE(r.at(gi, ci) == r.accuracy[gi * 2 + ci]);
        }
    }
    // All cells tie, so the winner is the smallest C, then smallest gamma.
    REQUIRE(r.best_gamma_index == 0);
    REQUIRE(r.best_c_index == 0);
    REQUIRE(r.best_accuracy == 1.0);

    const GridSearchResult again = grid_search_svm(data.x, data.y, gammas, cs, 3, 4);
    REQUIRE(again.accuracy == r.accuracy);

    REQUIRE_THROWS_AS(grid_search_svm(data.x, data.y, gammas, cs, 1, 4),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(grid_search_svm(data.x, data.y, gammas, cs, 37, 4),
                      std::invalid_argument);
}

TEST_CASE("serialization round-trips every model kind bit for bit") {
    const Clusters data = make_clusters(15, 0.5, 11);
    const ScalerParams sp = fit_scaler(data.x);
    const DataMatrix xs = apply_scaler(sp, data.x);
    LearnConfig lc;
    lc.forest.n_trees = 15;
    lc.perceptron.max_epochs = 200;

    const ClassifierKind kinds[] = {ClassifierKind::GaussianNb, ClassifierKind::Logistic,
                                    ClassifierKind::Perceptron, ClassifierKind::SvmRbf,
                                    ClassifierKind::RandomForest};
    for (const ClassifierKind kind : kinds) {
        INFO("classifier " << classifier_name(kind));
        const TrainedModel tm = train_classifier(kind, xs, data.y, sp, lc);
        REQUIRE(tm.kind() == kind);

        const std::string j1 = model_to_json(tm);
        const TrainedModel tm2 = model_from_json(j1);
        REQUIRE(tm2.kind() == kind);
        REQUIRE(model_to_json(tm2) == j1);

        const std::size_t probe_rows[] = {0, 7, 22, 44};
        for (const std::size_t i : probe_rows) {
            const auto s1 = score(tm, data.x.row(i), 2);
            const auto s2 = score(tm2, data.x.row(i), 2);
            for (std::size_t c = 0; c < kNumClasses; ++c) REQUIRE(s1[c] == s2[c]);
        }
    }
}

TEST_CASE("model files survive a save/load cycle and reject bad input") {
    const Clusters data = make_clusters(10, 0.5, 17);
    const ScalerParams sp = fit_scaler(data.x);
    const DataMatrix xs = apply_scaler(sp, data.x);
    const TrainedModel tm = train_classifier(ClassifierKind::GaussianNb, xs, data.y, sp, {});
    const std::string j1 = model_to_json(tm);

    const std::string path = "tidalsim_test_model.json";
    save_model(tm, path);
    const TrainedModel loaded = load_model(path);
    REQUIRE(model_to_json(loaded) == j1);
    std::remove(path.c_str());

    REQUIRE_THROWS_AS(load_model("no_such_directory/model.json"), IoError);
    REQUIRE_THROWS_AS(save_model(tm, "no_such_directory/model.json"), IoError);

    std::string bad_version = j1;
    const std::string tag = "\"format_version\":1";
    const std::size_t pos = bad_version.find(tag);
    REQUIRE(pos != std::string::npos);
    bad_version.replace(pos, tag.size(), "\"format_version\":7");
    REQUIRE_THROWS_AS(model_from_json(bad_version), std::invalid_argument);

    REQUIRE_THROWS(model_from_json("this is not json"));
}

TEST_CASE("all five classifiers separate clean clusters at training time") {
    const Clusters data = make_clusters(20, 0.25, 21);
    const ScalerParams sp = fit_scaler(data.x);
    const DataMatrix xs = apply_scaler(sp, data.x);
    LearnConfig lc;
    lc.forest.n_trees = 25;

    const ClassifierKind kinds[] = {ClassifierKind::GaussianNb, ClassifierKind::Logistic,
                                    ClassifierKind::Perceptron, ClassifierKind::SvmRbf,
                                    ClassifierKind::RandomForest};
    for (const ClassifierKind kind : kinds) {
        INFO("classifier " << classifier_name(kind));
        const TrainedModel tm = train_classifier(kind, xs, data.y, sp, lc);
        std::size_t correct = 0;
        for (std::size_t i = 0; i < data.x.rows; ++i) {
            if (static_cast<int>(predict(tm, data.x.row(i), 2)) == data.y[i]) ++correct;
        }
        REQUIRE(correct == data.x.rows);

        // Probabilistic kinds return a distribution over classes.
        if (kind == ClassifierKind::GaussianNb || kind == ClassifierKind::Logistic ||
            kind == ClassifierKind::RandomForest) {
            const auto s = score(tm, data.x.row(0), 2);
            REQUIRE_THAT(s[0] + s[1] + s[2], WithinAbs(1.0, 1e-9));
        }
    }
}

TEST_CASE("exact score ties break toward the healthy class") {
    PerceptronModel pm;
    pm.dims = 2;
    pm.weights.assign(kNumClasses * 2, 0.0);
    const TrainedModel tm{identity_scaler(2), pm};
    const double probe[2] = {3.7, -1.2};
    const auto s = score(tm, probe, 2);
    REQUIRE(s == std::array<double, kNumClasses>{0.0, 0.0, 0.0});
    REQUIRE(predict(tm, probe, 2) == Label::Healthy);
}

TEST_CASE("label validation rejects malformed training sets") {
    DataMatrix x(4, 2);
    for (std::size_t i = 0; i < 4; ++i) {
        x.at(i, 0) = static_cast<double>(i);
        x.at(i, 1) = 1.0;
    }

    REQUIRE_THROWS_AS(fit_gaussian_nb(x, {0, 0, 1, 1}), FitError);          // no class 2
    REQUIRE_THROWS_AS(fit_gaussian_nb(x, {0, 1}), std::invalid_argument);   // size mismatch
    REQUIRE_THROWS_AS(fit_gaussian_nb(x, {0, 1, 5, 2}), std::invalid_argument);
    REQUIRE_THROWS_AS(fit_gaussian_nb(x, {0, 1, -1, 2}), std::invalid_argument);
    REQUIRE_THROWS_AS(fit_gaussian_nb(DataMatrix(), {}), FitError);
}

TEST_CASE("classifier names round-trip through the parser") {
    const std::pair<ClassifierKind, const char*> table[] = {
        {ClassifierKind::GaussianNb, "gaussian_nb"},
        {ClassifierKind::Logistic, "logistic"},
        {ClassifierKind::Perceptron, "perceptron"},
        {ClassifierKind::SvmRbf, "svm_rbf"},
        {ClassifierKind::RandomForest, "random_forest"},
    };
    for (const auto& [kind, name] : table) {
        REQUIRE(std::string(classifier_name(kind)) == name);
        REQUIRE(parse_classifier(name) == kind);
    }
    REQUIRE_THROWS_AS(parse_classifier("rbf"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_classifier(""), std::invalid_argument);
}
