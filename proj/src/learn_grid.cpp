#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "tidalsim/learn.hpp"
#include "tidalsim/learn_detail.hpp"
#include "tidalsim/rng.hpp"

namespace tidalsim {

namespace {

/// Stratified fold assignment: within each class the (shuffled) members are
/// dealt round-robin over the folds.
std::vector<int> stratified_folds(const std::vector<int>& y, int folds, std::uint64_t seed) {
    std::vector<int> fold_of(y.size(), 0);
    for (int c = 0; c < kNumClasses; ++c) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < y.size(); ++i) {
            if (y[i] == c) members.push_back(i);
        }
        Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(c));
        rng.shuffle(members);
        for (std::size_t k = 0; k < members.size(); ++k) {
            fold_of[members[k]] = static_cast<int>(k % static_cast<std::size_t>(folds));
        }
    }
    return fold_of;
}

}  // namespace

GridSearchResult grid_search_svm(const DataMatrix& x, const std::vector<int>& y,
                                 const std::vector<double>& gammas,
                                 const std::vector<double>& cs, int folds,
                                 std::uint64_t seed, double svm_tol, ExecMode mode) {
    detail::validate_labels(x, y);
    if (gammas.empty() || cs.empty()) {
        throw std::invalid_argument("grid search needs nonempty gamma and C grids");
    }
    if (folds < 2 || static_cast<std::size_t>(folds) > x.rows) {
        throw std::invalid_argument("fold count must be in [2, n]");
    }

    const std::vector<int> fold_of = stratified_folds(y, folds, seed);

    GridSearchResult res;
    res.gammas = gammas;
    res.cs = cs;
    res.accuracy.assign(gammas.size() * cs.size(), 0.0);

    // Cells are independent: same folds, no shared mutable state.
    std::exception_ptr error;
    parallel_for(res.accuracy.size(), mode, [&](std::size_t cell) {
        try {
            const std::size_t gi = cell / cs.size();
            const std::size_t ci = cell % cs.size();
            SvmConfig cfg;
            cfg.gamma = gammas[gi];
            cfg.c = cs[ci];
            cfg.tol = svm_tol;

            std::size_t correct = 0;
            std::size_t counted = 0;
            for (int fold = 0; fold < folds; ++fold) {
                std::vector<std::size_t> train_rows;
                std::vector<std::size_t> val_rows;
                for (std::size_t i = 0; i < x.rows; ++i) {
                    (fold_of[i] == fold ? val_rows : train_rows).push_back(i);
                }
                DataMatrix xt(train_rows.size(), x.cols);
                std::vector<int> yt(train_rows.size());
                for (std::size_t k = 0; k < train_rows.size(); ++k) {
                    const double* src = x.row(train_rows[k]);
                    std::copy(src, src + x.cols, xt.row(k));
                    yt[k] = y[train_rows[k]];
                }
                const SvmModel model = fit_svm_rbf(xt, yt, cfg);
                for (const std::size_t i : val_rows) {
                    const auto margins = detail::score_svm(model, x.row(i));
                    std::size_t best = 0;
                    for (std::size_t c = 1; c < kNumClasses; ++c) {
                        if (margins[c] > margins[best]) best = c;
                    }
                    correct += (static_cast<int>(best) == y[i]) ? 1 : 0;
                    ++counted;
                }
            }
            res.accuracy[cell] = static_cast<double>(correct) / static_cast<double>(counted);
        } catch (...) {
#pragma omp critical
            error = std::current_exception();
        }
    });
    if (error) std::rethrow_exception(error);

    res.best_accuracy = -1.0;
    for (std::size_t gi = 0; gi < gammas.size(); ++gi) {
        for (std::size_t ci = 0; ci < cs.size(); ++ci) {
            const double acc = res.at(gi, ci);
            const bool better =
                acc > res.best_accuracy ||
                (acc == res.best_accuracy &&
                 (cs[ci] < cs[res.best_c_index] ||
                  (cs[ci] == cs[res.best_c_index] && gammas[gi] < gammas[res.best_gamma_index])));
            if (better) {
                res.best_accuracy = acc;
                res.best_gamma_index = gi;
                res.best_c_index = ci;
            }
        }
    }
    return res;
}

}  // namespace tidalsim
