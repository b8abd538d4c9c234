#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "tidalsim/learn.hpp"
#include "tidalsim/learn_detail.hpp"
#include "tidalsim/rng.hpp"

namespace tidalsim {

double gini_impurity(const std::array<double, kNumClasses>& counts) {
    double total = 0.0;
    for (const double c : counts) total += c;
    if (total <= 0.0) return 0.0;
    double sq = 0.0;
    for (const double c : counts) {
        const double p = c / total;
        sq += p * p;
    }
    return 1.0 - sq;
}

namespace {

struct SplitChoice {
    bool found = false;
    int feature = -1;
    double threshold = 0.0;
    double score = 0.0;  // weighted child impurity, lower is better
};

struct TreeBuilder {
    const DataMatrix& x;
    const std::vector<int>& y;
    const ForestConfig& cfg;
    Rng& rng;
    Tree& tree;
    std::vector<std::size_t> idx;          // sample indices, permuted in place
    std::vector<std::size_t> scratch;      // per-node sort buffer

    /// Best exhaustive midpoint split of idx[begin, end) over the candidate
    /// features. Ties break toward the smaller feature index, then the
    /// smaller threshold (features must arrive sorted).
    SplitChoice best_split(std::size_t begin, std::size_t end,
                           const std::vector<std::size_t>& features) {
        SplitChoice best;
        const double total = static_cast<double>(end - begin);
        for (const std::size_t f : features) {
            scratch.assign(idx.begin() + static_cast<std::ptrdiff_t>(begin),
                           idx.begin() + static_cast<std::ptrdiff_t>(end));
            std::sort(scratch.begin(), scratch.end(), [&](std::size_t a, std::size_t b) {
                const double va = x.at(a, f);
                const double vb = x.at(b, f);
                return va < vb || (va == vb && a < b);
            });
            std::array<double, kNumClasses> left{};
            std::array<double, kNumClasses> right{};
            for (const std::size_t s : scratch) right[static_cast<std::size_t>(y[s])] += 1.0;

            for (std::size_t k = 0; k + 1 < scratch.size(); ++k) {
                const auto cls = static_cast<std::size_t>(y[scratch[k]]);
                left[cls] += 1.0;
                right[cls] -= 1.0;
                const double lo = x.at(scratch[k], f);
                const double hi = x.at(scratch[k + 1], f);
                if (!(lo < hi)) continue;  // only between distinct values
                double threshold = (lo + hi) / 2.0;
                if (threshold >= hi) threshold = lo;  // adjacent floats round up

                const double nl = static_cast<double>(k + 1);
                const double nr = total - nl;
                const double score =
                    (nl * gini_impurity(left) + nr * gini_impurity(right)) / total;
                if (!best.found || score < best.score) {
                    best.found = true;
                    best.feature = static_cast<int>(f);
                    best.threshold = threshold;
                    best.score = score;
                }
            }
        }
        return best;
    }

    int build(std::size_t begin, std::size_t end) {
        std::array<double, kNumClasses> counts{};
        for (std::size_t k = begin; k < end; ++k) {
            counts[static_cast<std::size_t>(y[idx[k]])] += 1.0;
        }
        const double total = static_cast<double>(end - begin);

        const auto make_leaf = [&]() {
            TreeNode leaf;
            for (std::size_t c = 0; c < kNumClasses; ++c) leaf.proportions[c] = counts[c] / total;
            tree.nodes.push_back(leaf);
            return static_cast<int>(tree.nodes.size() - 1);
        };

        if (end - begin < 2 || gini_impurity(counts) == 0.0) {
            return make_leaf();
        }

        const std::size_t d = x.cols;
        std::vector<std::size_t> features(d);
        std::iota(features.begin(), features.end(), std::size_t{0});
        SplitChoice split;
        if (cfg.all_features || d == 1) {
            split = best_split(begin, end, features);
        } else {
            // Draw ceil(sqrt(d)) features without replacement.
            const auto m = static_cast<std::size_t>(
                std::ceil(std::sqrt(static_cast<double>(d))));
            for (std::size_t k = 0; k < m; ++k) {
                std::swap(features[k], features[k + rng.uniform_index(d - k)]);
            }
            std::vector<std::size_t> subset(features.begin(),
                                            features.begin() + static_cast<std::ptrdiff_t>(m));
            std::sort(subset.begin(), subset.end());
            split = best_split(begin, end, subset);
            if (!split.found) {
                // Drawn features were constant on this node; fall back to the
                // rest so an impure node is not frozen into a leaf.
                std::vector<std::size_t> rest;
                for (std::size_t f = 0; f < d; ++f) {
                    if (std::find(subset.begin(), subset.end(), f) == subset.end()) {
                        rest.push_back(f);
                    }
                }
                split = best_split(begin, end, rest);
            }
        }
        if (!split.found) {
            return make_leaf();
        }

        const auto f = static_cast<std::size_t>(split.feature);
        const double threshold = split.threshold;
        const auto mid_it = std::partition(
            idx.begin() + static_cast<std::ptrdiff_t>(begin),
            idx.begin() + static_cast<std::ptrdiff_t>(end),
            [&](std::size_t s) { return x.at(s, f) <= threshold; });
        const auto mid = static_cast<std::size_t>(mid_it - idx.begin());

        const int node_id = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();
        tree.nodes[static_cast<std::size_t>(node_id)].feature = split.feature;
        tree.nodes[static_cast<std::size_t>(node_id)].threshold = threshold;
        const int left_id = build(begin, mid);
        const int right_id = build(mid, end);
        tree.nodes[static_cast<std::size_t>(node_id)].left = left_id;
        tree.nodes[static_cast<std::size_t>(node_id)].right = right_id;
        return node_id;
    }
};

Tree fit_tree(const DataMatrix& x, const std::vector<int>& y, const ForestConfig& cfg,
              std::uint64_t tree_index) {
    Rng rng = Rng::stream(cfg.seed, tree_index);
    std::vector<std::size_t> idx(x.rows);
    if (cfg.bootstrap) {
        for (std::size_t i = 0; i < x.rows; ++i) idx[i] = rng.uniform_index(x.rows);
    } else {
        std::iota(idx.begin(), idx.end(), std::size_t{0});
    }
    Tree tree;
    TreeBuilder builder{x, y, cfg, rng, tree, std::move(idx), {}};
    builder.build(0, x.rows);
    return tree;
}

const TreeNode& descend(const Tree& tree, const double* x) {
    const TreeNode* node = &tree.nodes[0];
    while (node->feature >= 0) {
        const int next =
            x[static_cast<std::size_t>(node->feature)] <= node->threshold ? node->left
                                                                          : node->right;
        node = &tree.nodes[static_cast<std::size_t>(next)];
    }
    return *node;
}

}  // namespace

ForestModel fit_random_forest(const DataMatrix& x, const std::vector<int>& y,
                              const ForestConfig& cfg, ExecMode mode) {
    detail::validate_labels(x, y);
    if (cfg.n_trees < 1) {
        throw std::invalid_argument("forest needs at least one tree");
    }
    ForestModel m;
    m.dims = x.cols;
    m.trees.resize(static_cast<std::size_t>(cfg.n_trees));
    // Trees use streams keyed by (seed, tree index), so the fit is
    // reproducible no matter how the loop is scheduled.
    parallel_for(m.trees.size(), mode, [&](std::size_t t) {
        m.trees[t] = fit_tree(x, y, cfg, t);
    });
    return m;
}

namespace detail {

std::array<double, kNumClasses> score_forest(const ForestModel& m, const double* x) {
    std::array<double, kNumClasses> acc{};
    for (const Tree& tree : m.trees) {
        const TreeNode& leaf = descend(tree, x);
        for (std::size_t c = 0; c < kNumClasses; ++c) acc[c] += leaf.proportions[c];
    }
    const double n = static_cast<double>(m.trees.size());
    for (double& v : acc) v /= n;
    return acc;
}

}  // namespace detail

}  // namespace tidalsim
