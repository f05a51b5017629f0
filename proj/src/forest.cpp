#include "nfis/forest.hpp"
#include "nfis/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace nfis {

namespace {

struct SplitCandidate {
    int attribute = -1;
    double threshold = 0.0;
    double sse = std::numeric_limits<double>::infinity();
};

double subset_mean(const RegressionDataset& ds, const std::vector<std::size_t>& idx) {
    double m = 0.0;
    for (std::size_t k : idx) m += ds.y[k];
    return m / static_cast<double>(idx.size());
}

// Best variance-reduction split of `idx` along `attr`, honoring the leaf
// minimum. Scans midpoints between consecutive distinct sorted values with
// running sums, so each attribute costs one sort plus one pass.
SplitCandidate best_split_on(const RegressionDataset& ds, const std::vector<std::size_t>& idx,
                             int attr, int min_leaf) {
    std::vector<std::size_t> order = idx;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return ds.X[a][static_cast<std::size_t>(attr)] < ds.X[b][static_cast<std::size_t>(attr)];
    });

    const std::size_t n = order.size();
    double total_sum = 0.0, total_sq = 0.0;
    for (std::size_t k : order) {
        total_sum += ds.y[k];
        total_sq += ds.y[k] * ds.y[k];
    }

    SplitCandidate best;
    best.attribute = attr;
    double left_sum = 0.0, left_sq = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const std::size_t k = order[i];
        left_sum += ds.y[k];
        left_sq += ds.y[k] * ds.y[k];
        const double xi = ds.X[k][static_cast<std::size_t>(attr)];
        const double xj = ds.X[order[i + 1]][static_cast<std::size_t>(attr)];
        if (xi == xj) continue; // can only cut between distinct values
        const std::size_t n_left = i + 1, n_right = n - n_left;
        if (n_left < static_cast<std::size_t>(min_leaf) ||
            n_right < static_cast<std::size_t>(min_leaf))
            continue;
        const double right_sum = total_sum - left_sum;
        const double right_sq = total_sq - left_sq;
        const double sse = (left_sq - left_sum * left_sum / static_cast<double>(n_left)) +
                           (right_sq - right_sum * right_sum / static_cast<double>(n_right));
        if (sse < best.sse) {
            best.sse = sse;
            best.threshold = 0.5 * (xi + xj);
        }
    }
    return best;
}

int build_node(RegressionTree& tree, const RegressionDataset& ds,
               const std::vector<std::size_t>& idx, int depth, const ForestConfig& cfg,
               std::size_t features_per_split, std::mt19937_64& rng) {
    const int node_id = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    tree.nodes[static_cast<std::size_t>(node_id)].value = subset_mean(ds, idx);

    if (depth >= cfg.max_depth || idx.size() < 2 * static_cast<std::size_t>(cfg.min_samples_leaf))
        return node_id;

    const std::size_t p = ds.num_attributes();
    std::vector<int> attrs(p);
    std::iota(attrs.begin(), attrs.end(), 0);
    for (std::size_t j = 0; j < features_per_split && j + 1 < p; ++j) {
        std::uniform_int_distribution<std::size_t> pick(j, p - 1);
        std::swap(attrs[j], attrs[pick(rng)]);
    }
    attrs.resize(std::min(features_per_split, p));

    SplitCandidate best;
    for (int attr : attrs) {
        const SplitCandidate cand = best_split_on(ds, idx, attr, cfg.min_samples_leaf);
        if (cand.sse < best.sse) best = cand;
    }
    if (!(best.sse < std::numeric_limits<double>::infinity())) return node_id;

    std::vector<std::size_t> left_idx, right_idx;
    for (std::size_t k : idx) {
        if (ds.X[k][static_cast<std::size_t>(best.attribute)] <= best.threshold)
            left_idx.push_back(k);
        else
            right_idx.push_back(k);
    }

    const int left = build_node(tree, ds, left_idx, depth + 1, cfg, features_per_split, rng);
    const int right = build_node(tree, ds, right_idx, depth + 1, cfg, features_per_split, rng);
    TreeNode& node = tree.nodes[static_cast<std::size_t>(node_id)];
    node.attribute = best.attribute;
    node.threshold = best.threshold;
    node.left = left;
    node.right = right;
    return node_id;
}

} // namespace

RandomForest fit_random_forest(const RegressionDataset& ds, const ForestConfig& cfg) {
    if (ds.num_samples() == 0) throw DataError("fit_random_forest: empty dataset");
    if (cfg.n_trees < 1) throw ConfigError("forest: n_trees must be >= 1");
    if (cfg.max_depth < 0) throw ConfigError("forest: max_depth must be >= 0");
    if (cfg.min_samples_leaf < 1) throw ConfigError("forest: min_samples_leaf must be >= 1");

    const std::size_t p = ds.num_attributes();
    const std::size_t features_per_split =
        cfg.feature_fraction > 0.0
            ? std::max<std::size_t>(1, static_cast<std::size_t>(
                                           std::ceil(cfg.feature_fraction * static_cast<double>(p))))
            : std::max<std::size_t>(1, (p + 2) / 3); // ceil(p/3)

    RandomForest forest;
    forest.config = cfg;
    forest.attribute_names = ds.attribute_names;
    forest.target_name = ds.target_name;
    forest.trees.reserve(static_cast<std::size_t>(cfg.n_trees));

    const std::size_t T = ds.num_samples();
    for (int t = 0; t < cfg.n_trees; ++t) {
        // Independent stream per tree keeps results order-independent.
        std::mt19937_64 rng(cfg.seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(t + 1));
        std::vector<std::size_t> idx(T);
        if (cfg.bootstrap) {
            std::uniform_int_distribution<std::size_t> pick(0, T - 1);
            for (auto& k : idx) k = pick(rng);
        } else {
            std::iota(idx.begin(), idx.end(), std::size_t{0});
        }
        RegressionTree tree;
        build_node(tree, ds, idx, 0, cfg, features_per_split, rng);
        forest.trees.push_back(std::move(tree));
    }
    return forest;
}

double predict_tree(const RegressionTree& tree, const std::vector<double>& x) {
    const TreeNode* node = &tree.nodes.front();
    while (!node->is_leaf()) {
        const int next = x[static_cast<std::size_t>(node->attribute)] <= node->threshold
                             ? node->left
                             : node->right;
        node = &tree.nodes[static_cast<std::size_t>(next)];
    }
    return node->value;
}

double predict_forest(const RandomForest& forest, const std::vector<double>& x) {
    double acc = 0.0;
    for (const auto& tree : forest.trees) acc += predict_tree(tree, x);
    return acc / static_cast<double>(forest.trees.size());
}

std::vector<double> predict_forest(const RandomForest& forest,
                                   const std::vector<std::vector<double>>& rows) {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) out.push_back(predict_forest(forest, row));
    return out;
}

} // namespace nfis
