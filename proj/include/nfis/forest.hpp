#pragma once

#include "nfis/dataset.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace nfis {

/// Binary split node; leaves carry the mean target of their samples.
/// Children are indices into the owning tree's node vector (-1 for leaves).
struct TreeNode {
    int attribute = -1;
    double threshold = 0.0;
    double value = 0.0;
    int left = -1;
    int right = -1;
    bool is_leaf() const { return left < 0; }
};

struct RegressionTree {
    std::vector<TreeNode> nodes; // node 0 is the root
};

struct ForestConfig {
    int n_trees = 100;
    int max_depth = 16;
    int min_samples_leaf = 2;
    double feature_fraction = -1.0; // negative: ceil(p/3) features per split
    bool bootstrap = true;
    std::uint64_t seed = 42;
};

struct RandomForest {
    std::vector<RegressionTree> trees;
    ForestConfig config;
    std::vector<std::string> attribute_names;
    std::string target_name = "target";
    int horizon = 1;
    int lags = 0;
};

/// Bagged variance-reduction trees: bootstrap resampling at full sample
/// size, a random feature subset per split, midpoint thresholds between
/// sorted unique values.
RandomForest fit_random_forest(const RegressionDataset& ds, const ForestConfig& cfg);

double predict_tree(const RegressionTree& tree, const std::vector<double>& x);

/// Mean of the per-tree predictions.
double predict_forest(const RandomForest& forest, const std::vector<double>& x);
std::vector<double> predict_forest(const RandomForest& forest,
                                   const std::vector<std::vector<double>>& rows);

} // namespace nfis
