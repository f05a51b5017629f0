#pragma once

#include "nfis/dataset.hpp"
#include "nfis/model.hpp"

#include <string>
#include <vector>

namespace nfis {

/// Parameter lattices: r_max values crossed with lambda values. An empty
/// lambda axis means the kind's default; lambda only matters for NTSK-RLS.
struct GridSpec {
    std::vector<int> r_max_values;
    std::vector<double> lambda_values;
};

struct GridEvaluation {
    ModelHparams config;
    double error = 0.0;
    std::size_t rules = 0;
    bool failed = false;
};

struct GridResult {
    ModelHparams best;
    double best_error = 0.0;
    std::size_t best_rules = 0;
    std::vector<GridEvaluation> evaluations; // enumeration order: r_max outer, lambda inner
};

/// Exhaustive evaluation of the lattice: fit on `train`, score RMSE on
/// `val`. Ties break toward fewer rules, then toward the earlier point in
/// enumeration order. Failed fits score +infinity and stay in the log.
GridResult grid_search(ModelKind kind, const GridSpec& grid, const RegressionDataset& train,
                       const RegressionDataset& val);

} // namespace nfis
