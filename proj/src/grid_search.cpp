#include "nfis/grid_search.hpp"
#include "nfis/errors.hpp"
#include "nfis/metrics.hpp"

#include <limits>

namespace nfis {

GridResult grid_search(ModelKind kind, const GridSpec& grid, const RegressionDataset& train,
                       const RegressionDataset& val) {
    if (grid.r_max_values.empty()) throw ConfigError("grid_search: empty r_max lattice");
    std::vector<double> lambdas = grid.lambda_values;
    if (lambdas.empty() || kind != ModelKind::NtskRls) lambdas = {ModelHparams{}.lambda};

    GridResult result;
    bool have_best = false;
    for (int r_max : grid.r_max_values) {
        for (double lambda : lambdas) {
            GridEvaluation eval;
            eval.config = ModelHparams{r_max, lambda};
            try {
                const FuzzyModel model = fit_fuzzy(kind, train, eval.config);
                eval.error = rmse(val.y, predict(model, val.X));
                eval.rules = rule_count(model);
            } catch (const std::exception&) {
                eval.error = std::numeric_limits<double>::infinity();
                eval.failed = true;
            }
            const bool better =
                !have_best || eval.error < result.best_error ||
                (eval.error == result.best_error && eval.rules < result.best_rules);
            if (better) {
                result.best = eval.config;
                result.best_error = eval.error;
                result.best_rules = eval.rules;
                have_best = true;
            }
            result.evaluations.push_back(eval);
        }
    }
    return result;
}

} // namespace nfis
