#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace nfis {

/// sqrt(mean squared error). Throws on empty or mismatched vectors.
double rmse(const std::vector<double>& y, const std::vector<double>& y_hat);

/// RMSE / (max(y) - min(y)). Throws NumericError("zero denominator") on a
/// constant target.
double nrmse(const std::vector<double>& y, const std::vector<double>& y_hat);

/// RMSE / population std of y. Same zero-denominator rule as nrmse.
double ndei(const std::vector<double>& y, const std::vector<double>& y_hat);

enum class MapeZeroPolicy { Skip, Epsilon };

struct MapeResult {
    double value = 0.0;
    std::size_t skipped = 0; // zero-target samples excluded under Skip
};

/// Mean of |y - y_hat| / y. Zero targets are skipped and counted by
/// default; Epsilon mode divides by max(|y|, epsilon) instead.
MapeResult mape_detailed(const std::vector<double>& y, const std::vector<double>& y_hat,
                         MapeZeroPolicy policy = MapeZeroPolicy::Skip, double epsilon = 1e-8);

double mape(const std::vector<double>& y, const std::vector<double>& y_hat);

/// One benchmark row. `rules` is absent for ensembles and forests.
struct MetricReport {
    std::string model_id;
    std::string dataset_id;
    double nrmse = 0.0;
    double ndei = 0.0;
    double mape = 0.0;
    double rmse = 0.0;
    std::optional<std::size_t> rules;
    std::size_t mape_skipped = 0;
};

MetricReport evaluate(const std::vector<double>& y, const std::vector<double>& y_hat,
                      const std::string& model_id, const std::string& dataset_id,
                      std::optional<std::size_t> rules = std::nullopt,
                      MapeZeroPolicy policy = MapeZeroPolicy::Skip, double epsilon = 1e-8);

} // namespace nfis
