#include "nfis/metrics.hpp"
#include "nfis/errors.hpp"

#include <algorithm>
#include <cmath>

namespace nfis {

namespace {

void check_lengths(const std::vector<double>& y, const std::vector<double>& y_hat) {
    if (y.empty()) throw DataError("metrics: empty vectors");
    if (y.size() != y_hat.size()) throw DataError("metrics: length mismatch");
}

} // namespace

double rmse(const std::vector<double>& y, const std::vector<double>& y_hat) {
    check_lengths(y, y_hat);
    double acc = 0.0;
    for (std::size_t k = 0; k < y.size(); ++k) {
        const double e = y[k] - y_hat[k];
        acc += e * e;
    }
    return std::sqrt(acc / static_cast<double>(y.size()));
}

double nrmse(const std::vector<double>& y, const std::vector<double>& y_hat) {
    const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
    const double amplitude = *hi - *lo;
    if (!(amplitude > 0.0)) throw NumericError("nrmse: zero denominator (constant target)");
    return rmse(y, y_hat) / amplitude;
}

double ndei(const std::vector<double>& y, const std::vector<double>& y_hat) {
    check_lengths(y, y_hat);
    double mean = 0.0;
    for (double v : y) mean += v;
    mean /= static_cast<double>(y.size());
    double var = 0.0;
    for (double v : y) var += (v - mean) * (v - mean);
    var /= static_cast<double>(y.size()); // population convention
    const double sd = std::sqrt(var);
    if (!(sd > 0.0)) throw NumericError("ndei: zero denominator (constant target)");
    return rmse(y, y_hat) / sd;
}

MapeResult mape_detailed(const std::vector<double>& y, const std::vector<double>& y_hat,
                         MapeZeroPolicy policy, double epsilon) {
    check_lengths(y, y_hat);
    MapeResult result;
    double acc = 0.0;
    std::size_t counted = 0;
    for (std::size_t k = 0; k < y.size(); ++k) {
        if (y[k] == 0.0 && policy == MapeZeroPolicy::Skip) {
            ++result.skipped;
            continue;
        }
        const double denom =
            policy == MapeZeroPolicy::Epsilon ? std::max(std::abs(y[k]), epsilon) : y[k];
        acc += std::abs(y[k] - y_hat[k]) / std::abs(denom);
        ++counted;
    }
    if (counted == 0) throw NumericError("mape: all targets are zero");
    result.value = acc / static_cast<double>(counted);
    return result;
}

double mape(const std::vector<double>& y, const std::vector<double>& y_hat) {
    return mape_detailed(y, y_hat).value;
}

MetricReport evaluate(const std::vector<double>& y, const std::vector<double>& y_hat,
                      const std::string& model_id, const std::string& dataset_id,
                      std::optional<std::size_t> rules, MapeZeroPolicy policy, double epsilon) {
    MetricReport report;
    report.model_id = model_id;
    report.dataset_id = dataset_id;
    report.rmse = rmse(y, y_hat);
    report.nrmse = nrmse(y, y_hat);
    report.ndei = ndei(y, y_hat);
    const MapeResult m = mape_detailed(y, y_hat, policy, epsilon);
    report.mape = m.value;
    report.mape_skipped = m.skipped;
    report.rules = rules;
    return report;
}

} // namespace nfis
