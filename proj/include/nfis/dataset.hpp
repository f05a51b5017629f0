#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace nfis {

/// Named numeric series of uniform length, optionally timestamped.
/// Column order follows the source CSV header.
struct TimeSeriesFrame {
    std::vector<std::string> column_names;
    std::vector<std::vector<double>> columns; // column-major, equal lengths
    std::vector<double> timestamps;           // empty when the CSV has no date column

    std::size_t length() const { return columns.empty() ? 0 : columns.front().size(); }
    std::size_t num_columns() const { return columns.size(); }
    bool has_column(const std::string& name) const;
    const std::vector<double>& column(const std::string& name) const;
};

/// Supervised regression set: T samples by p attributes plus an aligned
/// target vector. Rows keep the chronological order of the source series.
struct RegressionDataset {
    std::vector<std::vector<double>> X; // T rows, each of length p
    std::vector<double> y;              // length T
    std::vector<std::string> attribute_names;
    std::string target_name = "target";

    std::size_t num_samples() const { return X.size(); }
    std::size_t num_attributes() const { return attribute_names.size(); }
};

/// Reads a comma-separated, '.'-decimal, UTF-8 CSV with a header row.
/// A column named date/time/timestamp (case-insensitive) becomes the
/// timestamp sequence; ISO dates (YYYY-MM-DD) are converted to day numbers.
/// Cells that are empty or read na/nan/null count as missing; with drop_na
/// the whole row is removed, otherwise the cell is kept as NaN.
TimeSeriesFrame load_csv(const std::string& path, const std::string& target_column,
                         bool drop_na = true);

/// Builds the one-step-ahead (or `horizon`-step) supervised set: row k holds
/// every attribute at time k plus, when lags > 0, replicated columns at
/// k-1..k-lags; y[k] is the target at time k+horizon.
RegressionDataset make_supervised(const TimeSeriesFrame& frame, const std::string& target,
                                  int horizon = 1, int lags = 0);

/// First floor(train_fraction * T) samples vs. the remainder, no shuffling.
std::pair<RegressionDataset, RegressionDataset>
chronological_split(const RegressionDataset& ds, double train_fraction);

/// Restricts the dataset to the attribute indices in `keep` (original order).
RegressionDataset select_attributes(const RegressionDataset& ds,
                                    const std::vector<std::size_t>& keep);

/// Projects a full input vector onto the selected attribute indices.
std::vector<double> apply_mask(const std::vector<double>& x,
                               const std::vector<std::size_t>& keep);

/// Converts a 0/1 attribute mask into the list of selected indices.
std::vector<std::size_t> mask_to_indices(const std::vector<std::uint8_t>& mask);

/// Columnar CSV cache of a dataset: attribute columns then the target column.
void save_dataset_csv(const RegressionDataset& ds, const std::string& path);
RegressionDataset load_dataset_csv(const std::string& path);

} // namespace nfis
