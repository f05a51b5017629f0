#include "nfis/dataset.hpp"
#include "nfis/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace nfis {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    bool quoted = false;
    for (char c : line) {
        if (c == '"') {
            quoted = !quoted;
        } else if (c == ',' && !quoted) {
            cells.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    cells.push_back(cur);
    return cells;
}

bool is_missing(const std::string& cell) {
    std::string t = lower(trim(cell));
    return t.empty() || t == "na" || t == "nan" || t == "null";
}

bool parse_number(const std::string& cell, double& out) {
    const std::string t = trim(cell);
    if (t.empty()) return false;
    std::size_t pos = 0;
    try {
        out = std::stod(t, &pos);
    } catch (const std::exception&) {
        return false;
    }
    return pos == t.size();
}

// Days since 1970-01-01 (proleptic Gregorian), for ISO date columns.
long civil_to_days(int y, int m, int d) {
    y -= m <= 2;
    const long era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<long>(doe) - 719468;
}

bool parse_timestamp(const std::string& cell, double& out) {
    if (parse_number(cell, out)) return true;
    // ISO style: YYYY-MM-DD or YYYY/MM/DD, optional trailing time-of-day.
    int y = 0, m = 0, d = 0;
    const std::string t = trim(cell);
    if (std::sscanf(t.c_str(), "%d-%d-%d", &y, &m, &d) == 3 ||
        std::sscanf(t.c_str(), "%d/%d/%d", &y, &m, &d) == 3) {
        if (m >= 1 && m <= 12 && d >= 1 && d <= 31) {
            out = static_cast<double>(civil_to_days(y, m, d));
            return true;
        }
    }
    return false;
}

bool is_timestamp_name(const std::string& name) {
    const std::string n = lower(trim(name));
    return n == "date" || n == "time" || n == "timestamp" || n == "datetime";
}

} // namespace

bool TimeSeriesFrame::has_column(const std::string& name) const {
    return std::find(column_names.begin(), column_names.end(), name) != column_names.end();
}

const std::vector<double>& TimeSeriesFrame::column(const std::string& name) const {
    for (std::size_t i = 0; i < column_names.size(); ++i)
        if (column_names[i] == name) return columns[i];
    throw DataError("column not found: " + name);
}

TimeSeriesFrame load_csv(const std::string& path, const std::string& target_column,
                         bool drop_na) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw DataError("empty file: " + path);

    const std::vector<std::string> header = split_line(line);
    std::size_t ts_col = header.size(); // sentinel: no timestamp column
    TimeSeriesFrame frame;
    for (std::size_t j = 0; j < header.size(); ++j) {
        const std::string name = trim(header[j]);
        if (ts_col == header.size() && is_timestamp_name(name)) {
            ts_col = j;
        } else {
            frame.column_names.push_back(name);
        }
    }
    if (frame.column_names.empty()) throw DataError("no data columns in " + path);
    for (std::size_t a = 0; a < frame.column_names.size(); ++a)
        for (std::size_t b = a + 1; b < frame.column_names.size(); ++b)
            if (frame.column_names[a] == frame.column_names[b])
                throw DataError(path + ": duplicate column name: " + frame.column_names[a]);
    if (std::find(frame.column_names.begin(), frame.column_names.end(), target_column) ==
        frame.column_names.end())
        throw DataError("target column absent: " + target_column);
    frame.columns.resize(frame.column_names.size());

    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        const std::vector<std::string> cells = split_line(line);
        if (cells.size() != header.size())
            throw DataError(path + ":" + std::to_string(row) + ": expected " +
                            std::to_string(header.size()) + " cells, got " +
                            std::to_string(cells.size()));
        std::vector<double> values;
        values.reserve(frame.column_names.size());
        double ts = 0.0;
        bool missing = false;
        std::size_t out_j = 0;
        for (std::size_t j = 0; j < cells.size(); ++j) {
            if (j == ts_col) {
                if (!parse_timestamp(cells[j], ts))
                    throw DataError(path + ":" + std::to_string(row) +
                                    ": unparseable timestamp '" + trim(cells[j]) + "'");
                continue;
            }
            double v = nan;
            if (is_missing(cells[j])) {
                missing = true;
            } else if (!parse_number(cells[j], v)) {
                throw DataError(path + ":" + std::to_string(row) + ": non-numeric cell '" +
                                trim(cells[j]) + "' in column " + frame.column_names[out_j]);
            }
            values.push_back(v);
            ++out_j;
        }
        if (missing && drop_na) continue;
        for (std::size_t j = 0; j < values.size(); ++j) frame.columns[j].push_back(values[j]);
        if (ts_col != header.size()) frame.timestamps.push_back(ts);
    }

    for (std::size_t k = 1; k < frame.timestamps.size(); ++k)
        if (!(frame.timestamps[k] > frame.timestamps[k - 1]))
            throw DataError(path + ": timestamps not strictly increasing at row " +
                            std::to_string(k + 1));
    return frame;
}

RegressionDataset make_supervised(const TimeSeriesFrame& frame, const std::string& target,
                                  int horizon, int lags) {
    if (horizon < 1) throw ConfigError("horizon must be >= 1");
    if (lags < 0) throw ConfigError("lags must be >= 0");
    if (!frame.has_column(target)) throw DataError("target column absent: " + target);

    const std::size_t T = frame.length();
    const std::size_t needed = static_cast<std::size_t>(horizon) + static_cast<std::size_t>(lags) + 1;
    if (T < needed)
        throw DataError("frame too short: " + std::to_string(T) + " rows, need at least " +
                        std::to_string(needed));

    const std::vector<double>& target_series = frame.column(target);
    RegressionDataset ds;
    ds.target_name = target;
    for (int lag = 0; lag <= lags; ++lag) {
        for (const std::string& name : frame.column_names) {
            ds.attribute_names.push_back(lag == 0 ? name : name + "_lag" + std::to_string(lag));
        }
    }

    const std::size_t first = static_cast<std::size_t>(lags);
    const std::size_t last = T - static_cast<std::size_t>(horizon); // exclusive
    for (std::size_t k = first; k < last; ++k) {
        std::vector<double> row;
        row.reserve(ds.attribute_names.size());
        for (int lag = 0; lag <= lags; ++lag)
            for (const auto& col : frame.columns) row.push_back(col[k - static_cast<std::size_t>(lag)]);
        ds.X.push_back(std::move(row));
        ds.y.push_back(target_series[k + static_cast<std::size_t>(horizon)]);
    }
    return ds;
}

std::pair<RegressionDataset, RegressionDataset>
chronological_split(const RegressionDataset& ds, double train_fraction) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw ConfigError("train_fraction must lie in (0, 1)");
    const std::size_t T = ds.num_samples();
    const std::size_t n_train =
        static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(T)));
    if (n_train == 0 || n_train == T)
        throw DataError("split produces an empty side (T=" + std::to_string(T) + ", fraction=" +
                        std::to_string(train_fraction) + ")");

    RegressionDataset train, test;
    train.attribute_names = test.attribute_names = ds.attribute_names;
    train.target_name = test.target_name = ds.target_name;
    train.X.assign(ds.X.begin(), ds.X.begin() + static_cast<std::ptrdiff_t>(n_train));
    train.y.assign(ds.y.begin(), ds.y.begin() + static_cast<std::ptrdiff_t>(n_train));
    test.X.assign(ds.X.begin() + static_cast<std::ptrdiff_t>(n_train), ds.X.end());
    test.y.assign(ds.y.begin() + static_cast<std::ptrdiff_t>(n_train), ds.y.end());
    return {std::move(train), std::move(test)};
}

RegressionDataset select_attributes(const RegressionDataset& ds,
                                    const std::vector<std::size_t>& keep) {
    if (keep.empty()) throw ConfigError("attribute selection must keep at least one attribute");
    RegressionDataset out;
    out.target_name = ds.target_name;
    out.y = ds.y;
    for (std::size_t j : keep) {
        if (j >= ds.num_attributes())
            throw ConfigError("attribute index out of range: " + std::to_string(j));
        out.attribute_names.push_back(ds.attribute_names[j]);
    }
    out.X.reserve(ds.X.size());
    for (const auto& row : ds.X) out.X.push_back(apply_mask(row, keep));
    return out;
}

std::vector<double> apply_mask(const std::vector<double>& x,
                               const std::vector<std::size_t>& keep) {
    std::vector<double> out;
    out.reserve(keep.size());
    for (std::size_t j : keep) out.push_back(x.at(j));
    return out;
}

std::vector<std::size_t> mask_to_indices(const std::vector<std::uint8_t>& mask) {
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < mask.size(); ++j)
        if (mask[j]) idx.push_back(j);
    return idx;
}

void save_dataset_csv(const RegressionDataset& ds, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file: " + path);
    for (const auto& name : ds.attribute_names) out << name << ',';
    out << ds.target_name << '\n';
    char buf[64];
    for (std::size_t k = 0; k < ds.num_samples(); ++k) {
        for (double v : ds.X[k]) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out << buf << ',';
        }
        std::snprintf(buf, sizeof buf, "%.17g", ds.y[k]);
        out << buf << '\n';
    }
}

RegressionDataset load_dataset_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty file: " + path);
    std::vector<std::string> header = split_line(line);
    if (header.size() < 2) throw DataError(path + ": need at least one attribute and a target");

    RegressionDataset ds;
    ds.target_name = trim(header.back());
    for (std::size_t j = 0; j + 1 < header.size(); ++j)
        ds.attribute_names.push_back(trim(header[j]));

    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        const std::vector<std::string> cells = split_line(line);
        if (cells.size() != header.size())
            throw DataError(path + ":" + std::to_string(row) + ": malformed row");
        std::vector<double> x(cells.size() - 1);
        for (std::size_t j = 0; j + 1 < cells.size(); ++j)
            if (!parse_number(cells[j], x[j]))
                throw DataError(path + ":" + std::to_string(row) + ": non-numeric cell");
        double target = 0.0;
        if (!parse_number(cells.back(), target))
            throw DataError(path + ":" + std::to_string(row) + ": non-numeric target");
        ds.X.push_back(std::move(x));
        ds.y.push_back(target);
    }
    return ds;
}

} // namespace nfis
