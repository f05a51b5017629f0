#pragma once

#include "nfis/model.hpp"

#include <string>
#include <vector>

namespace nfis {

/// Interpretable view of a fitted rule base: one row per rule with
/// "mean (std)" antecedent cells in raw attribute units and the consequent
/// interval (target range for NMR, expected target variation for NTSK).
struct RuleTableRow {
    std::vector<std::pair<double, double>> antecedents; // (mean, std) per attribute
    ValueRange consequent;
    std::size_t support = 0;
};

struct RuleTable {
    std::vector<std::string> attribute_names;
    std::string consequent_label;
    std::vector<RuleTableRow> rows;
};

RuleTable export_rule_table(const NmrModel& model);
RuleTable export_rule_table(const NtskModel& model);
RuleTable export_rule_table(const FuzzyModel& model);

std::string render_markdown(const RuleTable& table);
std::string render_csv(const RuleTable& table);

} // namespace nfis
