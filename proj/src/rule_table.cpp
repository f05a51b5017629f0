#include "nfis/rule_table.hpp"

#include <cctype>
#include <cstdio>
#include <sstream>

namespace nfis {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string consequent_label_for(const std::string& target) {
    std::string name = target;
    if (!name.empty()) name[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
    return "Next " + name;
}

template <typename Model>
RuleTable table_skeleton(const Model& model) {
    RuleTable table;
    table.attribute_names = model.attribute_names;
    table.consequent_label = consequent_label_for(model.target_name);
    return table;
}

} // namespace

RuleTable export_rule_table(const NmrModel& model) {
    RuleTable table = table_skeleton(model);
    for (const auto& rule : model.rules) {
        RuleTableRow row;
        for (const auto& set : rule.antecedent.sets) row.antecedents.emplace_back(set.mean, set.stddev);
        row.consequent = rule.range;
        row.support = rule.support;
        table.rows.push_back(std::move(row));
    }
    return table;
}

RuleTable export_rule_table(const NtskModel& model) {
    RuleTable table = table_skeleton(model);
    for (const auto& rule : model.rules) {
        RuleTableRow row;
        for (const auto& set : rule.antecedent.sets) row.antecedents.emplace_back(set.mean, set.stddev);
        row.consequent = rule.variation_range;
        row.support = rule.support;
        table.rows.push_back(std::move(row));
    }
    return table;
}

RuleTable export_rule_table(const FuzzyModel& model) {
    return std::visit([](const auto& m) { return export_rule_table(m); }, model);
}

std::string render_markdown(const RuleTable& table) {
    std::ostringstream out;
    out << "| Rule |";
    for (const auto& name : table.attribute_names) out << ' ' << name << " |";
    out << ' ' << table.consequent_label << " |\n";
    out << "|---|";
    for (std::size_t j = 0; j < table.attribute_names.size(); ++j) out << "---|";
    out << "---|\n";
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        out << "| " << (i + 1) << " |";
        for (const auto& [mean, sd] : row.antecedents)
            out << ' ' << fmt(mean) << " (" << fmt(sd) << ") |";
        out << " [" << fmt(row.consequent.lo) << ", " << fmt(row.consequent.hi) << "] |\n";
    }
    return out.str();
}

std::string render_csv(const RuleTable& table) {
    std::ostringstream out;
    out << "rule";
    for (const auto& name : table.attribute_names) out << ',' << name << "_mean," << name << "_std";
    out << ",consequent_lo,consequent_hi,support\n";
    char buf[64];
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        out << (i + 1);
        for (const auto& [mean, sd] : row.antecedents) {
            std::snprintf(buf, sizeof buf, ",%.10g,%.10g", mean, sd);
            out << buf;
        }
        std::snprintf(buf, sizeof buf, ",%.10g,%.10g,", row.consequent.lo, row.consequent.hi);
        out << buf << row.support << '\n';
    }
    return out.str();
}

} // namespace nfis
