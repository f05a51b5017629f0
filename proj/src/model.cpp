#include "nfis/model.hpp"

#include <type_traits>

namespace nfis {

FuzzyModel fit_fuzzy(ModelKind kind, const RegressionDataset& ds, const ModelHparams& hp) {
    switch (kind) {
    case ModelKind::Nmr:
        return fit_nmr(ds, hp.r_max);
    case ModelKind::NtskRls:
        return fit_ntsk(ds, hp.r_max, NtskSolver::Rls, hp.lambda);
    case ModelKind::NtskWrls:
    default:
        return fit_ntsk(ds, hp.r_max, NtskSolver::Wrls);
    }
}

double predict(const FuzzyModel& model, const std::vector<double>& x) {
    return std::visit(
        [&](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, NmrModel>)
                return predict_nmr(m, x);
            else
                return predict_ntsk(m, x);
        },
        model);
}

std::vector<double> predict(const FuzzyModel& model,
                            const std::vector<std::vector<double>>& rows) {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) out.push_back(predict(model, row));
    return out;
}

std::size_t rule_count(const FuzzyModel& model) {
    return std::visit([](const auto& m) { return m.rules.size(); }, model);
}

const char* model_kind_name(ModelKind kind) {
    switch (kind) {
    case ModelKind::Nmr:
        return "nmr";
    case ModelKind::NtskRls:
        return "ntsk-rls";
    case ModelKind::NtskWrls:
    default:
        return "ntsk-wrls";
    }
}

} // namespace nfis
