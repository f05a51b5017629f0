#include <doctest.h>

#include "nfis/errors.hpp"
#include "nfis/model_io.hpp"

#include <filesystem>
#include <random>

using namespace nfis;

namespace {

namespace fs = std::filesystem;

RegressionDataset make_dataset(std::uint64_t seed, std::size_t p = 3, std::size_t T = 120) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    RegressionDataset ds;
    for (std::size_t j = 0; j < p; ++j) ds.attribute_names.push_back("a" + std::to_string(j));
    ds.target_name = "power";
    for (std::size_t k = 0; k < T; ++k) {
        std::vector<double> row(p);
        for (auto& v : row) v = gauss(rng);
        ds.X.push_back(row);
        ds.y.push_back(row[0] - 0.5 * row[1] + 0.2 * gauss(rng));
    }
    return ds;
}

std::string temp_file(const std::string& name) {
    return (fs::temp_directory_path() / name).string();
}

} // namespace

TEST_CASE("nmr model JSON round-trip preserves predictions") {
    const RegressionDataset ds = make_dataset(3);
    const NmrModel model = fit_nmr(ds, 4);
    const std::string path = temp_file("nfis_nmr.json");
    save_model(ModelAny{model}, path);
    const ModelAny back = load_model(path);
    REQUIRE(std::holds_alternative<NmrModel>(back));
    const NmrModel& loaded = std::get<NmrModel>(back);
    CHECK(loaded.rules.size() == model.rules.size());
    CHECK(loaded.target_name == "power");
    for (int q = 0; q < 20; ++q) {
        const std::vector<double> x = {0.1 * q, -0.05 * q, 0.2};
        CHECK(predict_nmr(loaded, x) == doctest::Approx(predict_nmr(model, x)).epsilon(1e-12));
    }
}

TEST_CASE("ntsk model JSON round-trip preserves solver and thetas") {
    const RegressionDataset ds = make_dataset(5);
    const NtskModel model = fit_ntsk(ds, 3, NtskSolver::Rls, 0.97);
    const std::string path = temp_file("nfis_ntsk.json");
    save_model(ModelAny{model}, path);
    const ModelAny back = load_model(path);
    const NtskModel& loaded = std::get<NtskModel>(back);
    CHECK(loaded.solver == NtskSolver::Rls);
    CHECK(loaded.lambda == doctest::Approx(0.97));
    REQUIRE(loaded.rules.size() == model.rules.size());
    for (std::size_t i = 0; i < model.rules.size(); ++i)
        CHECK(loaded.rules[i].theta == model.rules[i].theta);
}

TEST_CASE("ensemble manifest lists member files and reloads") {
    const RegressionDataset ds = make_dataset(7);
    EnsembleConfig cfg;
    cfg.n_members = 3;
    cfg.z = 2;
    cfg.seed = 5;
    const Ensemble e = fit_random_ensemble(ModelKind::NtskWrls, ds, cfg, ModelHparams{2});
    const std::string path = temp_file("nfis_ensemble.json");
    save_model(ModelAny{e}, path);
    CHECK(fs::exists(temp_file("nfis_ensemble_member_000.json")));
    CHECK(fs::exists(temp_file("nfis_ensemble_member_002.json")));

    const ModelAny back = load_model(path);
    const Ensemble& loaded = std::get<Ensemble>(back);
    REQUIRE(loaded.members.size() == 3);
    const std::vector<double> x = {0.4, -0.2, 0.9};
    CHECK(predict_ensemble(loaded, x) == doctest::Approx(predict_ensemble(e, x)).epsilon(1e-12));
}

TEST_CASE("forest and rf-ntsk round-trip") {
    const RegressionDataset ds = make_dataset(9);
    RfNtskConfig cfg;
    cfg.forest.n_trees = 5;
    cfg.ensemble.n_members = 2;
    cfg.ensemble.z = 2;
    cfg.ntsk_hparams = ModelHparams{2};
    const RfNtskModel model = fit_rf_ntsk(ds, cfg);
    const std::string path = temp_file("nfis_rfntsk.json");
    save_model(ModelAny{model}, path);
    const ModelAny back = load_model(path);
    const RfNtskModel& loaded = std::get<RfNtskModel>(back);
    CHECK(loaded.eps_rf == doctest::Approx(model.eps_rf));
    const std::vector<double> x = {0.1, 0.2, -0.3};
    CHECK(predict_rf_ntsk(loaded, x) == doctest::Approx(predict_rf_ntsk(model, x)).epsilon(1e-12));
}

TEST_CASE("rule table export and rendering") {
    const RegressionDataset ds = make_dataset(11);
    const NtskModel model = fit_ntsk(ds, 4, NtskSolver::Wrls);
    const RuleTable table = export_rule_table(model);
    CHECK(table.rows.size() == model.rules.size());
    CHECK(table.attribute_names == model.attribute_names);
    CHECK(table.consequent_label == "Next Power");

    const std::string md = render_markdown(table);
    CHECK(md.find("| Rule |") == 0);
    CHECK(md.find("Next Power") != std::string::npos);
    CHECK(md.find("(") != std::string::npos); // mean (std) cells

    const std::string csv = render_csv(table);
    CHECK(csv.find("a0_mean") != std::string::npos);
}

TEST_CASE("single-rule model renders one row; NMR consequent is its range") {
    RegressionDataset ds;
    ds.attribute_names = {"x"};
    ds.target_name = "load";
    ds.X = {{0.0}, {1.0}, {2.0}, {3.0}};
    ds.y = {1.0, 1.2, 1.8, 2.0};
    const NmrModel model = fit_nmr(ds, 1);
    const RuleTable table = export_rule_table(model);
    REQUIRE(table.rows.size() == 1);
    CHECK(table.rows[0].consequent.lo == doctest::Approx(1.0));
    CHECK(table.rows[0].consequent.hi == doctest::Approx(2.0));
    const std::string md = render_markdown(table);
    CHECK(md.find("[1.00, 2.00]") != std::string::npos);
}

TEST_CASE("ensembles cannot be rendered as a single rule table") {
    const RegressionDataset ds = make_dataset(13);
    EnsembleConfig cfg;
    cfg.n_members = 2;
    cfg.z = 1;
    const Ensemble e = fit_random_ensemble(ModelKind::Nmr, ds, cfg, ModelHparams{2});
    CHECK_THROWS_WITH_AS(export_rule_table_any(ModelAny{e}), "not a single rule-based model",
                         ConfigError);
}
