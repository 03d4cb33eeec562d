#include <doctest.h>

#include <cmath>

#include "bnsl/errors.hpp"
#include "bnsl/experiments.hpp"
#include "bnsl/joint_table.hpp"
#include "test_support.hpp"

using namespace bnsl;
using namespace bnsl::testing;

TEST_CASE("learning_curve shape and exact scaled error") {
    ExperimentConfig cfg{chain3_target(), {128}, 1, Penalty::half_log(), 5,
                         LearnMode::Exhaustive};
    const std::vector<CurvePoint> points = learning_curve(cfg);
    REQUIRE(points.size() == 1);
    CHECK(points[0].n_samples == 128);
    CHECK(points[0].trials == 1);
    CHECK(points[0].std_kl == 0.0);
    CHECK(points[0].scaled_error == points[0].mean_kl * 128.0 / std::log2(128.0));

    ExperimentConfig bad = cfg;
    bad.n_grid = {128, 64};
    CHECK_THROWS_AS(learning_curve(bad), InputError);
    bad.n_grid = {};
    CHECK_THROWS_AS(learning_curve(bad), InputError);
}

TEST_CASE("learning_curve is exactly zero for a deterministic target") {
    ExperimentConfig cfg{deterministic_chain(3), {16, 64, 256}, 3, Penalty::half_log(), 9,
                         LearnMode::Exhaustive};
    for (const CurvePoint& p : learning_curve(cfg)) {
        CHECK(p.mean_kl == 0.0);
        CHECK(p.std_kl == 0.0);
    }
}

TEST_CASE("learning_curve output is reproducible byte for byte") {
    ExperimentConfig cfg{five_node_target(), {64, 128}, 3, Penalty::half_log(), 77,
                         LearnMode::Greedy};
    cfg.restarts = 2;
    const std::string a = curve_csv(learning_curve(cfg));
    const std::string b = curve_csv(learning_curve(cfg));
    CHECK(a == b);
    CHECK(a.substr(0, a.find('\n')) == "n,trials,mean_kl,std_kl,scaled_error");

    ExperimentConfig other = cfg;
    other.seed = 78;
    CHECK(curve_csv(learning_curve(other)) != a);
}

TEST_CASE("learning_curve error shrinks with N") {
    ExperimentConfig cfg{chain3_target(), {1 << 7, 1 << 11}, 5, Penalty::half_log(), 21,
                         LearnMode::Exhaustive};
    const std::vector<CurvePoint> points = learning_curve(cfg);
    REQUIRE(points.size() == 2);
    CHECK(points[1].mean_kl < points[0].mean_kl);
}

TEST_CASE("subsampled learning curve tracks the exhaustive one") {
    ExperimentConfig cfg{five_node_target(), {128, 1024, 8192}, 5, Penalty::half_log(), 33,
                         LearnMode::Exhaustive};
    const std::vector<CurvePoint> exhaustive = learning_curve(cfg);
    cfg.learner_mode = LearnMode::Subsampled;
    cfg.eps = 0.05;
    cfg.delta = 0.05;
    const std::vector<CurvePoint> subsampled = learning_curve(cfg);
    REQUIRE(exhaustive.size() == subsampled.size());
    for (std::size_t k = 0; k < exhaustive.size(); ++k) {
        CHECK(subsampled[k].mean_kl <= 2.0 * exhaustive[k].mean_kl);
        CHECK(exhaustive[k].mean_kl <= 2.0 * subsampled[k].mean_kl);
    }
}

TEST_CASE("sanov_mc endpoints") {
    const BayesNet uniform = independent_uniform_2x2();

    const SanovMcResult zero_eps = sanov_mc(uniform, 101, 0.0, 200, 3);
    CHECK(zero_eps.analytic_bound == 1.0);
    CHECK(zero_eps.empirical_freq == 1.0);  // odd N cannot hit the uniform exactly

    // eps beyond log2(1/m_pos) can never be exceeded.
    const SanovMcResult huge_eps = sanov_mc(uniform, 100, 2.001, 200, 3);
    CHECK(huge_eps.empirical_freq == 0.0);

    const SanovMcResult mid = sanov_mc(uniform, 400, 0.2, 2000, 5);
    CHECK(mid.analytic_bound < 1.0);
    CHECK(mid.empirical_freq <= mid.analytic_bound);
}

TEST_CASE("minimality_probe histograms") {
    // Deterministic target: extra edges add parameters but no likelihood.
    const MinimalityHistogram det =
        minimality_probe(deterministic_chain(3), Penalty::half_log(), 1 << 10, 10, 7);
    CHECK(det.larger == 0);
    CHECK(det.smaller + det.equal + det.larger == det.trials);

    // Tiny N: any outcome, but a well-formed histogram.
    const MinimalityHistogram tiny =
        minimality_probe(chain3_target(), Penalty::half_log(), 4, 10, 11);
    CHECK(tiny.smaller + tiny.equal + tiny.larger == 10);
    CHECK(tiny.n_samples == 4);

    // Thm-style regime: slow polynomial penalty recovers the chain's size.
    const MinimalityHistogram chain =
        minimality_probe(chain3_target(), Penalty::polynomial(0.25), 1 << 14, 10, 13);
    CHECK(chain.equal >= 9);
}

TEST_CASE("csv emitters format 12 significant digits") {
    const std::vector<SanovMcResult> rows{{200, 0.1, 10000, 0.0123456789012, 0.5}};
    CHECK(sanov_csv(rows) ==
          "n,eps,trials,empirical_freq,analytic_bound\n200,0.1,10000,0.0123456789012,0.5\n");

    const std::vector<MinimalityHistogram> hist{{16384, 10, 0, 9, 1}};
    CHECK(minimality_csv(hist) == "n,trials,smaller,equal,larger\n16384,10,0,9,1\n");
}

TEST_CASE("compensated sums are order-robust") {
    CompensatedSum forward;
    CompensatedSum backward;
    std::vector<double> values;
    Rng rng(99);
    for (int i = 0; i < 1000; ++i) values.push_back(std::exp(20.0 * (rng.next_unit() - 0.5)));
    for (std::size_t i = 0; i < values.size(); ++i) forward.add(values[i]);
    for (std::size_t i = values.size(); i-- > 0;) backward.add(values[i]);
    CHECK(forward.value() == doctest::Approx(backward.value()).epsilon(1e-15));
}
