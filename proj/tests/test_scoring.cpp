#include <doctest.h>

#include <cmath>

#include "bnsl/errors.hpp"
#include "bnsl/joint_table.hpp"
#include "bnsl/scoring.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace bnsl;
using namespace bnsl::testing;

namespace {

Dataset uniform_cover_dataset() {
    // Each of the four cells exactly once.
    return Dataset(two_binary_schema(), {0, 0, 0, 1, 1, 0, 1, 1});
}

Structure xy_structure() { return Structure(two_binary_schema(), {{}, {0}}); }

}  // namespace

TEST_CASE("penalty weights") {
    CHECK(Penalty::half_log().weight(4) == 1.0);
    CHECK(Penalty::constant(1.0).weight(7) == 1.0);
    CHECK(Penalty::constant(1.0).weight(70000) == 1.0);
    CHECK(Penalty::polynomial(0.5).weight(100) == doctest::Approx(10.0).epsilon(1e-12));
    CHECK_THROWS_AS(Penalty::half_log().weight(0), InputError);
    CHECK_THROWS_AS(Penalty::constant(0.0), InputError);
    CHECK_THROWS_AS(Penalty::polynomial(1.0), InputError);
    CHECK_THROWS_AS(Penalty::polynomial(0.0), InputError);
}

TEST_CASE("penalty flag grammar round-trips and rejects bad tokens") {
    CHECK(Penalty::parse("bic").kind() == Penalty::Kind::HalfLog);
    CHECK(Penalty::parse("const:2.5").parameter() == 2.5);
    CHECK(Penalty::parse("poly:0.25").parameter() == 0.25);
    CHECK(Penalty::parse(Penalty::polynomial(0.25).flag_string()).parameter() == 0.25);
    CHECK(Penalty::parse(Penalty::constant(3.0).flag_string()).parameter() == 3.0);

    CHECK_THROWS_WITH_AS(Penalty::parse("aic"), doctest::Contains("aic"), InputError);
    CHECK_THROWS_WITH_AS(Penalty::parse("const:x"), doctest::Contains("const:x"), InputError);
    CHECK_THROWS_WITH_AS(Penalty::parse("poly:1.5"), doctest::Contains("(0, 1)"), InputError);
}

TEST_CASE("log_likelihood hand values") {
    const Dataset data = four_row_dataset();
    CHECK(log_likelihood(xy_structure(), data) == doctest::Approx(-6.0).epsilon(1e-12));
    CHECK(log_likelihood(empty_structure(two_binary_schema()), data) ==
          doctest::Approx(-7.2451124978365313).epsilon(1e-12));

    const Dataset uniform = uniform_cover_dataset();
    CHECK(log_likelihood(xy_structure(), uniform) == doctest::Approx(-8.0).epsilon(1e-12));
    CHECK(log_likelihood(empty_structure(two_binary_schema()), uniform) ==
          doctest::Approx(-8.0).epsilon(1e-12));

    CHECK_THROWS_AS(log_likelihood(empty_structure(uniform_schema(3)), data), InputError);
}

TEST_CASE("log_likelihood equals the row-wise sum when rows have positive fit") {
    Rng rng(19);
    for (int rep = 0; rep < 60; ++rep) {
        const Schema schema = uniform_schema(2 + static_cast<int>(rng.next_below(2)));
        const Structure g = random_dag(schema, rng);
        const Dataset data = random_full_support_dataset(schema, 25, rng);
        const double decomposed = log_likelihood(g, data);
        const double rowwise = oracle_ll_rowwise(ml_parameters(g, data), data);
        CHECK(decomposed == doctest::Approx(rowwise).epsilon(1e-6));
    }
}

TEST_CASE("duplicating every row doubles the log-likelihood exactly") {
    Rng rng(23);
    for (int rep = 0; rep < 30; ++rep) {
        const Schema schema = uniform_schema(3);
        const Structure g = random_dag(schema, rng);
        const Dataset data = random_full_support_dataset(schema, 12, rng);
        std::vector<int> doubled = data.values();
        doubled.insert(doubled.end(), data.values().begin(), data.values().end());
        const Dataset data2(schema, std::move(doubled));
        CHECK(log_likelihood(g, data2) == 2.0 * log_likelihood(g, data));
    }
}

TEST_CASE("score subtracts the parameter penalty") {
    const Dataset data = four_row_dataset();
    const Penalty bic = Penalty::half_log();

    const ScoreReport empty = score(empty_structure(two_binary_schema()), data, bic);
    CHECK(empty.param_count == 2);
    CHECK(empty.penalty_weight == 1.0);
    CHECK(empty.score == doctest::Approx(-9.2451124978365313).epsilon(1e-12));
    CHECK(empty.score == empty.log_likelihood - static_cast<double>(empty.param_count) * empty.penalty_weight);

    const ScoreReport xy = score(xy_structure(), data, bic);
    CHECK(xy.param_count == 3);
    CHECK(xy.score == doctest::Approx(-9.0).epsilon(1e-12));

    // Vanishing constant penalty ranks by likelihood alone.
    const Penalty tiny = Penalty::constant(1e-12);
    const ScoreReport a = score(xy_structure(), data, tiny);
    const ScoreReport b = score(empty_structure(two_binary_schema()), data, tiny);
    CHECK((a.score > b.score) == (a.log_likelihood > b.log_likelihood));
}

TEST_CASE("compare orders by penalized score") {
    const Dataset data = four_row_dataset();
    const Penalty bic = Penalty::half_log();
    const Structure xy = xy_structure();
    const Structure empty = empty_structure(two_binary_schema());

    CHECK(compare(xy, empty, data, bic) == ScoreOrdering::FirstBetter);
    CHECK(compare(empty, xy, data, bic) == ScoreOrdering::SecondBetter);
    CHECK(compare(xy, xy, data, bic) == ScoreOrdering::Tie);

    // Equal likelihoods: fewer parameters win.
    CHECK(compare(xy, empty, uniform_cover_dataset(), bic) == ScoreOrdering::SecondBetter);
}

TEST_CASE("compare hand check against the KL-difference criterion") {
    // On the 4-row data with psi = 1: D-difference 0.3113 >= (1/4)(3-2).
    const Dataset data = four_row_dataset();
    const JointTable emp = empirical(data);
    const Structure xy = xy_structure();
    const Structure empty = empty_structure(two_binary_schema());
    const double d_xy = entropy_distance(emp, net_to_table(ml_parameters(xy, data)));
    const double d_empty = entropy_distance(emp, net_to_table(ml_parameters(empty, data)));
    CHECK(d_xy == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(d_empty == doctest::Approx(0.31127812445913283).epsilon(1e-9));
    const double lhs = d_empty - d_xy;
    const double rhs = (1.0 / 4.0) * (3.0 - 2.0);
    CHECK(lhs >= rhs);
    CHECK(compare(xy, empty, data, Penalty::half_log()) == ScoreOrdering::FirstBetter);
}

TEST_CASE("score ordering matches the KL-difference criterion on random instances") {
    Rng rng(29);
    int checked = 0;
    for (int rep = 0; rep < 300; ++rep) {
        const Schema schema = uniform_schema(2 + static_cast<int>(rng.next_below(2)));
        const Dataset data =
            random_full_support_dataset(schema, static_cast<std::int64_t>(rng.next_below(40)), rng);
        const Structure g1 = random_dag(schema, rng);
        const Structure g2 = random_dag(schema, rng);
        const Penalty penalty = rep % 3 == 0   ? Penalty::constant(0.5 + rng.next_unit())
                                : rep % 3 == 1 ? Penalty::half_log()
                                               : Penalty::polynomial(0.2 + 0.6 * rng.next_unit());

        const JointTable emp = empirical(data);
        const double d1 = entropy_distance(emp, net_to_table(ml_parameters(g1, data)));
        const double d2 = entropy_distance(emp, net_to_table(ml_parameters(g2, data)));
        const double psi = penalty.weight(data.n_rows());
        const double criterion =
            d2 - d1 -
            psi / static_cast<double>(data.n_rows()) *
                (static_cast<double>(g1.param_count()) - static_cast<double>(g2.param_count()));

        const ScoreReport s1 = score(g1, data, penalty);
        const ScoreReport s2 = score(g2, data, penalty);
        const double diff = s1.score - s2.score;
        if (std::abs(criterion) <= 1e-9 || std::abs(diff) <= 1e-9) continue;  // tie zone
        CHECK((diff > 0) == (criterion > 0));
        ++checked;
    }
    CHECK(checked > 200);
}

TEST_CASE("likelihood is monotone under structure extension") {
    Rng rng(31);
    for (int rep = 0; rep < 100; ++rep) {
        const Schema schema = uniform_schema(3 + static_cast<int>(rng.next_below(2)));
        const Structure big = random_dag(schema, rng);
        // Random sub-structure: drop each edge with probability 1/2.
        std::vector<std::vector<int>> parents(static_cast<std::size_t>(schema.size()));
        for (int i = 0; i < schema.size(); ++i) {
            for (int p : big.parents(i)) {
                if (rng.next_unit() < 0.5) parents[i].push_back(p);
            }
        }
        const Structure small(schema, std::move(parents));
        const Dataset data = random_full_support_dataset(schema, 30, rng);
        REQUIRE(is_substructure(small, big));
        CHECK(log_likelihood(big, data) >= log_likelihood(small, data) - 1e-9);
    }
}

TEST_CASE("score report serializes to one CSV row") {
    const ScoreReport r = score(xy_structure(), four_row_dataset(), Penalty::half_log());
    CHECK(ScoreReport::csv_header() == "structure,ll,psi,params,score");
    CHECK(r.csv_row() == "X->Y,-6,1,3,-9");
}
