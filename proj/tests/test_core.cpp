#include <doctest.h>

#include <algorithm>
#include <set>

#include "bnsl/dag_enum.hpp"
#include "bnsl/errors.hpp"
#include "bnsl/joint_table.hpp"
#include "bnsl/sampling.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace bnsl;
using namespace bnsl::testing;

TEST_CASE("schema validates and encodes assignments") {
    CHECK_THROWS_AS(Schema({{"X", 2}, {"X", 2}}), InputError);
    CHECK_THROWS_AS(Schema({{"X", 1}}), InputError);
    CHECK_THROWS_AS(Schema({{"", 2}}), InputError);

    const Schema s({{"A", 2}, {"B", 3}, {"C", 2}});
    CHECK(s.joint_size() == 12);
    CHECK(s.index_of({0, 0, 0}) == 0);
    CHECK(s.index_of({1, 2, 1}) == 11);
    CHECK(s.index_of({0, 1, 1}) == 3);  // A most significant, C fastest
    for (std::uint64_t cell = 0; cell < s.joint_size(); ++cell) {
        CHECK(s.index_of(s.assignment_of(cell)) == cell);
    }
    CHECK_THROWS_AS(s.index_of({0, 3, 0}), InputError);
    CHECK_THROWS_AS(s.index_of({0, 0}), InputError);
}

TEST_CASE("structure rejects cycles, self-parents, duplicates") {
    const Schema s = two_binary_schema();
    CHECK_THROWS_AS(Structure(s, {{1}, {0}}), InputError);          // 2-cycle
    CHECK_THROWS_AS(Structure(s, {{0}, {}}), InputError);           // self-parent
    CHECK_THROWS_AS(Structure(s, {{}, {0, 0}}), InputError);        // duplicate
    CHECK_THROWS_AS(Structure(s, {{}, {5}}), InputError);           // out of range
    const Structure chain(uniform_schema(3), {{}, {0}, {1}});
    CHECK(chain.topological_order() == std::vector<int>{0, 1, 2});
    CHECK(chain.edge_list_string() == "X0->X1;X1->X2");
}

TEST_CASE("joint_prob multiplies conditionals") {
    const BayesNet net = xy_example_net();
    CHECK(net.joint_prob({1, 0}) == doctest::Approx(0.03).epsilon(1e-12));
    CHECK(net.joint_prob({0, 0}) == doctest::Approx(0.56).epsilon(1e-12));
    CHECK_THROWS_AS(net.joint_prob({0, 2}), InputError);

    const BayesNet det = deterministic_chain(3);
    CHECK(det.joint_prob({1, 1, 1}) == 1.0);
    CHECK(det.joint_prob({1, 1, 0}) == 0.0);
}

TEST_CASE("joint_prob sums to one over the domain") {
    Rng rng(41);
    for (int rep = 0; rep < 20; ++rep) {
        const Schema schema = uniform_schema(2 + static_cast<int>(rng.next_below(3)));
        const Structure g = random_dag(schema, rng);
        const BayesNet net = random_net(g, rng, 0.05, 0.95);
        double sum = 0.0;
        for (std::uint64_t cell = 0; cell < schema.joint_size(); ++cell) {
            sum += net.joint_prob(schema.assignment_of(cell));
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("param_count counts independent parameters") {
    const Schema s3 = uniform_schema(3);
    CHECK(Structure(s3, {{}, {0}, {1}}).param_count() == 5);        // chain
    CHECK(Structure(s3, {{}, {}, {}}).param_count() == 3);          // empty
    CHECK(Structure(s3, {{}, {0}, {0, 1}}).param_count() == 7);     // complete
    // Non-binary: q multiplies parent cardinalities.
    const Schema mixed({{"A", 3}, {"B", 2}, {"C", 4}});
    CHECK(Structure(mixed, {{}, {0}, {0, 1}}).param_count() == 2 + 1 * 3 + 3 * 6);
}

TEST_CASE("param_count is monotone under edge addition") {
    Rng rng(42);
    for (int rep = 0; rep < 100; ++rep) {
        const Schema schema = uniform_schema(4, 2 + static_cast<int>(rng.next_below(2)));
        const Structure g = random_dag(schema, rng);
        // Add one random feasible edge.
        for (int attempt = 0; attempt < 20; ++attempt) {
            const int child = static_cast<int>(rng.next_below(4));
            const int parent = static_cast<int>(rng.next_below(4));
            if (parent == child || g.has_edge(parent, child)) continue;
            std::vector<std::vector<int>> parents;
            for (int i = 0; i < 4; ++i) parents.push_back(g.parents(i));
            parents[child].push_back(parent);
            try {
                const Structure bigger(schema, std::move(parents));
                CHECK(bigger.param_count() >= g.param_count());
            } catch (const InputError&) {
                continue;  // would close a cycle
            }
            break;
        }
    }
}

TEST_CASE("is_substructure compares edge sets") {
    const Schema s3 = uniform_schema(3);
    const Structure empty(s3, {{}, {}, {}});
    const Structure xy(s3, {{}, {0}, {}});
    const Structure yx(s3, {{1}, {}, {}});
    const Structure xy_xz(s3, {{}, {0}, {0}});
    CHECK(is_substructure(empty, xy));
    CHECK(is_substructure(empty, empty));
    CHECK_FALSE(is_substructure(xy, yx));
    CHECK(is_substructure(xy, xy_xz));
    CHECK_FALSE(is_substructure(xy_xz, xy));
    CHECK_THROWS_AS(is_substructure(Structure(two_binary_schema(), {{}, {}}), empty), InputError);
}

TEST_CASE("enumerate_dags yields every labeled DAG once in canonical order") {
    CHECK(enumerate_dags(uniform_schema(1)).size() == 1);

    const std::vector<Structure> two = enumerate_dags(uniform_schema(2));
    REQUIRE(two.size() == 3);
    CHECK(two[0].edge_count() == 0);
    CHECK(two[1].has_edge(1, 0));  // lexicographic on cells (0,1),(1,0)
    CHECK(two[2].has_edge(0, 1));

    for (int n = 3; n <= 4; ++n) {
        const std::vector<Structure> all = enumerate_dags(uniform_schema(n));
        CHECK(static_cast<std::int64_t>(all.size()) == oracle_count_dags(n));
        std::set<std::string> seen;
        for (const Structure& g : all) {
            CHECK(seen.insert(g.edge_list_string()).second);  // acyclic by construction
        }
    }

    CHECK_THROWS_AS(enumerate_dags(uniform_schema(6)), CapacityError);
    CHECK(enumerate_dags(uniform_schema(3), 3).size() == 25);
}

TEST_CASE("ancestral_sample basics") {
    const BayesNet net = xy_example_net();
    CHECK(ancestral_sample(net, 0, 7).n_rows() == 0);

    const BayesNet det = deterministic_chain(3);
    const Dataset rows = ancestral_sample(det, 50, 99);
    for (std::int64_t r = 0; r < rows.n_rows(); ++r) {
        CHECK(rows.value(r, 0) == 1);
        CHECK(rows.value(r, 1) == 1);
        CHECK(rows.value(r, 2) == 1);
    }

    CHECK(ancestral_sample(net, 1000, 5) == ancestral_sample(net, 1000, 5));
    CHECK_FALSE(ancestral_sample(net, 1000, 5) == ancestral_sample(net, 1000, 6));
}

TEST_CASE("ancestral_sample matches the source distribution in L1") {
    const BayesNet net = deterministic_chain(3);  // degenerate case first
    const Dataset d = ancestral_sample(net, 1000, 3);
    CHECK(l1_distance(empirical(d), net_to_table(net)) == 0.0);

    const BayesNet chain = chain3_target();
    const JointTable truth = net_to_table(chain);
    int within = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Dataset sample = ancestral_sample(chain, 100000, seed);
        if (l1_distance(empirical(sample), truth) <= 0.02) ++within;
    }
    CHECK(within >= 95);
}

TEST_CASE("rng child streams are order-independent") {
    const Rng root(123);
    Rng a = root.child(7);
    Rng consumed = root.child(3);
    (void)consumed.next_u64();
    Rng b = root.child(7);
    CHECK(a.next_u64() == b.next_u64());
    CHECK(root.child(1).next_u64() != root.child(2).next_u64());
}
