#include "doctest.h"

#include <array>
#include <cmath>
#include <sstream>

#include "frogbound/branching.hpp"
#include "frogbound/model_core.hpp"
#include "frogbound/rng.hpp"

using namespace frogbound;

TEST_CASE("two-type offspring laws") {
    const OffspringLaw t1 = ttbp_law(1, ModelParams(4, 1.0));
    CHECK(t1.p20 == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(t1.p01 == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(t1.p00 == 0.0);
    CHECK(t1.p10 == 0.0);

    const OffspringLaw dead = ttbp_law(2, ModelParams(2, 0.0));
    CHECK(dead.p00 == 1.0);

    const OffspringLaw t2 = ttbp_law(2, ModelParams(4, 1.0));
    CHECK(t2.p10 == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(t2.p20 == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(t2.p01 == doctest::Approx(0.2).epsilon(1e-15));

    CHECK_THROWS(ttbp_law(3, ModelParams(2, 0.5)));
}

TEST_CASE("frog offspring laws") {
    const OffspringLaw fig = fmbp_law(2, 1, ModelParams(4, 1.0));
    CHECK(fig.p01 == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(fig.p10 == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(fig.p20 == doctest::Approx(0.4).epsilon(1e-15));

    const OffspringLaw half = fmbp_law(1, 1, ModelParams(2, 0.5));
    CHECK(half.p00 == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(half.p01 == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(half.p10 == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(half.p20 == doctest::Approx(1.0 / 6.0).epsilon(1e-15));

    // a+b = d+1 exhausts the neighbours
    for (int d : {2, 5}) CHECK(fmbp_law(1, d, ModelParams(d, 0.7)).p20 == 0.0);

    CHECK_THROWS(fmbp_law(0, 2, ModelParams(2, 0.5)));
    CHECK_THROWS(fmbp_law(1, 0, ModelParams(2, 0.5)));
    CHECK_THROWS(fmbp_law(2, 3, ModelParams(3, 0.5)));
}

TEST_CASE("partition layout matches the printed breakpoints") {
    const ModelParams params(4, 0.8);
    const double p = params.p;
    const int d = params.d;

    const IntervalPartition p1 = build_partition(ttbp_law(1, params));
    REQUIRE(p1.cells.size() == 3);  // no (1,0) cell
    CHECK(p1.cells[0].label == Outcome::one_type2);
    CHECK(p1.cells[0].hi == doctest::Approx(p / (d + 1)).epsilon(1e-15));
    CHECK(p1.cells[1].label == Outcome::two_type1);
    CHECK(p1.cells[1].hi == doctest::Approx(p).epsilon(1e-15));
    CHECK(p1.cells[2].label == Outcome::none);
    CHECK(p1.cells[2].hi == 1.0);

    const IntervalPartition p2 = build_partition(ttbp_law(2, params));
    REQUIRE(p2.cells.size() == 4);
    CHECK(p2.cells[0].hi == doctest::Approx(p / (d + 1)).epsilon(1e-15));
    CHECK(p2.cells[1].hi == doctest::Approx(2 * p / (d + 1)).epsilon(1e-15));
    CHECK(p2.cells[2].hi == doctest::Approx(p).epsilon(1e-15));

    // figure layout at d=4, a=2, b=1
    const IntervalPartition pab = build_partition(fmbp_law(2, 1, params));
    REQUIRE(pab.cells.size() == 4);
    CHECK(pab.cells[0].hi == doctest::Approx(2 * p / (d + 1)).epsilon(1e-15));
    CHECK(pab.cells[1].hi == doctest::Approx(3 * p / (d + 1)).epsilon(1e-15));
    CHECK(pab.cells[2].hi == doctest::Approx(p).epsilon(1e-15));
}

TEST_CASE("cell widths equal the law probabilities") {
    for (double p : {0.0, 0.3, 1.0}) {
        for (int type : {1, 2}) {
            const OffspringLaw law = ttbp_law(type, ModelParams(3, p));
            const IntervalPartition part = build_partition(law);
            double covered = 0.0;
            for (const IntervalCell& c : part.cells) {
                CHECK(c.hi - c.lo == doctest::Approx(law.prob(c.label)).epsilon(1e-12));
                CHECK(c.lo == doctest::Approx(covered).epsilon(1e-12));
                covered = c.hi;
            }
            CHECK(covered == 1.0);
        }
    }
}

TEST_CASE("sample_offspring picks the containing cell") {
    const IntervalPartition p1 = build_partition(ttbp_law(1, ModelParams(4, 1.0)));
    CHECK(sample_offspring(p1, 0.1) == Outcome::one_type2);
    CHECK(sample_offspring(p1, 0.5) == Outcome::two_type1);

    const IntervalPartition p05 = build_partition(ttbp_law(1, ModelParams(4, 0.5)));
    CHECK(sample_offspring(p05, 1.0) == Outcome::none);

    const IntervalPartition pab = build_partition(fmbp_law(2, 1, ModelParams(4, 1.0)));
    CHECK(sample_offspring(pab, 0.5) == Outcome::one_type1);
}

TEST_CASE("empirical frequencies match the law within 4 sigma") {
    const ModelParams params(3, 0.63);
    for (int type : {1, 2}) {
        const OffspringLaw law = ttbp_law(type, params);
        const IntervalPartition part = build_partition(law);
        const long n = 1000000;
        UniformStream rng(0xabcdef);
        std::array<long, 4> counts{};
        for (long i = 0; i < n; ++i)
            ++counts[static_cast<int>(sample_offspring(part, rng.next_double()))];
        for (Outcome o : {Outcome::none, Outcome::one_type1, Outcome::one_type2,
                          Outcome::two_type1}) {
            const double q = law.prob(o);
            const double freq = counts[static_cast<int>(o)] / static_cast<double>(n);
            const double sigma = std::sqrt(q * (1 - q) / n);
            CHECK(std::abs(freq - q) <= 4.0 * sigma + 1e-12);
        }
    }
}

TEST_CASE("moment matrix equals law expectations") {
    const MomentMatrix m1 = moment_matrix(ModelParams(2, 1.0));
    CHECK(m1.m[0][0] == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    CHECK(m1.m[0][1] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(m1.m[1][0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(m1.m[1][1] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

    const MomentMatrix m0 = moment_matrix(ModelParams(5, 0.0));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(m0.m[i][j] == 0.0);

    for (int d : {2, 4, 9}) {
        for (double p : {0.2, 0.9}) {
            const ModelParams params(d, p);
            const MomentMatrix m = moment_matrix(params);
            for (int type : {1, 2}) {
                const OffspringLaw law = ttbp_law(type, params);
                const double e1 = law.p10 + 2.0 * law.p20;
                const double e2 = law.p01;
                CHECK(m.m[type - 1][0] == doctest::Approx(e1).epsilon(1e-14));
                CHECK(m.m[type - 1][1] == doctest::Approx(e2).epsilon(1e-14));
            }
        }
    }
}

TEST_CASE("spectral radius") {
    CHECK(spectral_radius(MomentMatrix{{{0, 0}, {0, 0}}}) == 0.0);
    CHECK(spectral_radius(moment_matrix(ModelParams(3, 1.0))) ==
          doctest::Approx((std::sqrt(45.0) + 7.0) / 8.0).epsilon(1e-14));
    // rho = 1 exactly at the lower bound, by construction
    for (int d : {2, 7, 50})
        CHECK(spectral_radius(moment_matrix(ModelParams(d, theorem1_lower(d)))) ==
              doctest::Approx(1.0).epsilon(1e-12));
    // closed form for the dominant eigenvalue
    for (int d : {2, 5}) {
        for (double p : {0.3, 0.8}) {
            const double expect =
                (std::sqrt(4.0 * d * d + 4.0 * d - 3.0) + 2.0 * d + 1.0) * p /
                (2.0 * (d + 1.0));
            CHECK(std::abs(spectral_radius(moment_matrix(ModelParams(d, p))) -
                           expect) < 1e-12);
        }
    }
}

TEST_CASE("subcritical below the lower bound, supercritical above") {
    for (int d : {2, 3, 10, 100}) {
        const double pc = theorem1_lower(d);
        CHECK(spectral_radius(moment_matrix(ModelParams(d, pc * (1 - 1e-6)))) < 1.0);
        CHECK(spectral_radius(moment_matrix(ModelParams(d, std::min(1.0, pc * (1 + 1e-6))))) > 1.0);
    }
}

TEST_CASE("classify_frog on hand-built neighbourhoods") {
    // chain o - x - y - z - w at d=2 (|T| = d+3 = 5)
    ActivationTree tree(2);
    int o = tree.root();
    tree.mark_visited(o);
    int x = tree.neighbor(o, 0);
    tree.mark_visited(x);
    int y = tree.neighbor(x, 1);
    tree.mark_visited(y);
    int z = tree.neighbor(y, 1);
    tree.mark_visited(z);
    int w = tree.neighbor(z, 1);
    tree.mark_visited(w);

    // chain ends are tips, interior vertices are type 2
    CHECK(classify_frog(tree, o).type == 1);
    CHECK(classify_frog(tree, w).type == 1);
    const FrogClass cx = classify_frog(tree, x);
    CHECK(cx.type == 2);
    CHECK(cx.a == 1);  // y is non-tip
    CHECK(cx.b == 1);  // o is a tip
    CHECK(cx.constraints_ok);
    const FrogClass cy = classify_frog(tree, y);
    CHECK(cy.type == 2);
    CHECK(cy.a == 2);
    CHECK(cy.b == 0);

    // saturate x: all neighbours visited -> a+b = d+1, zero (2,0) width
    tree.mark_visited(tree.neighbor(x, 2));
    const FrogClass cx2 = classify_frog(tree, x);
    CHECK(cx2.a + cx2.b == 3);
    CHECK(fmbp_law(cx2.a, cx2.b, ModelParams(2, 0.5)).p20 == 0.0);

    CHECK_THROWS(classify_frog(tree, tree.neighbor(w, 1)));
}

TEST_CASE("first activated neighbour of the root is a tip") {
    ActivationTree tree(2);
    tree.mark_visited(tree.root());
    const int x = tree.neighbor(tree.root(), 1);
    tree.mark_visited(x);
    CHECK(classify_frog(tree, x).type == 1);
}

TEST_CASE("coupled run keeps the dominance inequalities") {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const CoupledResult res = run_coupled(ModelParams(2, 0.9), 2000, seed, false);
        if (!res.seeded) continue;
        CHECK(res.violations == 0);
        CHECK(res.class_anomalies == 0);
    }
    const CoupledResult res = run_coupled(ModelParams(2, 0.5), 10000, 42);
    CHECK(res.violations == 0);
    for (const CoupledStep& s : res.trace) {
        CHECK(s.n_tt1 >= s.n_fm1);
        CHECK(s.n_tt1 + s.n_tt2 >= s.n_fm1 + s.n_fm2);
    }
}

TEST_CASE("coupled run at tiny p goes extinct fast") {
    const CoupledResult res = run_coupled(ModelParams(2, 0.01), 100000, 7);
    if (res.seeded) {
        CHECK(res.both_extinct);
        CHECK(res.violations == 0);
    }
}

TEST_CASE("trace CSV has one row per step plus header") {
    const CoupledResult res = run_coupled(ModelParams(3, 0.4), 500, 11);
    std::ostringstream os;
    write_trace_csv(os, res);
    const std::string s = os.str();
    long rows = -1;  // header
    for (char c : s)
        if (c == '\n') ++rows;
    CHECK(rows == static_cast<long>(res.trace.size()));
    CHECK(s.rfind("t,n_tt1,n_tt2,n_fm1,n_fm2,chosen_type,a,b,u,outcome", 0) == 0);
}
