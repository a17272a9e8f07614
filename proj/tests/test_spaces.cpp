#include <gtest/gtest.h>

#include <cmath>

#include "enrichfp/error.hpp"
#include "enrichfp/spaces.hpp"
#include "support/oracles.hpp"

using namespace enrichfp;

namespace {

const SpaceSpec& sp(std::string_view name) { return builtin_space(name); }

SpaceSpec strict_order() {
    SpaceSpec s = sp("r2-order-piecewise");
    s.symmetrize = false;
    return s;
}

}  // namespace

TEST(Registry, ListsBuiltinsInOrder) {
    const std::vector<std::string> want{"r2-euclidean", "r2-taxicab-diag", "r2-nonnormed",
                                        "r2-order-piecewise", "r1-interval"};
    EXPECT_EQ(builtin_space_names(), want);
}

TEST(Registry, UnknownNameIsLookupError) {
    try {
        (void)builtin_space("r3-nowhere");
        FAIL() << "expected a lookup error";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::lookup);
        EXPECT_NE(std::string(e.what()).find("r2-taxicab-diag"), std::string::npos);
    }
}

TEST(Metric, TaxicabExamplePoint) {
    EXPECT_DOUBLE_EQ(metric_eval(sp("r2-taxicab-diag"), {2, 2}, {0, 0}), 4.0);
}

TEST(Metric, NonnormedExample) {
    // |1 - 3| + |1*2 - 3*4|
    EXPECT_DOUBLE_EQ(metric_eval(sp("r2-nonnormed"), {1, 2}, {3, 4}), 12.0);
    EXPECT_DOUBLE_EQ(oracle::nonnormed({1, 2}, {3, 4}), 12.0);
}

TEST(Metric, OrderPiecewiseRelatedBranchIsEuclidean) {
    EXPECT_NEAR(metric_eval(sp("r2-order-piecewise"), {0, 0}, {1, 1}), 1.4142135623730951, 1e-15);
}

TEST(Metric, OrderPiecewiseUnrelatedBranchIsChebyshev) {
    EXPECT_DOUBLE_EQ(metric_eval(sp("r2-order-piecewise"), {1, 0}, {0, 2}), 2.0);
}

TEST(Metric, StrictOrderPiecewiseIsAsymmetric) {
    const SpaceSpec s = strict_order();
    // (0,0) R (1,2) takes the Euclidean branch; the reverse does not.
    EXPECT_NEAR(metric_eval(s, {0, 0}, {1, 2}), std::sqrt(5.0), 1e-15);
    EXPECT_DOUBLE_EQ(metric_eval(s, {1, 2}, {0, 0}), 2.0);
}

TEST(Metric, DimensionMismatchIsInputError) {
    try {
        (void)metric_eval(sp("r2-euclidean"), {1, 2, 3}, {0, 0});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::input);
    }
}

TEST(Metric, NonFiniteIsInputError) {
    try {
        (void)metric_eval(sp("r2-euclidean"), {NAN, 0}, {0, 0});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::input);
    }
}

TEST(Convex, EuclideanMidpoint) {
    EXPECT_EQ(convex_combine(sp("r2-euclidean"), {1, 0}, {0, 1}, 0.5), (Point{0.5, 0.5}));
}

TEST(Convex, NonnormedMidpoint) {
    const Point w = convex_combine(sp("r2-nonnormed"), {1, 2}, {3, 4}, 0.5);
    EXPECT_DOUBLE_EQ(w[0], 2.0);
    EXPECT_DOUBLE_EQ(w[1], 3.5);
}

TEST(Convex, EndpointsReturnArguments) {
    for (const auto& s : builtin_spaces()) {
        Point x = Point::zeros(s.dimension), y = Point::zeros(s.dimension);
        for (std::size_t k = 0; k < s.dimension; ++k) {
            x[k] = s.domain[k].lo + 0.3 * (s.domain[k].hi - s.domain[k].lo);
            y[k] = s.domain[k].lo + 0.8 * (s.domain[k].hi - s.domain[k].lo);
        }
        const Point w1 = convex_combine(s, x, y, 1.0);
        const Point w0 = convex_combine(s, x, y, 0.0);
        for (std::size_t k = 0; k < s.dimension; ++k) {
            EXPECT_NEAR(w1[k], x[k], 1e-12) << s.name;
            EXPECT_NEAR(w0[k], y[k], 1e-12) << s.name;
        }
    }
}

TEST(Convex, LambdaOutOfRangeIsInputError) {
    try {
        (void)convex_combine(sp("r2-euclidean"), {0, 0}, {1, 1}, 1.5);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::input);
    }
}

TEST(Convex, NonnormedSingularity) {
    try {
        (void)convex_combine(sp("r2-nonnormed"), {-1, 2}, {1, 4}, 0.5);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::singularity);
    }
}

TEST(Relation, OrderExamples) {
    EXPECT_TRUE(relate(sp("r2-order-piecewise"), {0, 0}, {1, 2}));
    EXPECT_FALSE(relate(sp("r2-order-piecewise"), {1, 0}, {0, 2}));
}

TEST(Relation, DiagonalExamples) {
    EXPECT_TRUE(relate(sp("r2-taxicab-diag"), {2, 2}, {5, 5}));
    EXPECT_FALSE(relate(sp("r2-taxicab-diag"), {3, 1}, {3, 3}));
}

TEST(Relation, ChainExamples) {
    EXPECT_TRUE(check_relation_chain(sp("r2-taxicab-diag"), std::vector<Point>{{2, 2}, {0, 0}, {0, 0}}));
    EXPECT_FALSE(check_relation_chain(sp("r2-taxicab-diag"), std::vector<Point>{{3, 1}, {3, 3}}));
    EXPECT_TRUE(check_relation_chain(sp("r2-order-piecewise"), std::vector<Point>{{0, 0}, {1, 1}, {2, 3}}));
    // Needs every i < j, not just neighbours.
    EXPECT_FALSE(check_relation_chain(sp("r2-order-piecewise"), std::vector<Point>{{0, 0}, {1, 1}, {0.5, 3}}));
}

TEST(Norm, LinearSpacesOnly) {
    EXPECT_DOUBLE_EQ(norm_eval(sp("r2-taxicab-diag"), {3, -4}), 7.0);
    EXPECT_DOUBLE_EQ(norm_eval(sp("r2-euclidean"), {3, -4}), 5.0);
    try {
        (void)norm_eval(sp("r2-nonnormed"), {3, -4});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::unsupported_family);
    }
}

TEST(Axioms, EuclideanPasses) {
    const CheckReport r = check_metric_axioms(sp("r2-euclidean"), 10'000, 1e-9, 1);
    EXPECT_EQ(r.violations, 0u);
    EXPECT_EQ(r.status, CheckStatus::pass);
    EXPECT_GT(r.checked, 0u);
}

TEST(Axioms, NonnormedPositiveBoxPasses) {
    const CheckReport r = check_metric_axioms(sp("r2-nonnormed"), 10'000, 1e-9, 2);
    EXPECT_EQ(r.violations, 0u);
}

TEST(Axioms, StrictOrderPiecewiseBreaksSymmetry) {
    const CheckReport r = check_metric_axioms(strict_order(), 10'000, 1e-9, 3);
    EXPECT_GT(r.violations, 0u);
    ASSERT_TRUE(r.witness.has_value());
    bool symmetry = false;
    for (const auto& [kind, n] : r.breakdown) symmetry = symmetry || (kind == "symmetry" && n > 0);
    EXPECT_TRUE(symmetry);
}

TEST(Axioms, SameSeedSameReport) {
    const auto a = check_metric_axioms(strict_order(), 2'000, 1e-9, 99);
    const auto b = check_metric_axioms(strict_order(), 2'000, 1e-9, 99);
    EXPECT_EQ(a.violations, b.violations);
    EXPECT_EQ(a.checked, b.checked);
    EXPECT_EQ(a.worst_margin, b.worst_margin);
    ASSERT_TRUE(a.witness && b.witness);
    EXPECT_EQ(a.witness->points, b.witness->points);
}

TEST(Axioms, EmptyBoxIsConfigurationError) {
    SpaceSpec s = sp("r2-euclidean");
    s.domain[0] = {1.0, -1.0};
    try {
        (void)check_metric_axioms(s, 10, 1e-9, 0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::configuration);
    }
}

TEST(Convexity, BundledSpacesPass) {
    for (const char* name : {"r2-euclidean", "r2-taxicab-diag", "r2-nonnormed", "r1-interval"}) {
        const CheckReport r = check_convexity_inequality(sp(name), 20'000, 1e-9, 5);
        EXPECT_EQ(r.violations, 0u) << name;
        EXPECT_EQ(r.skipped, 0u) << name;
    }
}

TEST(Convexity, NonnormedSingularityCountsAsSkipped) {
    SpaceSpec s = sp("r2-nonnormed");
    s.domain[0] = {-1.0, 1.0};
    const CheckReport r = check_convexity_inequality(s, 2'000, 1e-9, 5);
    EXPECT_GT(r.skipped, 0u);
}

TEST(Sampling, StreamsDependOnlyOnSeedIndexSalt) {
    SampleStream a(7, 3, 11), b(7, 3, 11), c(7, 4, 11);
    const double x = a.uniform01();
    EXPECT_EQ(x, b.uniform01());
    EXPECT_NE(x, c.uniform01());
    EXPECT_GE(x, 0.0);
    EXPECT_LT(x, 1.0);
}

TEST(Sampling, RelatedPairsAreRelated) {
    for (const char* name : {"r2-taxicab-diag", "r2-order-piecewise", "r2-euclidean"}) {
        const SpaceSpec& s = sp(name);
        for (std::size_t i = 0; i < 200; ++i) {
            SampleStream rng(1, i, 0);
            auto [x, y] = sample_related_pair(s, s.domain, rng);
            EXPECT_TRUE(relate(s, x, y)) << name << " " << to_string(x) << " " << to_string(y);
        }
    }
}

TEST(Sampling, UnrelatedModeGivesUpOnUniversalRelation) {
    const SpaceSpec& s = sp("r2-euclidean");
    SampleStream rng(1, 0, 0);
    EXPECT_FALSE(sample_pair(s, s.domain, PairSampling::unrelated, 0, rng).has_value());
}
