#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "chemoflow/errors.hpp"
#include "chemoflow/lemmas.hpp"
#include "chemoflow/verify.hpp"

using namespace chemoflow;

TEST(SobolevExponent, Values) {
    EXPECT_EQ(sobolev_exponent(3), 6.0);
    EXPECT_EQ(sobolev_exponent(4), 4.0);
    EXPECT_EQ(sobolev_exponent(6), 3.0);
    EXPECT_THROW(sobolev_exponent(2), ParameterError);
}

TEST(InterpolationCase, LambdaLimits) {
    InterpolationCase c{3, 2.0, 2.0, 1.0, 1.0};
    EXPECT_EQ(c.lambda(), 0.0);
    c.q = 6.0 - 1e-9;
    EXPECT_NEAR(c.lambda(), 1.0, 1e-8);
    // Exact values at rational inputs: n = 3, r = 2, q = 3 gives lambda = 1/2,
    // gamma = 2 (1/2) 3 / (1/2) = 6, e = 3.
    c.q = 3.0;
    EXPECT_DOUBLE_EQ(c.lambda(), 0.5);
    EXPECT_DOUBLE_EQ(c.gamma(), 6.0);
    EXPECT_DOUBLE_EQ(c.coefficient_exponent(), 3.0);
}

TEST(InterpolationCase, AdmissibilityNamesTheViolatedInequality) {
    auto message = [](InterpolationCase c) {
        try {
            c.validate();
        } catch (const ParameterError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    EXPECT_NE(message({3, 2.0, 4.0, 1.0, 1.0}).find("q/r < 2/r + 1 - 2/p"), std::string::npos);
    EXPECT_NE(message({3, 2.0, 7.0, 1.0, 1.0}).find("q < p"), std::string::npos);
    EXPECT_NE(message({3, 3.0, 2.0, 1.0, 1.0}).find("r < q"), std::string::npos);
    EXPECT_NE(message({3, 0.5, 2.0, 1.0, 1.0}).find("1 <= r"), std::string::npos);
    EXPECT_NE(message({3, 2.0, 3.0, 0.0, 1.0}).find("C0, C1 > 0"), std::string::npos);
    EXPECT_EQ(message({3, 2.0, 3.0, 1.0, 1.0}), "");
}

TEST(CheckInterpolation, ConstantField) {
    const InterpolationCase c{3, 2.0, 3.0, 1.0, 1.0};
    const double m = 1.7;
    const InterpolationCheck chk = check_interpolation(c, Field(Grid::unit(3, 8), m));
    EXPECT_NEAR(chk.lhs, m * m * m, 1e-13);
    EXPECT_NEAR(chk.rhs_without_Cn, m * m, 1e-13);
    EXPECT_NEAR(chk.cn_factor, 2.0 * std::pow(m, 6.0), 1e-13 * std::pow(m, 6.0));
    EXPECT_TRUE(std::isfinite(chk.required_Cn));
    EXPECT_NEAR(chk.required_Cn, (m * m * m - m * m) / (2 * std::pow(m, 6.0)), 1e-13);
}

TEST(CheckInterpolation, Preconditions) {
    const InterpolationCase c{3, 2.0, 3.0, 1.0, 1.0};
    EXPECT_THROW(check_interpolation(c, Field(Grid::unit(3, 8), 0.0)), InputError);
    EXPECT_THROW(check_interpolation(c, Field(Grid::unit(2, 8), 1.0)), ParameterError);
    EXPECT_THROW(check_interpolation({3, 2.0, 4.0, 1.0, 1.0}, Field(Grid::unit(3, 8), 1.0)), ParameterError);
}

TEST(CheckInterpolation, NotScaleInvariant) {
    // lhs scales like s^q, the explicit terms like s^2 and the C(n) factor like
    // s^gamma, so required_Cn changes with s and every scale is sampled.
    const InterpolationCase c{3, 2.0, 3.0, 1.0, 1.0};
    const Field v = band_limited_field(Grid::unit(3, 16), 3, 3);
    std::vector<double> req;
    for (double s : {0.1, 1.0, 10.0, 100.0}) {
        Field w = v;
        for (double& x : w.values()) x *= s;
        const InterpolationCheck chk = check_interpolation(c, w);
        EXPECT_TRUE(std::isfinite(chk.required_Cn));
        EXPECT_GE(chk.required_Cn, 0.0);
        req.push_back(chk.required_Cn);
    }
    EXPECT_GT(req.back(), 0.0);
    EXPECT_NE(req[2], req[3]);
    EXPECT_EQ(max_required_over_scales(c, v, {0.1, 1.0, 10.0, 100.0}), *std::max_element(req.begin(), req.end()));
}

TEST(CheckInterpolation, RefinementStableForAdmissibleCase) {
    const InterpolationCase c{3, 2.0, 3.0, 1.0, 1.0};
    const std::vector<double> scales = LemmaOptions{}.scales;
    const Grid coarse = Grid::unit(3, 32), fine = Grid::unit(3, 64);
    double max_coarse = 0.0, max_fine = 0.0;
    for (std::uint64_t s = 0; s < 20; ++s) {
        max_coarse = std::max(max_coarse, max_required_over_scales(c, band_limited_field(coarse, s, 3), scales));
        max_fine = std::max(max_fine, max_required_over_scales(c, band_limited_field(fine, s, 3), scales));
    }
    ASSERT_GT(max_coarse, 0.0);
    EXPECT_LT(std::abs(max_fine - max_coarse), 0.25 * max_coarse);
}

TEST(BandLimitedField, DeterministicPerSeed) {
    const Grid g = Grid::unit(2, 16);
    EXPECT_EQ(band_limited_field(g, 4, 3), band_limited_field(g, 4, 3));
    EXPECT_NE(band_limited_field(g, 4, 3), band_limited_field(g, 5, 3));
    EXPECT_THROW(band_limited_field(g, 4, -1), ParameterError);
}

TEST(IterationCase, EqualGammasForbidden) {
    IterationCase c;
    c.gamma1 = c.gamma2 = 1.5;
    EXPECT_THROW(c.validate(), ParameterError);
    EXPECT_THROW(check_iteration_bound(c, 1.0), ParameterError);
    c.gamma1 = 2.5;
    c.gamma2 = 1.0;
    EXPECT_THROW(c.validate(), ParameterError);  // gamma1 <= b
}

TEST(IterationBound, KZeroRatioIsOneAtStart) {
    IterationCase c;
    c.K = 3.0;
    c.y0 = {Y0Profile::Kind::Constant, 3.0, 1.0, 0.5};
    c.k_max = 0;
    EXPECT_DOUBLE_EQ(check_iteration_bound(c, 5.0).max_ratio, 1.0);
}

TEST(IterationBound, RandomCasesBelowBound) {
    for (std::uint64_t i = 0; i < 10; ++i) {
        const IterationCase c = random_iteration_case(case_seed(99, i));
        ASSERT_NO_THROW(c.validate());
        const IterationCheck chk = check_iteration_bound(c, 20.0);
        EXPECT_LE(chk.max_ratio, 1.0 + 1e-6) << i;
        for (double l : chk.log_bound) EXPECT_TRUE(std::isfinite(l));
    }
}

TEST(IterationBound, RatioNonincreasingInABar) {
    for (std::uint64_t i = 0; i < 10; ++i) {
        IterationCase c = random_iteration_case(case_seed(5, i));
        double prev = check_iteration_bound(c, 10.0).max_ratio;
        for (double a : {c.a_bar * 1.5, c.a_bar * 3.0}) {
            c.a_bar = a;
            const double r = check_iteration_bound(c, 10.0).max_ratio;
            EXPECT_LE(r, prev * (1 + 1e-9)) << i;
            prev = r;
        }
    }
}
