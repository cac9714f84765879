#include "doctest.h"

#include "sscc/random.hpp"

#include <cmath>

using namespace sscc;

TEST_CASE("samples are a pure function of seed and index") {
    for (std::uint64_t seed : {0ull, 1ull, 42ull}) {
        for (std::uint64_t i = 0; i < 64; ++i) {
            CHECK(uniform01(seed, i) == uniform01(seed, i));
        }
    }
    // Different seeds produce different streams.
    CHECK(uniform01(0, 0) != uniform01(1, 0));
    CHECK(uniform01(7, 3) != uniform01(7, 4));
}

TEST_CASE("uniform draws stay in the open unit interval with mean 1/2") {
    double sum = 0;
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
        double u = uniform01(123, static_cast<std::uint64_t>(i));
        CHECK(u > 0.0);
        CHECK(u < 1.0);
        sum += u;
    }
    CHECK(std::fabs(sum / n - 0.5) < 0.02);
}

TEST_CASE("sample_prob advances the counter by one") {
    SampleCounter c{9, 5};
    auto [u, c2] = sample_prob(c);
    CHECK(c2.seed == 9);
    CHECK(c2.index == 6);
    CHECK(u == uniform01(9, 5));
}

TEST_CASE("constants pass through without consuming an index") {
    SampleCounter c{1, 17};
    auto e = StochasticExpression::constant(mpq_class(13, 5));
    auto [t, c2] = sample_time(e, c);
    CHECK(t == TimeValue(13, 5));
    CHECK(c2 == c);
}

TEST_CASE("every distribution consumes exactly one index") {
    SampleCounter c{3, 0};
    for (const auto& e : {
             StochasticExpression::norm(1.0, 0.2),
             StochasticExpression::exponential(2.0),
             StochasticExpression::unif(1.0, 3.0),
             StochasticExpression::gam(2.0, 0.5),
             StochasticExpression::weib(1.0, 1.5),
             StochasticExpression::chi(3.0),
             StochasticExpression::log_norm(0.0, 0.25),
         }) {
        auto [t, c2] = sample_time(e, c);
        CHECK(c2.index == c.index + 1);
        CHECK(t >= TimeValue::zero());
        // Replaying the same index replays the same draw.
        auto [t2, c3] = sample_time(e, c);
        CHECK(t == t2);
        CHECK(c3.index == c2.index);
    }
}

TEST_CASE("negative draws clamp to zero") {
    // Norm(-100, 1) is essentially always negative.
    auto e = StochasticExpression::norm(-100.0, 1.0);
    SampleCounter c{11, 0};
    for (int i = 0; i < 32; ++i) {
        auto [t, c2] = sample_time(e, c);
        c = c2;
        CHECK(t == TimeValue::zero());
    }
}

namespace {

double empirical_mean(const StochasticExpression& e, int n, std::uint64_t seed) {
    SampleCounter c{seed, 0};
    double sum = 0;
    for (int i = 0; i < n; ++i) {
        auto [t, c2] = sample_time(e, c);
        c = c2;
        sum += t.to_double();
    }
    return sum / n;
}

} // namespace

TEST_CASE("distribution means match theory within 5 percent") {
    const int n = 100000;
    // Norm(m, s) with m >= 3s: clamping is negligible, mean ~ m.
    CHECK(std::fabs(empirical_mean(StochasticExpression::norm(3.0, 1.0), n, 5) - 3.0) < 0.15);
    // Exp(rate): mean 1/rate.
    CHECK(std::fabs(empirical_mean(StochasticExpression::exponential(2.0), n, 6) - 0.5) < 0.025);
    // Unif(1, 3): mean 2.
    CHECK(std::fabs(empirical_mean(StochasticExpression::unif(1.0, 3.0), n, 7) - 2.0) < 0.1);
    // Gam(shape, scale): mean shape*scale.
    CHECK(std::fabs(empirical_mean(StochasticExpression::gam(2.0, 1.5), n, 8) - 3.0) < 0.15);
    // Weib(scale, shape): mean scale * Gamma(1 + 1/shape); shape 1 -> scale.
    CHECK(std::fabs(empirical_mean(StochasticExpression::weib(2.0, 1.0), n, 9) - 2.0) < 0.1);
    // Chi(df): mean df.
    CHECK(std::fabs(empirical_mean(StochasticExpression::chi(4.0), n, 10) - 4.0) < 0.2);
    // Log(m, s): mean exp(m + s^2/2).
    double expect = std::exp(0.0 + 0.25 * 0.25 / 2);
    CHECK(std::fabs(empirical_mean(StochasticExpression::log_norm(0.0, 0.25), n, 11) - expect) <
          0.05 * expect);
}

TEST_CASE("normal draws have the right spread") {
    // Estimate the stdev of Norm(10, 2): far from zero so clamping is moot.
    auto e = StochasticExpression::norm(10.0, 2.0);
    SampleCounter c{21, 0};
    const int n = 50000;
    double sum = 0, sq = 0;
    for (int i = 0; i < n; ++i) {
        auto [t, c2] = sample_time(e, c);
        c = c2;
        double x = t.to_double();
        sum += x;
        sq += x * x;
    }
    double mean = sum / n;
    double var = sq / n - mean * mean;
    CHECK(std::fabs(mean - 10.0) < 0.05);
    CHECK(std::fabs(std::sqrt(var) - 2.0) < 0.05);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(StochasticExpression::norm(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(StochasticExpression::norm(1.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(StochasticExpression::exponential(0.0), std::invalid_argument);
    CHECK_THROWS_AS(StochasticExpression::unif(3.0, 3.0), std::invalid_argument);
    CHECK_THROWS_AS(StochasticExpression::unif(5.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(StochasticExpression::gam(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(StochasticExpression::weib(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(StochasticExpression::chi(0.0), std::invalid_argument);
    CHECK_THROWS_AS(StochasticExpression::log_norm(0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(StochasticExpression::constant(mpq_class(-1)), std::invalid_argument);
}

TEST_CASE("canonical distribution text") {
    CHECK(StochasticExpression::norm(1.0, 0.2).str() == "Norm(1, 0.2)");
    CHECK(StochasticExpression::constant(mpq_class(13, 5)).str() == "Const(13/5)");
    CHECK(StochasticExpression::exponential(2.5).str() == "Exp(2.5)");
}
