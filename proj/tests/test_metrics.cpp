#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "pigvent/metrics.hpp"

using namespace pigvent;
using namespace pigvent::metrics;
using Catch::Approx;

namespace {

// Naive double-pass reference implementations used as the oracle.
namespace ref {

double mean(const std::vector<double>& v)
{
    double s = 0.0;
    for (double x : v)
        s += x;
    return s / static_cast<double>(v.size());
}

double rmse(const SeriesPair& p)
{
    double s = 0.0;
    for (std::size_t i = 0; i < p.observed.size(); ++i)
        s += (p.observed[i] - p.predicted[i]) * (p.observed[i] - p.predicted[i]);
    return std::sqrt(s / static_cast<double>(p.observed.size()));
}

double mape(const SeriesPair& p)
{
    double s = 0.0;
    for (std::size_t i = 0; i < p.observed.size(); ++i)
        s += std::abs(p.predicted[i] - p.observed[i]) / std::abs(p.observed[i]) * 100.0;
    return s / static_cast<double>(p.observed.size());
}

double sd(const SeriesPair& p)
{
    const double m = mean(p.observed);
    double s = 0.0;
    for (double y : p.predicted)
        s += (y - m) * (y - m);
    return std::sqrt(s / static_cast<double>(p.predicted.size()));
}

double r2(const SeriesPair& p)
{
    const double m = mean(p.observed);
    double num = 0.0, den = 0.0;
    for (double y : p.predicted)
        num += (y - m) * (y - m);
    for (double y : p.observed)
        den += (y - m) * (y - m);
    for (std::size_t i = 0; i < p.observed.size(); ++i)
        den += (p.observed[i] - p.predicted[i]) * (p.observed[i] - p.predicted[i]);
    return num / den;
}

}  // namespace ref

}  // namespace

TEST_CASE("rmse")
{
    CHECK(rmse({{1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}}) == 0.0);
    CHECK(rmse({{0.0, 2.0}, {2.0, 2.0}}) == Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(rmse({{1.0, 2.0, 3.0}, {2.0, 3.0, 4.0}}) == Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(rmse({{}, {}}), std::invalid_argument);
    CHECK_THROWS_AS(rmse({{1.0}, {1.0, 2.0}}), std::invalid_argument);
}

TEST_CASE("mape")
{
    CHECK(mape({{10.0, 20.0}, {10.0, 20.0}}) == 0.0);
    CHECK(mape({{10.0, 20.0}, {11.0, 18.0}}) == Approx(10.0).epsilon(1e-12));
    CHECK_THROWS_AS(mape({{10.0, 0.0}, {1.0, 1.0}}), ZeroObserved);
    try {
        mape({{10.0, 0.0, 3.0}, {1.0, 1.0, 1.0}});
        FAIL("expected ZeroObserved");
    } catch (const ZeroObserved& e) {
        CHECK(e.index == 1);
    }
}

TEST_CASE("sd as printed (predictions around the observed mean)")
{
    CHECK(sd({{2.0, 2.0}, {2.0, 2.0}}) == 0.0);
    CHECK(sd({{2.0, 2.0}, {1.0, 3.0}}) == Approx(1.0).epsilon(1e-12));
    // constant prediction c against observed mean m gives |c - m|
    CHECK(sd({{1.0, 3.0}, {5.0, 5.0}}) == Approx(3.0).epsilon(1e-12));
}

TEST_CASE("r2 as printed")
{
    CHECK(r2({{1.0, 3.0}, {1.0, 3.0}}) == Approx(1.0).epsilon(1e-12));
    CHECK(r2({{1.0, 3.0}, {2.0, 2.0}}) == 0.0);  // predictions stuck at the observed mean
    CHECK(r2({{1.0, 3.0}, {1.0, 2.0}}) == Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK_THROWS_AS(r2({{2.0, 2.0}, {1.0, 3.0}}), std::invalid_argument);
}

TEST_CASE("standard-definition companions")
{
    const SeriesPair p{{1.0, 3.0}, {1.0, 2.0}};
    CHECK(sd_standard(p) == Approx(1.0).epsilon(1e-12));  // population SD of observed
    CHECK(r2_standard(p) == Approx(1.0 - 1.0 / 2.0).epsilon(1e-12));
    CHECK(r2_standard({{1.0, 3.0}, {1.0, 3.0}}) == 1.0);
}

TEST_CASE("metrics agree with the naive reference on random pairs")
{
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> value(1.0, 40.0);
    std::uniform_int_distribution<std::size_t> length(2, 60);
    for (int trial = 0; trial < 200; ++trial) {
        SeriesPair p;
        const std::size_t n = length(rng);
        for (std::size_t i = 0; i < n; ++i) {
            p.observed.push_back(value(rng));
            p.predicted.push_back(value(rng));
        }
        CHECK(rmse(p) == Approx(ref::rmse(p)).margin(1e-12));
        CHECK(mape(p) == Approx(ref::mape(p)).margin(1e-12));
        CHECK(sd(p) == Approx(ref::sd(p)).margin(1e-12));
        CHECK(r2(p) == Approx(ref::r2(p)).margin(1e-12));
    }
}

TEST_CASE("rmse and sd are invariant under joint reordering")
{
    std::mt19937 rng(99);
    SeriesPair p{{3.0, 1.0, 4.0, 1.0, 5.0, 9.0}, {2.0, 6.0, 5.0, 3.0, 5.0, 8.0}};
    std::vector<std::size_t> perm(p.observed.size());
    std::iota(perm.begin(), perm.end(), 0u);
    std::shuffle(perm.begin(), perm.end(), rng);
    SeriesPair q;
    for (std::size_t i : perm) {
        q.observed.push_back(p.observed[i]);
        q.predicted.push_back(p.predicted[i]);
    }
    CHECK(rmse(q) == Approx(rmse(p)).margin(1e-12));
    CHECK(sd(q) == Approx(sd(p)).margin(1e-12));
}

TEST_CASE("comfort time percentage")
{
    CHECK(comfort_time_percentage({22.0, 23.0, 24.0}, 21.0, 25.0) == 100.0);
    CHECK(comfort_time_percentage({10.0, 40.0}, 21.0, 25.0) == 0.0);
    CHECK(comfort_time_percentage({20.0, 22.0, 26.0, 24.0}, 21.0, 25.0) == 50.0);
    CHECK(comfort_time_percentage({21.0, 25.0}, 21.0, 25.0) == 100.0);  // boundaries inside
    CHECK_THROWS_AS(comfort_time_percentage({}, 21.0, 25.0), std::invalid_argument);
}

TEST_CASE("energy consumption")
{
    const FanModel fan;  // linear, 0.4 W per m^3/h
    CHECK(energy_consumption(std::vector<double>(10, 0.0), 500.0, fan, 600.0) == 0.0);
    // constant 3000 m^3/h total for 10 h at 0.4 W/(m^3/h) = 1200 W * 10 h
    CHECK(energy_consumption(std::vector<double>(60, 6.0), 500.0, fan, 600.0) ==
          Approx(12.0).epsilon(1e-12));
    FanModel doubled = fan;
    doubled.specific_fan_power = 0.8;
    CHECK(energy_consumption(std::vector<double>(60, 6.0), 500.0, doubled, 600.0) ==
          Approx(24.0).epsilon(1e-12));
    CHECK_THROWS_AS(energy_consumption({-1.0}, 500.0, fan, 600.0), std::invalid_argument);

    SECTION("additive over concatenated logs")
    {
        const std::vector<double> a(17, 12.0), b(9, 33.0);
        std::vector<double> ab = a;
        ab.insert(ab.end(), b.begin(), b.end());
        CHECK(energy_consumption(ab, 120.0, fan, 600.0) ==
              Approx(energy_consumption(a, 120.0, fan, 600.0) +
                     energy_consumption(b, 120.0, fan, 600.0))
                  .margin(1e-12));
    }
    SECTION("cubic fan law")
    {
        FanModel cubic{0.4, FanLaw::cubic, 60000.0};
        // at rated flow the two laws agree
        CHECK(fan_power_w(cubic, 60000.0) == Approx(fan_power_w(fan, 60000.0)).epsilon(1e-12));
        CHECK(fan_power_w(cubic, 30000.0) == Approx(0.4 * 60000.0 * 0.125).epsilon(1e-12));
    }
}

TEST_CASE("compare report")
{
    const control::ComfortBands bands;
    const FanModel fan;
    plant::TrajectoryLog log;
    log.dt_s = 600.0;
    for (int i = 0; i < 4; ++i) {
        plant::LogStep s;
        s.u_per_animal = 10.0 + i;
        s.state = {22.0 + i * 2.0, 60.0};  // 22, 24, 26, 28 -> half in [21, 25]
        log.steps.push_back(s);
    }
    SECTION("identical logs give identical reports and zero deltas")
    {
        const auto cmp = compare_report(log, log, bands, fan, 100.0);
        CHECK(cmp.a.comfort_temp_pct == cmp.b.comfort_temp_pct);
        CHECK(cmp.delta_comfort_temp_pct == 0.0);
        CHECK(cmp.delta_energy_kwh == 0.0);
    }
    SECTION("hand-built four-step log matches hand-computed numbers")
    {
        const auto rep = summarize(log, bands, fan, 100.0);
        CHECK(rep.comfort_temp_pct == 50.0);
        CHECK(rep.comfort_rh_pct == 100.0);
        // flows 1000..1300 m^3/h, 0.4 W each over 600 s
        const double expected = (1000.0 + 1100.0 + 1200.0 + 1300.0) * 0.4 * 600.0 / 3.6e6;
        CHECK(rep.energy_kwh == Approx(expected).epsilon(1e-12));
    }
    SECTION("mismatched logs are rejected")
    {
        plant::TrajectoryLog other = log;
        other.steps.pop_back();
        CHECK_THROWS_AS(compare_report(log, other, bands, fan, 100.0), std::invalid_argument);
    }
}
