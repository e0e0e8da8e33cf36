#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "resil/composition.hpp"

using namespace resil;

namespace {

constexpr double kInvE = 0.367879441171442321595523770161;

std::vector<Probability> probs(const std::vector<double>& v)
{
    std::vector<Probability> out;
    for (double x : v)
        out.push_back({x, false});
    return out;
}

// Reconfiguration component with fixed R_i that yields reliability 0.99.
Component reliable_099(const std::string& name)
{
    return {name, ReconfigurationParams{0.5, 2, 0.0, probs({0.9, 0.9})}, 1.0};
}

// Redundancy component with reliability 0.75 at t = 50.
Component redundancy_075(const std::string& name)
{
    return {name, RedundancyParams{100.0, 0.8, 2, RedundancyMode::Space, 2.0, 100.0}, 0.8};
}

} // namespace

TEST(SeriesReliability, Examples)
{
    EXPECT_EQ(series_reliability(probs({1.0, 1.0, 1.0})).value, 1.0);
    EXPECT_TRUE(oracle::rel_close(series_reliability(probs({0.9, 0.9})).value, 0.81, 1e-12));
    EXPECT_EQ(series_reliability(probs({0.5, 0.0})).value, 0.0);
    EXPECT_THROW(series_reliability(std::vector<Probability>{}), DomainError);
}

TEST(SeriesReliability, PropertiesAgainstEnumeration)
{
    std::mt19937_64 gen(21);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::size_t n = 1; n <= 10; ++n) {
        std::vector<double> raw(n);
        for (double& r : raw)
            r = u(gen);
        const double series = series_reliability(probs(raw)).value;
        EXPECT_NEAR(series, oracle::all_up(raw), 1e-12);
        EXPECT_LE(series, *std::min_element(raw.begin(), raw.end()));

        std::vector<double> shuffled = raw;
        std::shuffle(shuffled.begin(), shuffled.end(), gen);
        EXPECT_NEAR(series_reliability(probs(shuffled)).value, series, 1e-15);

        const std::size_t cut = n / 2;
        if (cut > 0) {
            const std::vector<double> a(raw.begin(), raw.begin() + static_cast<std::ptrdiff_t>(cut));
            const std::vector<double> b(raw.begin() + static_cast<std::ptrdiff_t>(cut), raw.end());
            EXPECT_NEAR(series_reliability(probs(a)).value * series_reliability(probs(b)).value, series, 1e-15);
        }
    }
}

TEST(TotalOverhead, Examples)
{
    std::vector<ModelOutput> one(1);
    one[0].time_estimate = 5.0;
    EXPECT_EQ(total_overhead(one).value, 5.0);

    std::vector<ModelOutput> two(2);
    two[0].time_estimate = 101.0;
    two[1].time_estimate = 262.0;
    EXPECT_EQ(total_overhead(two).value, 363.0);
    EXPECT_TRUE(total_overhead(two).notes.empty());

    EXPECT_EQ(total_overhead(std::vector<ModelOutput>(3)).value, 0.0);
    EXPECT_THROW(total_overhead(std::vector<ModelOutput>{}), DomainError);
}

TEST(TotalOverhead, FlagsMixedRatiosAndTimes)
{
    std::vector<ModelOutput> mixed(2);
    mixed[0].time_estimate = 100.0;
    mixed[1].time_estimate = 0.11;
    mixed[1].kind = EstimateKind::Ratio;
    const OverheadSum s = total_overhead(mixed);
    EXPECT_EQ(s.value, 100.11);
    ASSERT_EQ(s.notes.size(), 1u);
}

TEST(EvaluateSystem, SingleUnprotectedSurvival)
{
    SystemModel s{{{"node", Unprotected{}, 1.0}}, 100.0, EventModel(100.0)};
    const auto r = evaluate_system(s, 100.0, {Convention::Survival, ReconfigurationMode::Literal});
    EXPECT_TRUE(oracle::rel_close(r.system_reliability.value, kInvE, 1e-12));
    EXPECT_EQ(r.total_overhead, 0.0);
}

TEST(EvaluateSystem, TwoComponentProduct)
{
    SystemModel s{{reliable_099("a"), redundancy_075("b")}, 100.0, EventModel(100.0)};
    const auto r = evaluate_system(s, 50.0);
    EXPECT_TRUE(oracle::rel_close(r.per_component[0].second.reliability->value, 0.99, 1e-12));
    EXPECT_TRUE(oracle::rel_close(r.per_component[1].second.reliability->value, 0.75, 1e-12));
    EXPECT_TRUE(oracle::rel_close(r.system_reliability.value, 0.7425, 1e-12));
    EXPECT_EQ(r.per_component[0].first, "a");
    EXPECT_EQ(r.per_component[1].first, "b");
    // 0.5 + 0.5 * 1/2 + 0 and 100 + 2
    EXPECT_NEAR(r.total_overhead, 0.75 + 102.0, 1e-12);
}

TEST(EvaluateSystem, PerfectZeroOverheadComponentIsIdentity)
{
    SystemModel base{{reliable_099("a"), redundancy_075("b")}, 100.0, EventModel(100.0)};
    SystemModel extended = base;
    // n-version with no failure mass: reliability 1 and no time contribution
    NVersionParams perfect;
    perfect.probabilities = probs({0.0, 0.0});
    perfect.event_model = EventModel(100.0);
    extended.components.push_back({"perfect", perfect, 1.0});

    const auto r0 = evaluate_system(base, 50.0);
    const auto r1 = evaluate_system(extended, 50.0);
    EXPECT_EQ(r1.per_component.back().second.reliability->value, 1.0);
    EXPECT_EQ(r1.per_component.back().second.time_estimate, 0.0);
    EXPECT_EQ(r1.system_reliability.value, r0.system_reliability.value);
    EXPECT_EQ(r1.total_overhead, r0.total_overhead);
}

TEST(EvaluateSystem, TotalOverheadIsSumOfComponents)
{
    DiagnosisParams diag{100.0, 4, 0.5, 2.0};
    CheckpointParams ck;
    ck.regular_time = 100.0;
    ck.checkpoint_cost = 2.0;
    ck.checkpoint_rate = 0.5;
    ck.recovery_cost = 6.0;
    ck.event_model = EventModel(1000.0);
    SystemModel s{{{"diag", diag, 1.0}, {"ckpt", RollbackPattern{ck}, 1.0}, redundancy_075("red")},
                  100.0,
                  EventModel(500.0)};
    const auto r = evaluate_system(s, 50.0);
    double sum = 0.0;
    for (const auto& [name, out] : r.per_component)
        sum += out.time_estimate;
    EXPECT_NEAR(r.total_overhead, sum, 1e-12);
    EXPECT_TRUE(std::any_of(r.diagnostics.begin(), r.diagnostics.end(),
                            [](const std::string& d) { return d.find("mixes") != std::string::npos; }));
}

TEST(EvaluateSystem, ErrorsCarryComponentName)
{
    SystemModel s{{{"broken", RedundancyParams{100.0, 1.5, 2, RedundancyMode::Space, 0.0, 10.0}, 1.0}},
                  1.0,
                  EventModel(10.0)};
    try {
        (void)evaluate_system(s, 1.0);
        FAIL() << "expected DomainError";
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("broken"), std::string::npos);
    }
}

TEST(EvaluateSystem, RejectsEmptyAndDuplicateNames)
{
    EXPECT_THROW(evaluate_system(SystemModel{{}, 1.0, EventModel(1.0)}, 0.0), DomainError);
    SystemModel dup{{{"x", Unprotected{}, 1.0}, {"x", Unprotected{}, 1.0}}, 1.0, EventModel(1.0)};
    EXPECT_THROW(evaluate_system(dup, 0.0), DomainError);
}

TEST(EvaluateSystem, ReconfigurationWithoutListUsesEventModel)
{
    SystemModel s{{{"r", ReconfigurationParams{0.2, 3, 0.0, {}}, 1.0}}, 1.0, EventModel(10.0)};
    const auto r = evaluate_system(s, 10.0, {Convention::Survival, ReconfigurationMode::Literal});
    const double f = 1.0 - kInvE;
    EXPECT_TRUE(oracle::rel_close(r.system_reliability.value, 1.0 - f * f * f, 1e-12));
}
