#include <gtest/gtest.h>

#include <sstream>

#include "oracles.hpp"
#include "resil/commands.hpp"

using namespace resil;

namespace {

std::string config_path(const std::string& name)
{
    return std::string(RESIL_SOURCE_DIR) + "/configs/" + name;
}

std::size_t column(const ReportDocument& r, const std::string& name)
{
    for (std::size_t i = 0; i < r.columns.size(); ++i)
        if (r.columns[i] == name)
            return i;
    ADD_FAILURE() << "no column " << name;
    return 0;
}

double number(const ReportDocument& r, std::size_t row, const std::string& col)
{
    return std::get<double>(r.rows.at(row).at(column(r, col)));
}

std::string render(const ReportDocument& r, ReportFormat f)
{
    std::ostringstream os;
    write_report(os, r, f);
    return os.str();
}

} // namespace

TEST(CmdEval, TwoComponentSystemProduct)
{
    const ReportDocument r = cmd_eval(parse_config(config_path("two_component.json")));
    ASSERT_EQ(r.rows.size(), 1u);
    EXPECT_TRUE(oracle::rel_close(number(r, 0, "system_reliability"), 0.7425, 1e-12));
    EXPECT_EQ(std::get<std::string>(r.rows[0].back()), "ok");
}

TEST(CmdEval, NoSweepMeansOneRow)
{
    const ReportDocument r = cmd_eval(parse_config(config_path("minimal.json")));
    EXPECT_EQ(r.rows.size(), 1u);
    EXPECT_EQ(r.columns.front(), "row");
    EXPECT_EQ(r.columns[1], "eval_time");
}

TEST(CmdEval, RedundancyDegreeSweep)
{
    const ReportDocument r = cmd_eval(parse_config(config_path("redundancy_sweep.json")));
    ASSERT_EQ(r.rows.size(), 5u);
    const double expected[] = {102.0, 182.0, 262.0, 342.0, 422.0};
    for (std::size_t i = 0; i < 5; ++i) {
        EXPECT_TRUE(oracle::rel_close(number(r, i, "solver.time"), expected[i], 1e-12)) << i;
        EXPECT_EQ(std::get<double>(r.rows[i][1]), static_cast<double>(i + 1));
    }
}

TEST(CmdEval, EvaluationErrorsBecomeRowErrors)
{
    // parse-time validation rejects this, so build it in memory
    ConfigDocument doc = parse_config(config_path("minimal.json"));
    doc.system.components[0].pattern = ReconfigurationParams{0.5, 3, 0.0, {Probability::exact(0.5)}};
    doc.source = nullptr;
    const ReportDocument r = cmd_eval(doc);
    ASSERT_EQ(r.rows.size(), 1u);
    EXPECT_TRUE(r.has_row_errors);
    EXPECT_EQ(r.rows[0].size(), r.columns.size());
    const auto& status = std::get<std::string>(r.rows[0].back());
    EXPECT_EQ(status.rfind("error: ", 0), 0u) << status;
    EXPECT_NE(status.find("node"), std::string::npos) << status;
}

TEST(CmdEval, InvalidSweepPointsAreRejectedBeforeAnyRow)
{
    ConfigDocument doc = parse_config(config_path("redundancy_sweep.json"));
    doc.system.components[0].pattern = ReconfigurationParams{0.5, 3, 0.0, {Probability::exact(0.5)}};
    doc.source = nullptr;
    EXPECT_THROW(cmd_eval(doc), ConfigError);
}

TEST(CmdEval, ConventionOverride)
{
    const ConfigDocument doc = parse_config(config_path("minimal.json"));
    CommandOptions opts;
    opts.convention = Convention::Survival;
    const double lit = number(cmd_eval(doc), 0, "system_reliability");
    const double surv = number(cmd_eval(doc, opts), 0, "system_reliability");
    EXPECT_NEAR(lit + surv, 1.0, 1e-15);
}

TEST(CmdSimulate, NoFaultScenario)
{
    ConfigDocument doc = parse_config_text(R"({
        "version": "1",
        "system": {"mtti": 10, "components": [{"name": "a"}]},
        "scenario": {"work": 10, "fault_mtti": "inf"}
    })");
    CommandOptions opts;
    opts.trials = 200;
    const ReportDocument r = cmd_simulate(doc, opts);
    EXPECT_EQ(number(r, 0, "completion_fraction"), 1.0);
    EXPECT_EQ(number(r, 0, "mean_time_stderr"), 0.0);
    EXPECT_EQ(number(r, 0, "mean_time"), 10.0);
}

TEST(CmdSimulate, SameSeedSameBytes)
{
    const ConfigDocument doc = parse_config(config_path("checkpoint_compare.json"));
    CommandOptions a;
    a.trials = 2000;
    a.workers = 1;
    CommandOptions b = a;
    b.workers = 8;
    for (ReportFormat f : {ReportFormat::Csv, ReportFormat::Structured})
        EXPECT_EQ(render(cmd_simulate(doc, a), f), render(cmd_simulate(doc, b), f));
    CommandOptions c = a;
    c.seed = 43;
    EXPECT_NE(render(cmd_simulate(doc, a), ReportFormat::Csv), render(cmd_simulate(doc, c), ReportFormat::Csv));
}

TEST(CmdSimulate, MissingScenarioIsAUsageError)
{
    EXPECT_THROW(cmd_simulate(parse_config(config_path("minimal.json"))), UsageError);
    EXPECT_THROW(cmd_compare(parse_config(config_path("minimal.json"))), UsageError);
}

TEST(CmdSimulate, TraceWritesTrialZeroPerRow)
{
    const ConfigDocument doc = parse_config(config_path("checkpoint_interval_sweep.json"));
    std::ostringstream trace;
    CommandOptions opts;
    opts.trials = 20;
    opts.trace = &trace;
    const ReportDocument r = cmd_simulate(doc, opts);
    EXPECT_EQ(r.rows.size(), 14u);
    EXPECT_NE(trace.str().find("\"row\":13"), std::string::npos);
}

TEST(CmdCompare, UnprotectedSurvivalWithinThreeStandardErrors)
{
    CommandOptions opts;
    opts.trials = 20000;
    const ReportDocument r = cmd_compare(parse_config(config_path("unprotected_compare.json")), opts);
    ASSERT_EQ(r.rows.size(), 4u);
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        const double gap = number(r, i, "abs_gap_survival");
        EXPECT_LE(gap, 3.0 * number(r, i, "empirical_stderr")) << "row " << i;
        EXPECT_NEAR(number(r, i, "analytic_literal") + number(r, i, "analytic_survival"), 1.0, 1e-12);
    }
}

TEST(CmdCompare, LiteralRollbackColumnReproducesFixture)
{
    CommandOptions opts;
    opts.trials = 500;
    const ReportDocument r = cmd_compare(parse_config(config_path("checkpoint_compare.json")), opts);
    for (std::size_t i = 0; i < r.rows.size(); ++i)
        EXPECT_TRUE(oracle::rel_close(number(r, i, "analytic_literal"), 0.104165864703471749323145417123, 1e-12));
}

TEST(CmdCompare, RedundancyWithinCubicTermOfEmpirical)
{
    CommandOptions opts;
    opts.trials = 50000;
    const ReportDocument r = cmd_compare(parse_config(config_path("replication_compare.json")), opts);
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        const double t = number(r, i, "t");
        const double x = t / 1000.0;
        const double f = -std::expm1(-x);
        // analytic vs exact squared-failure oracle: the gap is x^3 to leading order
        EXPECT_LE(std::abs(number(r, i, "analytic_literal") - (1.0 - f * f)), 1.01 * x * x * x);
        EXPECT_LE(std::abs(number(r, i, "empirical") - (1.0 - f * f)), 3.0 * number(r, i, "empirical_stderr") + 1e-12);
    }
}

TEST(CmdCompare, IncompatibleSectionsAreRejected)
{
    ConfigDocument doc = parse_config(config_path("replication_compare.json"));
    std::get<RedundancyParams>(doc.system.components[0].pattern).degree = 3;
    EXPECT_THROW(cmd_compare(doc), UsageError);
    doc = parse_config(config_path("unprotected_compare.json"));
    doc.system.components.push_back({"extra", Unprotected{}, 1.0});
    EXPECT_THROW(cmd_compare(doc), UsageError);
    EXPECT_TRUE(mapping_mismatch(parse_config(config_path("checkpoint_compare.json")).system,
                                 *parse_config(config_path("checkpoint_compare.json")).scenario) == std::nullopt);
}

TEST(Reports, CsvHasProvenanceThenOneHeader)
{
    const ReportDocument r = cmd_eval(parse_config(config_path("redundancy_sweep.json")));
    const std::string csv = render(r, ReportFormat::Csv);
    std::istringstream is(csv);
    std::string line;
    std::size_t comments = 0, data = 0;
    bool header_seen = false;
    while (std::getline(is, line)) {
        if (line.rfind("#", 0) == 0) {
            EXPECT_FALSE(header_seen);
            ++comments;
        } else if (!header_seen) {
            header_seen = true;
            EXPECT_EQ(line.rfind("row,system.components.solver.pattern.degree,eval_time", 0), 0u) << line;
        } else {
            ++data;
        }
    }
    EXPECT_GE(comments, 3u);
    EXPECT_EQ(data, 5u);
    EXPECT_NE(csv.find("# config {"), std::string::npos);
}

TEST(Reports, StructuredEchoesInputsAndReparses)
{
    const ConfigDocument doc = parse_config(config_path("two_component.json"));
    const ReportDocument r = cmd_eval(doc);
    const auto j = nlohmann::json::parse(render(r, ReportFormat::Structured));
    EXPECT_EQ(j.at("command"), "eval");
    EXPECT_EQ(j.at("rows").size(), 1u);
    // the echoed configuration reproduces the run
    EXPECT_EQ(parse_config_json(j.at("inputs")), doc);
}

TEST(Reports, FormatDouble)
{
    EXPECT_EQ(format_double(0.1), "0.1");
    EXPECT_EQ(format_double(262.0), "262");
    EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "inf");
}
