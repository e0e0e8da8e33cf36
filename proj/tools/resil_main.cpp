// resil: batch front end for the resilience pattern models and simulator.
//
//   resil eval     --config sys.json [--output out.csv] [--format csv|structured]
//   resil simulate --config sys.json [--trials N] [--seed S] [--trace trace.jsonl]
//   resil sweep    --config sys.json   (eval or simulate, sweep section required)
//   resil compare  --config sys.json [--trials N] [--seed S]
//
// Exit codes: 0 success, 1 validation or usage error, 2 evaluation error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "resil/commands.hpp"
#include "resil/config.hpp"
#include "resil/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

struct Args {
    std::string config;
    std::string output;
    std::string format = "csv";
    long long trials = 10000;
    std::uint64_t seed = 42;
    std::string convention;
    std::string trace;
    unsigned workers = 0;
};

void add_common(CLI::App* sub, Args& a, bool stochastic)
{
    sub->add_option("--config", a.config, "Configuration document (JSON)")->required();
    sub->add_option("--output", a.output, "Report path (default: stdout)");
    sub->add_option("--format", a.format, "Report format")
        ->check(CLI::IsMember({"csv", "structured"}));
    sub->add_option("--convention", a.convention, "Override the document's reliability convention")
        ->check(CLI::IsMember({"literal", "survival"}));
    if (stochastic) {
        sub->add_option("--trials", a.trials, "Monte Carlo trials per row")->check(CLI::PositiveNumber);
        sub->add_option("--seed", a.seed, "Master seed");
        sub->add_option("--trace", a.trace, "Write a JSON-lines event trace of trial 0 per row");
        sub->add_option("--workers", a.workers,
                        "Worker threads (0 = RESIL_MAX_THREADS or hardware concurrency)");
    }
}

int run(const std::string& command, const Args& a)
{
    resil::ConfigDocument doc;
    try {
        doc = resil::parse_config(a.config);
    } catch (const resil::ConfigError& e) {
        std::cerr << e.what() << '\n';
        return kExitValidation;
    }

    std::string cmd = command;
    if (cmd == "sweep") {
        if (!doc.sweep) {
            std::cerr << "sweep: the configuration has no sweep section\n";
            return kExitValidation;
        }
        cmd = doc.sweep->parameter.rfind("scenario.", 0) == 0 ? "simulate" : "eval";
    }

    resil::CommandOptions opts;
    opts.trials = a.trials;
    opts.seed = a.seed;
    opts.workers = a.workers;
    if (!a.convention.empty())
        opts.convention = resil::convention_from_string(a.convention);

    std::ofstream trace_file;
    if (!a.trace.empty()) {
        trace_file.open(a.trace);
        if (!trace_file) {
            std::cerr << "cannot open trace file " << a.trace << '\n';
            return kExitValidation;
        }
        opts.trace = &trace_file;
    }

    resil::ReportDocument report;
    try {
        if (cmd == "eval")
            report = resil::cmd_eval(doc, opts);
        else if (cmd == "simulate")
            report = resil::cmd_simulate(doc, opts);
        else
            report = resil::cmd_compare(doc, opts);
    } catch (const resil::UsageError& e) {
        std::cerr << cmd << ": " << e.what() << '\n';
        return kExitValidation;
    } catch (const resil::ConfigError& e) {
        std::cerr << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << cmd << ": " << e.what() << '\n';
        return kExitRuntime;
    }

    const resil::ReportFormat format = resil::report_format_from_string(a.format);
    if (a.output.empty()) {
        resil::write_report(std::cout, report, format);
    } else {
        std::ofstream out(a.output);
        if (!out) {
            std::cerr << "cannot open output file " << a.output << '\n';
            return kExitRuntime;
        }
        resil::write_report(out, report, format);
    }
    return report.has_row_errors ? kExitRuntime : kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Reliability and performance models for resilience design patterns"};
    app.set_version_flag("--version", resil::toolkit_version());
    app.require_subcommand(1);

    Args args;
    add_common(app.add_subcommand("eval", "Evaluate the analytic models"), args, false);
    add_common(app.add_subcommand("simulate", "Run the Monte Carlo simulator"), args, true);
    add_common(app.add_subcommand("sweep", "Evaluate or simulate every point of the sweep section"), args, true);
    add_common(app.add_subcommand("compare", "Analytic models next to simulated reliability"), args, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    return run(app.get_subcommands().front()->get_name(), args);
}
