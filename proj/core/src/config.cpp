#include "resil/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace resil {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string join_errors(const std::vector<std::string>& errors)
{
    std::string msg = "invalid configuration";
    for (const std::string& e : errors)
        msg += "\n  " + e;
    return msg;
}

std::string format_number(double v)
{
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

// Strict object reader: every key must be consumed, errors accumulate.
class Fields {
public:
    Fields(const json& j, std::string path, std::vector<std::string>& errors)
        : j_(j), path_(std::move(path)), errors_(errors)
    {
        if (!j_.is_object()) {
            error("", "expected an object");
            ok_ = false;
        }
    }

    Fields(const Fields&) = delete;
    Fields& operator=(const Fields&) = delete;

    ~Fields()
    {
        if (!ok_)
            return;
        for (const auto& [key, value] : j_.items())
            if (!seen_.count(key))
                errors_.push_back(at(key) + ": unknown key");
    }

    const std::string& path() const { return path_; }
    std::string at(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    void error(const std::string& key, const std::string& msg)
    {
        errors_.push_back((key.empty() ? (path_.empty() ? std::string("<root>") : path_) : at(key)) + ": " + msg);
    }

    bool has(const std::string& key)
    {
        if (!ok_ || !j_.contains(key))
            return false;
        seen_.insert(key);
        return true;
    }

    const json* get(const std::string& key, bool required)
    {
        if (!has(key)) {
            if (required && ok_)
                error(key, "required field missing");
            return nullptr;
        }
        return &j_.at(key);
    }

    // Accepts a number, or the string "inf" when allow_inf is set.
    std::optional<double> number(const std::string& key, bool required, bool allow_inf = false)
    {
        const json* v = get(key, required);
        if (!v)
            return std::nullopt;
        if (v->is_number())
            return v->get<double>();
        if (allow_inf && v->is_string() && v->get<std::string>() == "inf")
            return kInf;
        error(key, allow_inf ? "expected a number or \"inf\"" : "expected a number");
        return std::nullopt;
    }

    double number_or(const std::string& key, double fallback, bool allow_inf = false)
    {
        return number(key, false, allow_inf).value_or(fallback);
    }

    double required_number(const std::string& key, bool allow_inf = false)
    {
        return number(key, true, allow_inf).value_or(std::numeric_limits<double>::quiet_NaN());
    }

    std::optional<long long> integer(const std::string& key, bool required)
    {
        const json* v = get(key, required);
        if (!v)
            return std::nullopt;
        if (v->is_number_integer())
            return v->get<long long>();
        if (v->is_number_float()) {
            const double d = v->get<double>();
            if (std::isfinite(d) && d == std::floor(d) && std::abs(d) < 9.0e15)
                return static_cast<long long>(d);
        }
        error(key, "expected an integer");
        return std::nullopt;
    }

    std::optional<std::string> string(const std::string& key, bool required)
    {
        const json* v = get(key, required);
        if (!v)
            return std::nullopt;
        if (v->is_string())
            return v->get<std::string>();
        error(key, "expected a string");
        return std::nullopt;
    }

    // Parses an enum-like string with `convert`, reporting failures under `key`.
    template <class T, class F>
    T choice(const std::string& key, T fallback, F convert)
    {
        if (auto s = string(key, false)) {
            try {
                return convert(*s);
            } catch (const DomainError& e) {
                error(key, e.what());
            }
        }
        return fallback;
    }

    std::vector<double> numbers(const std::string& key, bool required)
    {
        std::vector<double> out;
        const json* v = get(key, required);
        if (!v)
            return out;
        if (!v->is_array()) {
            error(key, "expected an array of numbers");
            return out;
        }
        for (std::size_t i = 0; i < v->size(); ++i) {
            if (!(*v)[i].is_number())
                errors_.push_back(at(key) + "[" + std::to_string(i) + "]: expected a number");
            else
                out.push_back((*v)[i].get<double>());
        }
        return out;
    }

    void check(bool ok, const std::string& key, const std::string& msg)
    {
        if (!ok)
            error(key, msg);
    }

    bool valid() const { return ok_; }

private:
    const json& j_;
    std::string path_;
    std::vector<std::string>& errors_;
    std::set<std::string> seen_;
    bool ok_ = true;
};

bool finite_nonneg(double v) { return v >= 0.0 && std::isfinite(v); }
bool finite_pos(double v) { return v > 0.0 && std::isfinite(v); }
bool unit_interval(double v) { return v >= 0.0 && v <= 1.0; }

std::string got(double v) { return ", got " + format_number(v); }

// NaN marks a missing required field, which is already reported.
void check_nonneg(Fields& f, const std::string& key, double v)
{
    f.check(std::isnan(v) || finite_nonneg(v), key, "must be finite and >= 0" + got(v));
}

void check_pos(Fields& f, const std::string& key, double v)
{
    f.check(std::isnan(v) || finite_pos(v), key, "must be finite and > 0" + got(v));
}

void check_unit(Fields& f, const std::string& key, double v)
{
    f.check(std::isnan(v) || unit_interval(v), key, "must lie in [0,1]" + got(v));
}

std::vector<Probability> probabilities(Fields& f, const std::string& key, bool required)
{
    std::vector<Probability> out;
    const std::vector<double> raw = f.numbers(key, required);
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (!unit_interval(raw[i]))
            f.error(key, "element " + std::to_string(i) + " must lie in [0,1]" + got(raw[i]));
        out.push_back({raw[i], false});
    }
    return out;
}

EventModel event_model_or(double mtti, const EventModel& fallback)
{
    return finite_pos(mtti) ? EventModel(mtti) : fallback;
}

CheckpointParams parse_checkpoint(Fields& f, const EventModel& system_events, bool allow_logging)
{
    CheckpointParams p;
    p.mode = allow_logging ? f.choice("mode", RecoveryMode::Checkpointing, recovery_mode_from_string)
                           : RecoveryMode::Checkpointing;
    const bool logging = p.mode == RecoveryMode::MessageLogging;

    p.regular_time = f.required_number("regular_time");
    check_nonneg(f, "regular_time", p.regular_time);
    p.checkpoint_cost = logging ? f.number_or("checkpoint_cost", 0.0) : f.required_number("checkpoint_cost");
    check_nonneg(f, "checkpoint_cost", p.checkpoint_cost);
    p.checkpoint_rate = f.required_number("checkpoint_rate");
    check_pos(f, "checkpoint_rate", p.checkpoint_rate);
    p.recovery_cost = f.required_number("recovery_cost");
    check_nonneg(f, "recovery_cost", p.recovery_cost);

    const double mtti = f.number_or("mtti", system_events.mtti());
    check_pos(f, "mtti", mtti);
    p.event_model = event_model_or(mtti, system_events);

    if (allow_logging) {
        if (auto m = f.integer("message_count", logging)) {
            f.check(*m >= 0, "message_count", "must be >= 0");
            p.message_count = *m;
        }
        if (auto t = f.number("log_time_per_message", logging)) {
            check_nonneg(f, "log_time_per_message", *t);
            p.log_time_per_message = *t;
        }
    }
    return p;
}

PatternInstance parse_pattern(const json& j, const std::string& path, double scope_fraction,
                              const EventModel& system_events, std::vector<std::string>& errors)
{
    Fields f(j, path, errors);
    if (!f.valid())
        return Unprotected{};
    const std::string type = f.string("type", true).value_or("unprotected");

    if (type == "unprotected")
        return Unprotected{};

    if (type == "diagnosis") {
        DiagnosisParams p;
        p.base_time = f.required_number("base_time");
        check_nonneg(f, "base_time", p.base_time);
        p.observed_params = static_cast<int>(f.integer("observed_params", true).value_or(1));
        f.check(p.observed_params >= 1, "observed_params", "must be >= 1");
        p.inference_time = f.required_number("inference_time");
        check_nonneg(f, "inference_time", p.inference_time);
        p.polling_frequency = f.required_number("polling_frequency");
        check_pos(f, "polling_frequency", p.polling_frequency);
        return p;
    }

    if (type == "reconfiguration") {
        ReconfigurationParams p;
        p.progress_fraction = f.required_number("progress_fraction");
        check_unit(f, "progress_fraction", p.progress_fraction);
        p.component_count = static_cast<int>(f.integer("component_count", true).value_or(2));
        f.check(p.component_count >= 2, "component_count", "must be >= 2");
        p.reconfig_downtime = f.required_number("downtime");
        check_nonneg(f, "downtime", p.reconfig_downtime);
        p.component_reliabilities = probabilities(f, "component_reliabilities", false);
        f.check(p.component_reliabilities.empty() ||
                    p.component_reliabilities.size() == static_cast<std::size_t>(p.component_count),
                "component_reliabilities", "length must equal component_count");
        return p;
    }

    if (type == "rollback")
        return RollbackPattern{parse_checkpoint(f, system_events, false)};

    if (type == "rollforward")
        return RollForwardPattern{parse_checkpoint(f, system_events, true)};

    if (type == "redundancy") {
        RedundancyParams p;
        p.serial_time = f.required_number("serial_time");
        check_pos(f, "serial_time", p.serial_time);
        p.replicated_fraction = f.number_or("replicated_fraction", scope_fraction);
        check_unit(f, "replicated_fraction", p.replicated_fraction);
        p.degree = static_cast<int>(f.integer("degree", true).value_or(1));
        f.check(p.degree >= 1, "degree", "must be >= 1");
        p.mode = f.choice("mode", RedundancyMode::Space, redundancy_mode_from_string);
        p.voting_time = f.number_or("voting_time", 0.0);
        check_nonneg(f, "voting_time", p.voting_time);
        p.replica_mtti = f.required_number("replica_mtti");
        check_pos(f, "replica_mtti", p.replica_mtti);
        return p;
    }

    if (type == "nversion") {
        NVersionParams p;
        const bool has_versions = f.has("version_success_probs");
        const bool has_exclusive = f.has("exclusive_success_probs");
        if (has_versions == has_exclusive) {
            f.error("", "exactly one of version_success_probs or exclusive_success_probs is required");
        } else {
            p.input = has_versions ? NVersionInput::VersionSuccess : NVersionInput::ExclusiveSuccess;
            const char* key = has_versions ? "version_success_probs" : "exclusive_success_probs";
            p.probabilities = probabilities(f, key, true);
            f.check(p.probabilities.size() >= 2, key, "needs at least 2 versions");
        }
        const double pv = f.number_or("voter_failure_prob", 0.0);
        check_unit(f, "voter_failure_prob", pv);
        p.voter_failure_prob = {pv, false};
        const double mtti = f.number_or("mtti", system_events.mtti());
        check_pos(f, "mtti", mtti);
        p.event_model = event_model_or(mtti, system_events);
        return p;
    }

    f.error("type", "unknown pattern type '" + type +
                        "' (expected unprotected|diagnosis|reconfiguration|rollback|rollforward|"
                        "redundancy|nversion)");
    return Unprotected{};
}

SimPolicy parse_policy(const json& j, const std::string& path, std::vector<std::string>& errors)
{
    Fields f(j, path, errors);
    if (!f.valid())
        return NoPolicy{};
    const std::string type = f.string("type", true).value_or("none");

    if (type == "none")
        return NoPolicy{};

    if (type == "checkpoint") {
        CheckpointPolicy p;
        p.interval = f.required_number("interval");
        check_pos(f, "interval", p.interval);
        p.cost = f.required_number("cost");
        check_nonneg(f, "cost", p.cost);
        p.recovery = f.required_number("recovery");
        check_nonneg(f, "recovery", p.recovery);
        return p;
    }

    if (type == "replication") {
        ReplicationPolicy p;
        p.degree = static_cast<int>(f.integer("degree", true).value_or(1));
        f.check(p.degree >= 1, "degree", "must be >= 1");
        p.mode = f.choice("mode", RedundancyMode::Space, redundancy_mode_from_string);
        p.survival_threshold = static_cast<int>(f.integer("survival_threshold", false).value_or(1));
        f.check(p.survival_threshold >= 1 && p.survival_threshold <= p.degree, "survival_threshold",
                "must lie in [1, degree]");
        p.voting_cost = f.number_or("voting_cost", 0.0);
        check_nonneg(f, "voting_cost", p.voting_cost);
        return p;
    }

    if (type == "reconfiguration") {
        ReconfigurationPolicy p;
        p.components = static_cast<int>(f.integer("components", true).value_or(1));
        f.check(p.components >= 1, "components", "must be >= 1");
        p.downtime = f.number_or("downtime", 0.0);
        check_nonneg(f, "downtime", p.downtime);
        p.min_components = static_cast<int>(f.integer("min_components", false).value_or(1));
        f.check(p.min_components >= 1 && p.min_components <= p.components, "min_components",
                "must lie in [1, components]");
        return p;
    }

    f.error("type", "unknown policy type '" + type + "' (expected none|checkpoint|replication|reconfiguration)");
    return NoPolicy{};
}

SimScenario parse_scenario(const json& j, std::vector<double>& report_times, std::vector<std::string>& errors)
{
    SimScenario s;
    Fields f(j, "scenario", errors);
    if (!f.valid())
        return s;
    s.work = f.required_number("work");
    check_pos(f, "work", s.work);
    s.node_count = static_cast<int>(f.integer("node_count", false).value_or(1));
    f.check(s.node_count >= 1, "node_count", "must be >= 1");
    s.fault_mtti = f.required_number("fault_mtti", true);
    f.check(s.fault_mtti > 0.0, "fault_mtti", "must be > 0 or \"inf\"");
    s.mtti_scope = f.choice("mtti_scope", MttiScope::System, mtti_scope_from_string);
    if (const json* p = f.get("policy", false))
        s.policy = parse_policy(*p, f.at("policy"), errors);
    if (auto d = f.number("deadline", false, true)) {
        f.check(*d > 0.0, "deadline", "must be > 0");
        s.deadline = *d;
    }
    s.max_sim_time = f.number_or("max_sim_time", 1000.0 * s.work, true);
    f.check(s.max_sim_time > 0.0, "max_sim_time", "must be > 0");

    report_times = f.numbers("report_times", false);
    if (!f.has("report_times") && finite_pos(s.work))
        report_times = {s.work};
    for (double t : report_times)
        check_nonneg(f, "report_times", t);
    return s;
}

SweepSpec parse_sweep(const json& j, std::vector<std::string>& errors)
{
    SweepSpec s;
    Fields f(j, "sweep", errors);
    if (!f.valid())
        return s;
    s.parameter = f.string("parameter", true).value_or("");
    s.start = f.required_number("start");
    s.stop = f.required_number("stop");
    s.steps = static_cast<int>(f.integer("steps", true).value_or(2));
    f.check(s.steps >= 2, "steps", "must be >= 2");
    f.check(std::isfinite(s.start), "start", "must be finite");
    f.check(std::isfinite(s.stop), "stop", "must be finite");
    f.check(s.start != s.stop, "stop", "must differ from start");
    s.scale = f.choice("scale", SweepScale::Linear, [](const std::string& v) {
        if (v == "linear")
            return SweepScale::Linear;
        if (v == "log")
            return SweepScale::Log;
        throw DomainError("unknown scale '" + v + "' (expected linear|log)");
    });
    if (s.scale == SweepScale::Log)
        f.check(s.start > 0.0 && s.stop > 0.0, "scale", "log scale needs positive start and stop");
    return s;
}

std::vector<std::string> split_path(const std::string& path)
{
    std::vector<std::string> parts;
    std::string cur;
    for (char c : path) {
        if (c == '.') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

bool is_index(const std::string& s)
{
    return !s.empty() && s.find_first_not_of("0123456789") == std::string::npos;
}

// Resolves a dotted path. Array elements are addressed by index or, for
// arrays of named objects, by their "name".
template <class Json>
Json* resolve(Json& root, const std::string& path)
{
    Json* node = &root;
    for (const std::string& part : split_path(path)) {
        if (part.empty())
            return nullptr;
        if (node->is_object()) {
            if (!node->contains(part))
                return nullptr;
            node = &(*node)[part];
        } else if (node->is_array()) {
            Json* next = nullptr;
            if (is_index(part)) {
                const std::size_t i = std::stoul(part);
                if (i < node->size())
                    next = &(*node)[i];
            } else {
                for (auto& el : *node)
                    if (el.is_object() && el.contains("name") && el["name"] == part)
                        next = &el;
            }
            if (!next)
                return nullptr;
            node = next;
        } else {
            return nullptr;
        }
    }
    return node;
}

template <class Json = ordered_json>
Json number_json(double v)
{
    if (std::isinf(v))
        return "inf";
    if (v == std::floor(v) && std::abs(v) < 9.0e15)
        return static_cast<long long>(v);
    return v;
}

ordered_json probs_json(const std::vector<Probability>& ps)
{
    ordered_json a = ordered_json::array();
    for (const Probability& p : ps)
        a.push_back(p.value);
    return a;
}

ordered_json checkpoint_json(const char* type, const CheckpointParams& p, bool with_mode)
{
    ordered_json j;
    j["type"] = type;
    if (with_mode)
        j["mode"] = to_string(p.mode);
    j["regular_time"] = p.regular_time;
    j["checkpoint_cost"] = p.checkpoint_cost;
    j["checkpoint_rate"] = p.checkpoint_rate;
    j["recovery_cost"] = p.recovery_cost;
    j["mtti"] = p.event_model.mtti();
    if (p.message_count)
        j["message_count"] = *p.message_count;
    if (p.log_time_per_message)
        j["log_time_per_message"] = *p.log_time_per_message;
    return j;
}

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

ordered_json pattern_json(const PatternInstance& pattern)
{
    return std::visit(
        Overloaded{
            [](const Unprotected&) { return ordered_json{{"type", "unprotected"}}; },
            [](const DiagnosisParams& p) {
                ordered_json j;
                j["type"] = "diagnosis";
                j["base_time"] = p.base_time;
                j["observed_params"] = p.observed_params;
                j["inference_time"] = p.inference_time;
                j["polling_frequency"] = p.polling_frequency;
                return j;
            },
            [](const ReconfigurationParams& p) {
                ordered_json j;
                j["type"] = "reconfiguration";
                j["progress_fraction"] = p.progress_fraction;
                j["component_count"] = p.component_count;
                j["downtime"] = p.reconfig_downtime;
                j["component_reliabilities"] = probs_json(p.component_reliabilities);
                return j;
            },
            [](const RollbackPattern& p) { return checkpoint_json("rollback", p.params, false); },
            [](const RollForwardPattern& p) { return checkpoint_json("rollforward", p.params, true); },
            [](const RedundancyParams& p) {
                ordered_json j;
                j["type"] = "redundancy";
                j["serial_time"] = p.serial_time;
                j["replicated_fraction"] = p.replicated_fraction;
                j["degree"] = p.degree;
                j["mode"] = to_string(p.mode);
                j["voting_time"] = p.voting_time;
                j["replica_mtti"] = p.replica_mtti;
                return j;
            },
            [](const NVersionParams& p) {
                ordered_json j;
                j["type"] = "nversion";
                j[p.input == NVersionInput::VersionSuccess ? "version_success_probs"
                                                           : "exclusive_success_probs"] =
                    probs_json(p.probabilities);
                j["voter_failure_prob"] = p.voter_failure_prob.value;
                j["mtti"] = p.event_model.mtti();
                return j;
            },
        },
        pattern);
}

ordered_json policy_json(const SimPolicy& policy)
{
    return std::visit(Overloaded{
                          [](const NoPolicy&) { return ordered_json{{"type", "none"}}; },
                          [](const CheckpointPolicy& p) {
                              ordered_json j;
                              j["type"] = "checkpoint";
                              j["interval"] = p.interval;
                              j["cost"] = p.cost;
                              j["recovery"] = p.recovery;
                              return j;
                          },
                          [](const ReplicationPolicy& p) {
                              ordered_json j;
                              j["type"] = "replication";
                              j["degree"] = p.degree;
                              j["mode"] = to_string(p.mode);
                              j["survival_threshold"] = p.survival_threshold;
                              j["voting_cost"] = p.voting_cost;
                              return j;
                          },
                          [](const ReconfigurationPolicy& p) {
                              ordered_json j;
                              j["type"] = "reconfiguration";
                              j["components"] = p.components;
                              j["downtime"] = p.downtime;
                              j["min_components"] = p.min_components;
                              return j;
                          },
                      },
                      policy);
}

ConfigDocument parse_unchecked_sweep(const json& j, std::vector<std::string>& errors)
{
    ConfigDocument doc;
    Fields root(j, "", errors);
    if (!root.valid())
        return doc;

    const auto version = root.string("version", true);
    if (version && *version != kConfigSchemaVersion)
        root.error("version", "unsupported schema version '" + *version + "' (this build reads '" +
                                  kConfigSchemaVersion + "')");
    doc.convention = root.choice("convention", Convention::Literal, convention_from_string);
    doc.reconfiguration_mode =
        root.choice("reconfiguration_mode", ReconfigurationMode::Literal, reconfiguration_mode_from_string);

    if (const json* sys = root.get("system", true)) {
        Fields f(*sys, "system", errors);
        if (f.valid()) {
            doc.system.base_time = f.number_or("base_time", 1.0);
            check_pos(f, "base_time", doc.system.base_time);
            const double mtti = f.required_number("mtti");
            check_pos(f, "mtti", mtti);
            doc.system.event_model = event_model_or(mtti, EventModel(1.0));
            doc.eval_time = f.number_or("eval_time", doc.system.base_time);
            check_nonneg(f, "eval_time", doc.eval_time);

            const json* comps = f.get("components", true);
            if (comps && (!comps->is_array() || comps->empty())) {
                f.error("components", "expected a nonempty array");
            } else if (comps) {
                std::set<std::string> names;
                for (std::size_t i = 0; i < comps->size(); ++i) {
                    const std::string path = "system.components[" + std::to_string(i) + "]";
                    Fields c((*comps)[i], path, errors);
                    if (!c.valid())
                        continue;
                    Component comp;
                    comp.name = c.string("name", true).value_or("");
                    if (!comp.name.empty() && !names.insert(comp.name).second)
                        c.error("name", "duplicate component name '" + comp.name + "'");
                    c.check(comp.name.empty() || comp.name.find_first_of(".,\"\n") == std::string::npos,
                            "name", "must not contain '.', ',', '\"' or newlines");
                    comp.scope_fraction = c.number_or("scope_fraction", 1.0);
                    check_unit(c, "scope_fraction", comp.scope_fraction);
                    if (const json* p = c.get("pattern", false))
                        comp.pattern = parse_pattern(*p, c.at("pattern"), comp.scope_fraction,
                                                     doc.system.event_model, errors);
                    doc.system.components.push_back(std::move(comp));
                }
            }
        }
    }

    if (const json* sc = root.get("scenario", false))
        doc.scenario = parse_scenario(*sc, doc.report_times, errors);

    if (const json* sw = root.get("sweep", false))
        doc.sweep = parse_sweep(*sw, errors);
    return doc;
}

} // namespace

ConfigError::ConfigError(std::vector<std::string> errors)
    : std::runtime_error(join_errors(errors)), errors_(std::move(errors))
{
}

std::vector<double> SweepSpec::grid() const
{
    std::vector<double> g(static_cast<std::size_t>(steps));
    const double last = steps - 1;
    for (int i = 0; i < steps; ++i) {
        const double f = i / last;
        g[static_cast<std::size_t>(i)] =
            scale == SweepScale::Linear ? start + (stop - start) * f : start * std::pow(stop / start, f);
    }
    g.front() = start;
    g.back() = stop;
    return g;
}

ConfigDocument parse_config_json(const json& j)
{
    std::vector<std::string> errors;
    ConfigDocument doc = parse_unchecked_sweep(j, errors);
    if (!errors.empty())
        throw ConfigError(std::move(errors));
    doc.source = j;

    if (doc.sweep) {
        // every grid point must produce a valid document
        ordered_json canonical = to_json(doc);
        ordered_json* target = resolve(canonical, doc.sweep->parameter);
        if (!target || !target->is_number()) {
            throw ConfigError({"sweep.parameter: '" + doc.sweep->parameter +
                               "' does not resolve to a numeric field"});
        }
        if (doc.sweep->parameter.rfind("sweep", 0) == 0 || doc.sweep->parameter.rfind("version", 0) == 0)
            throw ConfigError({"sweep.parameter: cannot sweep '" + doc.sweep->parameter + "'"});
        for (double v : doc.sweep->grid()) {
            try {
                (void)with_parameter(doc, doc.sweep->parameter, v);
            } catch (const ConfigError& e) {
                for (const std::string& msg : e.errors())
                    errors.push_back("sweep value " + format_number(v) + ": " + msg);
            }
        }
        if (!errors.empty())
            throw ConfigError(std::move(errors));
    }
    return doc;
}

ConfigDocument parse_config_text(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError({std::string("<document>: ") + e.what()});
    }
    return parse_config_json(j);
}

ConfigDocument parse_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError({path.string() + ": cannot open file"});
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

ordered_json to_json(const ConfigDocument& doc)
{
    ordered_json j;
    j["version"] = doc.version;
    j["convention"] = to_string(doc.convention);
    j["reconfiguration_mode"] = to_string(doc.reconfiguration_mode);

    ordered_json sys;
    sys["base_time"] = doc.system.base_time;
    sys["mtti"] = doc.system.event_model.mtti();
    sys["eval_time"] = doc.eval_time;
    sys["components"] = ordered_json::array();
    for (const Component& c : doc.system.components) {
        ordered_json cj;
        cj["name"] = c.name;
        cj["scope_fraction"] = c.scope_fraction;
        cj["pattern"] = pattern_json(c.pattern);
        sys["components"].push_back(std::move(cj));
    }
    j["system"] = std::move(sys);

    if (doc.scenario) {
        const SimScenario& s = *doc.scenario;
        ordered_json sc;
        sc["work"] = s.work;
        sc["node_count"] = s.node_count;
        sc["fault_mtti"] = number_json(s.fault_mtti);
        sc["mtti_scope"] = to_string(s.mtti_scope);
        sc["policy"] = policy_json(s.policy);
        if (s.deadline)
            sc["deadline"] = number_json(*s.deadline);
        sc["max_sim_time"] = number_json(s.max_sim_time);
        sc["report_times"] = doc.report_times;
        j["scenario"] = std::move(sc);
    }

    if (doc.sweep) {
        ordered_json sw;
        sw["parameter"] = doc.sweep->parameter;
        sw["start"] = doc.sweep->start;
        sw["stop"] = doc.sweep->stop;
        sw["steps"] = doc.sweep->steps;
        sw["scale"] = doc.sweep->scale == SweepScale::Linear ? "linear" : "log";
        j["sweep"] = std::move(sw);
    }
    return j;
}

bool ConfigDocument::operator==(const ConfigDocument& o) const
{
    return version == o.version && convention == o.convention &&
        reconfiguration_mode == o.reconfiguration_mode && system == o.system && eval_time == o.eval_time &&
        scenario == o.scenario && report_times == o.report_times && sweep == o.sweep;
}

ConfigDocument with_parameter(const ConfigDocument& doc, const std::string& path, double value)
{
    // Prefer the document as written so inherited defaults follow the value;
    // fall back to the canonical form for fields that were left implicit.
    json edited = doc.source.is_object() ? doc.source : json(to_json(doc));
    json* target = resolve(edited, path);
    if (!target) {
        edited = json(to_json(doc));
        target = resolve(edited, path);
    }
    if (!target || !target->is_number())
        throw ConfigError({"sweep.parameter: '" + path + "' does not resolve to a numeric field"});
    *target = number_json<json>(value);
    edited.erase("sweep");

    std::vector<std::string> errors;
    ConfigDocument out = parse_unchecked_sweep(edited, errors);
    if (!errors.empty())
        throw ConfigError(std::move(errors));
    out.sweep = doc.sweep;
    out.source = std::move(edited);
    return out;
}

std::vector<ConfigDocument> expand_sweep(const ConfigDocument& doc)
{
    if (!doc.sweep)
        return {doc};
    std::vector<ConfigDocument> out;
    for (double v : doc.sweep->grid())
        out.push_back(with_parameter(doc, doc.sweep->parameter, v));
    return out;
}

} // namespace resil
