// Command-line front end: resolve a run configuration from a JSON file
// and/or flags, execute scenarios or parameter sweeps, and emit CSV/JSON
// tables plus a reproducible run manifest.

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qduet/scenarios.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qduet;

namespace {

constexpr const char* kToolVersion = "qduet 0.2.0";

struct RunConfig {
    std::string scenario;  // figure id or "custom"
    std::string config = "A";
    std::string initial = "w1";
    double g_a = 1.0, g_b = 1.0;
    double delta = 0.0, kappa = 0.0;
    double epsilon_phase = 0.0;  // radians; epsilon = exp(i phase)
    double Gamma = 0.0, gamma = 0.0;
    double t_max = 20.0;
    int t_points = 2001;
    std::string out = ".";
    std::string format = "csv";
    std::string sweep;
    double g_scale = 1.0;
    int jobs = 1;
    std::set<std::string> provided;

    bool has(const std::string& key) const { return provided.count(key) > 0; }
};

const std::vector<std::string> kParamKeys = {
    "g_a", "g_b", "delta", "kappa", "epsilon_phase", "Gamma", "gamma"};

void load_config_file(RunConfig& rc, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::invalid_argument("config file parse failure: " +
                                    std::string(e.what()));
    }
    auto grab = [&](const char* key, auto& slot) {
        if (j.contains(key)) {
            j.at(key).get_to(slot);
            rc.provided.insert(key);
        }
    };
    grab("scenario", rc.scenario);
    grab("config", rc.config);
    grab("initial", rc.initial);
    grab("g_a", rc.g_a);
    grab("g_b", rc.g_b);
    grab("delta", rc.delta);
    grab("kappa", rc.kappa);
    grab("epsilon_phase", rc.epsilon_phase);
    grab("Gamma", rc.Gamma);
    grab("gamma", rc.gamma);
    grab("t_max", rc.t_max);
    grab("t_points", rc.t_points);
    grab("out", rc.out);
    grab("format", rc.format);
    grab("sweep", rc.sweep);
    grab("g_scale", rc.g_scale);
    grab("jobs", rc.jobs);
    // "resolved", "tool_version", "outputs" are informational and ignored
}

CouplingConfig parse_coupling(const std::string& s) {
    if (s == "A" || s == "a") return CouplingConfig::AtomMediated;
    if (s == "B" || s == "b") return CouplingConfig::PhotonMediated;
    throw std::invalid_argument("config must be A or B, got: " + s);
}

void apply_param_overrides(const RunConfig& rc, SystemParams& p) {
    if (rc.has("g_a")) p.g_a = rc.g_a;
    if (rc.has("g_b")) p.g_b = rc.g_b;
    if (rc.has("delta")) p.delta = rc.delta;
    if (rc.has("kappa")) p.kappa = rc.kappa;
    if (rc.has("epsilon_phase"))
        p.epsilon = std::exp(Complex(0.0, rc.epsilon_phase));
    if (rc.has("Gamma")) p.Gamma = rc.Gamma;
    if (rc.has("gamma")) p.gamma = rc.gamma;
}

ScenarioSpec build_spec(const RunConfig& rc) {
    if (rc.scenario.empty())
        throw std::invalid_argument(
            "no scenario: give --figure or --scenario custom");
    ScenarioSpec spec;
    if (rc.scenario == "custom") {
        spec.config = parse_coupling(rc.config);
        spec.initial = rc.initial;
        SystemParams p;
        p.g_a = rc.g_a;
        p.g_b = rc.g_b;
        p.delta = rc.delta;
        p.kappa = rc.kappa;
        p.epsilon = std::exp(Complex(0.0, rc.epsilon_phase));
        p.Gamma = rc.Gamma;
        p.gamma = rc.gamma;
        spec.params = p;
    } else {
        spec = figure_preset(rc.scenario);
        apply_param_overrides(rc, spec.params);
        for (auto& set : spec.sets) apply_param_overrides(rc, set.params);
    }
    if (rc.has("t_max")) spec.t_max = rc.t_max;
    if (rc.has("t_points")) spec.t_points = rc.t_points;
    if (spec.t_points < 2)
        throw std::invalid_argument("t_points must be at least 2");
    if (!(spec.t_max > 0.0)) throw std::invalid_argument("t_max must be positive");
    spec.params.validate();
    return spec;
}

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_csv(const fs::path& path, const ObservableTable& table,
               double g_scale) {
    std::ofstream out(path, std::ios::binary);  // LF endings everywhere
    if (!out) throw std::runtime_error("cannot write " + path.string());
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        out << (c ? "," : "") << table.columns[c];
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            out << (c ? "," : "") << fmt17(c == 0 ? row[c] / g_scale : row[c]);
        out << "\n";
    }
    if (!out.flush()) throw std::runtime_error("write failed: " + path.string());
}

void write_json(const fs::path& path, const ObservableTable& table,
                double g_scale) {
    json rows = json::array();
    for (const auto& row : table.rows) {
        json rec = json::object();
        for (std::size_t c = 0; c < row.size(); ++c) {
            const double v = c == 0 ? row[c] / g_scale : row[c];
            if (std::isnan(v))
                rec[table.columns[c]] = nullptr;
            else
                rec[table.columns[c]] = v;
        }
        rows.push_back(std::move(rec));
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << rows.dump(2) << "\n";
    if (!out.flush()) throw std::runtime_error("write failed: " + path.string());
}

json resolved_block(const ScenarioSpec& spec) {
    auto param_obj = [](const SystemParams& p) {
        return json{{"g_a", p.g_a},
                    {"g_b", p.g_b},
                    {"delta", p.delta},
                    {"kappa", p.kappa},
                    {"epsilon_phase", std::arg(p.epsilon)},
                    {"Gamma", p.Gamma},
                    {"gamma", p.gamma}};
    };
    json r = {{"config", to_string(spec.config)},
              {"initial", spec.initial},
              {"t_max", spec.t_max},
              {"t_points", spec.t_points}};
    if (spec.sets.empty()) {
        r["params"] = param_obj(spec.params);
    } else {
        json sets = json::array();
        for (const auto& s : spec.sets)
            sets.push_back({{"label", s.label}, {"params", param_obj(s.params)}});
        r["sets"] = sets;
    }
    return r;
}

json manifest_json(const RunConfig& rc, const ScenarioSpec& spec,
                   const std::vector<std::string>& outputs) {
    json m = {{"scenario", rc.scenario},   {"out", rc.out},
              {"format", rc.format},       {"t_max", spec.t_max},
              {"t_points", spec.t_points}, {"g_scale", rc.g_scale},
              {"jobs", rc.jobs},           {"tool_version", kToolVersion}};
    if (!rc.sweep.empty()) m["sweep"] = rc.sweep;
    if (rc.scenario == "custom") {
        m["config"] = rc.config;
        m["initial"] = rc.initial;
        m["g_a"] = spec.params.g_a;
        m["g_b"] = spec.params.g_b;
        m["delta"] = spec.params.delta;
        m["kappa"] = spec.params.kappa;
        m["epsilon_phase"] = std::arg(spec.params.epsilon);
        m["Gamma"] = spec.params.Gamma;
        m["gamma"] = spec.params.gamma;
    } else {
        for (const auto& key : kParamKeys)
            if (rc.has(key)) {
                if (key == "g_a") m[key] = rc.g_a;
                else if (key == "g_b") m[key] = rc.g_b;
                else if (key == "delta") m[key] = rc.delta;
                else if (key == "kappa") m[key] = rc.kappa;
                else if (key == "epsilon_phase") m[key] = rc.epsilon_phase;
                else if (key == "Gamma") m[key] = rc.Gamma;
                else if (key == "gamma") m[key] = rc.gamma;
            }
    }
    m["resolved"] = resolved_block(spec);
    m["outputs"] = outputs;
    return m;
}

struct SweepPlan {
    std::string key;
    std::vector<double> values;
};

SweepPlan parse_sweep(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos)
        throw std::invalid_argument("sweep must look like key=lo:hi:n");
    SweepPlan plan;
    plan.key = text.substr(0, eq);
    bool known = plan.key == "t_max";
    for (const auto& k : kParamKeys) known = known || plan.key == k;
    if (!known) throw std::invalid_argument("unknown sweep key: " + plan.key);

    const std::string rest = text.substr(eq + 1);
    double lo = 0, hi = 0;
    int n = 0;
    if (std::sscanf(rest.c_str(), "%lf:%lf:%d", &lo, &hi, &n) != 3 || n < 1)
        throw std::invalid_argument("sweep must look like key=lo:hi:n with n >= 1");
    for (int k = 0; k < n; ++k)
        plan.values.push_back(n == 1 ? lo : lo + (hi - lo) * k / double(n - 1));
    return plan;
}

void set_key(RunConfig& rc, const std::string& key, double value) {
    if (key == "g_a") rc.g_a = value;
    else if (key == "g_b") rc.g_b = value;
    else if (key == "delta") rc.delta = value;
    else if (key == "kappa") rc.kappa = value;
    else if (key == "epsilon_phase") rc.epsilon_phase = value;
    else if (key == "Gamma") rc.Gamma = value;
    else if (key == "gamma") rc.gamma = value;
    else if (key == "t_max") rc.t_max = value;
    else throw std::invalid_argument("unknown sweep key: " + key);
    rc.provided.insert(key);
}

class OutputTracker {
  public:
    void record(const fs::path& p) {
        std::lock_guard<std::mutex> lock(mu_);
        paths_.push_back(p);
    }
    void discard_all() {
        std::lock_guard<std::mutex> lock(mu_);
        for (const auto& p : paths_) {
            std::error_code ec;
            fs::remove(p, ec);
        }
        paths_.clear();
    }

  private:
    std::mutex mu_;
    std::vector<fs::path> paths_;
};

int run_command(RunConfig rc) {
    if (rc.format != "csv" && rc.format != "json")
        throw std::invalid_argument("format must be csv or json");
    if (!(rc.g_scale > 0.0)) throw std::invalid_argument("g_scale must be positive");
    const ScenarioSpec base_spec = build_spec(rc);
    const std::string name = rc.scenario;
    const std::string ext = rc.format == "json" ? ".json" : ".csv";

    fs::create_directories(rc.out);
    OutputTracker tracker;
    std::vector<std::string> outputs;

    auto emit = [&](const fs::path& path, const ObservableTable& table) {
        tracker.record(path);
        if (rc.format == "json")
            write_json(path, table, rc.g_scale);
        else
            write_csv(path, table, rc.g_scale);
    };

    try {
        if (rc.sweep.empty()) {
            const fs::path data = fs::path(rc.out) / (name + ext);
            emit(data, run_scenario(base_spec));
            outputs.push_back(data.filename().string());
        } else {
            const SweepPlan plan = parse_sweep(rc.sweep);
            const int n = static_cast<int>(plan.values.size());
            std::vector<fs::path> files(n);
            std::atomic<int> next{0};
            std::vector<std::exception_ptr> errors(n);
            const int workers = std::max(1, std::min<int>(rc.jobs, n));

            auto work = [&] {
                for (int k = next.fetch_add(1); k < n; k = next.fetch_add(1)) {
                    try {
                        RunConfig point = rc;
                        set_key(point, plan.key, plan.values[k]);
                        const ScenarioSpec spec = build_spec(point);
                        char suffix[32];
                        std::snprintf(suffix, sizeof suffix, "_sweep_%03d", k);
                        const fs::path data =
                            fs::path(rc.out) / (name + suffix + ext);
                        emit(data, run_scenario(spec));
                        files[k] = data;
                    } catch (...) {
                        errors[k] = std::current_exception();
                    }
                }
            };
            std::vector<std::thread> pool;
            for (int k = 0; k < workers; ++k) pool.emplace_back(work);
            for (auto& th : pool) th.join();
            for (const auto& err : errors)
                if (err) std::rethrow_exception(err);

            json index = json::array();
            for (int k = 0; k < n; ++k) {
                index.push_back({{"index", k},
                                 {plan.key, plan.values[k]},
                                 {"file", files[k].filename().string()}});
                outputs.push_back(files[k].filename().string());
            }
            const fs::path index_path =
                fs::path(rc.out) / (name + "_sweep_index.json");
            tracker.record(index_path);
            std::ofstream ix(index_path, std::ios::binary);
            if (!ix)
                throw std::runtime_error("cannot write " + index_path.string());
            ix << index.dump(2) << "\n";
            outputs.push_back(index_path.filename().string());
        }

        const fs::path manifest_path =
            fs::path(rc.out) / (name + "_manifest.json");
        tracker.record(manifest_path);
        std::ofstream mf(manifest_path, std::ios::binary);
        if (!mf)
            throw std::runtime_error("cannot write " + manifest_path.string());
        mf << manifest_json(rc, base_spec, outputs).dump(2) << "\n";
        if (!mf.flush())
            throw std::runtime_error("write failed: " + manifest_path.string());
    } catch (...) {
        tracker.discard_all();
        throw;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coupled atom-cavity state and entanglement transfer simulator"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    CLI::App* run = app.add_subcommand("run", "execute a scenario or sweep");
    RunConfig rc;
    std::string figure, scenario_kind, config_file;

    auto* figure_opt = run->add_option("--figure", figure, "figure preset id");
    auto* scenario_opt =
        run->add_option("--scenario", scenario_kind, "'custom' for explicit runs");
    auto* config_file_opt =
        run->add_option("--config-file", config_file, "JSON run configuration");

    std::map<std::string, CLI::Option*> opts;
    opts["config"] = run->add_option("--config", rc.config, "coupling layout A|B");
    opts["initial"] = run->add_option("--initial", rc.initial, "initial state name");
    opts["g_a"] = run->add_option("--g-a", rc.g_a, "coupling g_a");
    opts["g_b"] = run->add_option("--g-b", rc.g_b, "coupling g_b");
    opts["delta"] = run->add_option("--delta", rc.delta, "detuning");
    opts["kappa"] = run->add_option("--kappa", rc.kappa, "inter-cavity coupling");
    opts["epsilon_phase"] = run->add_option("--epsilon-phase", rc.epsilon_phase,
                                            "dipole phase (radians)");
    opts["Gamma"] = run->add_option("--Gamma", rc.Gamma, "atomic decay rate");
    opts["gamma"] = run->add_option("--gamma", rc.gamma, "cavity leak rate");
    opts["t_max"] = run->add_option("--t-max", rc.t_max, "grid end time (1/g units)");
    opts["t_points"] = run->add_option("--t-points", rc.t_points, "grid points");
    opts["out"] = run->add_option("--out", rc.out, "output directory");
    opts["format"] = run->add_option("--format", rc.format, "csv|json");
    opts["sweep"] = run->add_option("--sweep", rc.sweep, "key=lo:hi:n sweep");
    opts["g_scale"] =
        run->add_option("--g-scale", rc.g_scale, "rescale the output time column");
    opts["jobs"] = run->add_option("--jobs", rc.jobs, "parallel sweep workers");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        // config file first, then flags on top
        RunConfig resolved;
        if (config_file_opt->count() > 0) load_config_file(resolved, config_file);
        auto adopt = [&](const std::string& key, auto member) {
            if (opts.at(key)->count() > 0) {
                resolved.*member = rc.*member;
                resolved.provided.insert(key);
            }
        };
        adopt("config", &RunConfig::config);
        adopt("initial", &RunConfig::initial);
        adopt("g_a", &RunConfig::g_a);
        adopt("g_b", &RunConfig::g_b);
        adopt("delta", &RunConfig::delta);
        adopt("kappa", &RunConfig::kappa);
        adopt("epsilon_phase", &RunConfig::epsilon_phase);
        adopt("Gamma", &RunConfig::Gamma);
        adopt("gamma", &RunConfig::gamma);
        adopt("t_max", &RunConfig::t_max);
        adopt("t_points", &RunConfig::t_points);
        adopt("out", &RunConfig::out);
        adopt("format", &RunConfig::format);
        adopt("sweep", &RunConfig::sweep);
        adopt("g_scale", &RunConfig::g_scale);
        adopt("jobs", &RunConfig::jobs);

        if (figure_opt->count() > 0) {
            resolved.scenario = figure;
            resolved.provided.insert("scenario");
        } else if (scenario_opt->count() > 0) {
            if (scenario_kind != "custom")
                throw std::invalid_argument("--scenario accepts only 'custom'");
            resolved.scenario = scenario_kind;
            resolved.provided.insert("scenario");
        }
        return run_command(std::move(resolved));
    } catch (const RegimeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
