/*
   Copyright 2026 The vortexmf Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/


#include "vortexmf/config.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <numbers>
#include <sstream>

namespace vortexmf {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

struct KindName {
    ExperimentKind kind;
    const char *name;
};

constexpr KindName kind_names[] = {
    {ExperimentKind::simulate, "simulate"},
    {ExperimentKind::solve, "solve"},
    {ExperimentKind::converge, "converge"},
    {ExperimentKind::martingale, "martingale"},
    {ExperimentKind::hamiltonian, "hamiltonian"},
    {ExperimentKind::entropy, "entropy"},
    {ExperimentKind::moments, "moments"},
    {ExperimentKind::validate_kernel, "validate-kernel"},
    {ExperimentKind::validate_noise, "validate-noise"},
    {ExperimentKind::validate_ns, "validate-ns"},
};

void check_keys(const json &j, const std::string &where, std::initializer_list<const char *> allowed)
{
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char *a : allowed) ok = ok || it.key() == a;
        if (!ok) throw ConfigError(where + "." + it.key() + ": unknown field");
    }
}

template <class T> T get(const json &j, const std::string &field)
{
    try {
        return j.get<T>();
    } catch (const json::exception &) {
        throw ConfigError(field + ": wrong type");
    }
}

template <class T> void read(const json &section, const char *key, const std::string &where, T &out)
{
    if (section.contains(key)) out = get<T>(section.at(key), where + "." + key);
}

Mode read_mode(const json &j, const std::string &field)
{
    auto v = get<std::vector<int>>(j, field);
    if (v.size() != 2) throw ConfigError(field + ": a mode is a pair [k1, k2]");
    return {v[0], v[1]};
}

std::vector<Mode> read_modes(const json &j, const std::string &field)
{
    if (!j.is_array()) throw ConfigError(field + ": expected an array of modes");
    std::vector<Mode> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read_mode(j[i], field + "[" + std::to_string(i) + "]"));
    return out;
}

ordered_json mode_json(Mode k) { return ordered_json::array({k.k1, k.k2}); }

ordered_json modes_json(const std::vector<Mode> &m)
{
    ordered_json a = ordered_json::array();
    for (Mode k : m) a.push_back(mode_json(k));
    return a;
}

DensitySpec read_density(const json &d)
{
    check_keys(d, "density", {"preset", "terms", "min"});
    if (d.contains("preset")) {
        if (d.contains("terms")) throw ConfigError("density.preset: give either a preset or terms");
        auto p = get<std::string>(d.at("preset"), "density.preset");
        if (p == "default") return DensitySpec::default_experiment();
        if (p == "uniform") return DensitySpec::uniform();
        throw ConfigError("density.preset: expected default or uniform, got '" + p + "'");
    }
    std::vector<DensityTerm> terms;
    if (d.contains("terms")) {
        const json &t = d.at("terms");
        if (!t.is_array()) throw ConfigError("density.terms: expected an array");
        for (std::size_t i = 0; i < t.size(); ++i) {
            std::string where = "density.terms[" + std::to_string(i) + "]";
            check_keys(t[i], where, {"k", "amplitude"});
            if (!t[i].contains("k") || !t[i].contains("amplitude"))
                throw ConfigError(where + ": needs k and amplitude");
            terms.push_back({read_mode(t[i].at("k"), where + ".k"),
                             get<double>(t[i].at("amplitude"), where + ".amplitude")});
        }
    }
    // Guaranteed lower bound 1 - sqrt2 sum |a| unless a minimum is declared.
    double lower = 1.0;
    for (const DensityTerm &t : terms) lower -= std::numbers::sqrt2 * std::abs(t.amplitude);
    read(d, "min", "density", lower);
    if (!(lower > 0.0)) throw ConfigError("density.min: the density must stay strictly positive");
    try {
        return DensitySpec(std::move(terms), lower);
    } catch (const DomainError &e) {
        throw ConfigError(std::string("density.terms: ") + e.what());
    }
}

} // namespace

std::string to_string(ExperimentKind kind)
{
    for (const KindName &k : kind_names)
        if (k.kind == kind) return k.name;
    return "unknown";
}

ExperimentKind experiment_kind_from_string(const std::string &name)
{
    for (const KindName &k : kind_names)
        if (name == k.name) return k.kind;
    throw ConfigError("experiment.kind: unknown experiment '" + name + "'");
}

int ThetaConfig::cutoff_for(std::size_t n) const
{
    return cutoff_follows_n ? static_cast<int>(n) : cutoff;
}

std::shared_ptr<const ThetaSpec> ThetaConfig::build(std::size_t n) const
{
    ThetaProfile p;
    switch (profile) {
    case ThetaProfile::Kind::inverse: p = ThetaProfile::inverse(); break;
    case ThetaProfile::Kind::constant: p = ThetaProfile::constant(value); break;
    case ThetaProfile::Kind::shell: p = ThetaProfile::shell(value); break;
    case ThetaProfile::Kind::custom: throw ConfigError("noise.profile: custom profiles are code-only");
    }
    return std::make_shared<const ThetaSpec>(make_theta(cutoff_for(n), p));
}

std::size_t ExperimentConfig::n_steps() const
{
    return static_cast<std::size_t>(std::llround(t_final / dt));
}

std::vector<std::size_t> ExperimentConfig::schedule() const
{
    const std::size_t steps = n_steps();
    std::vector<std::size_t> s{0};
    for (std::size_t r = 1; r <= records; ++r) {
        std::size_t v = (r * steps + records / 2) / records;
        if (v > s.back()) s.push_back(v);
    }
    return s;
}

NoiseSpec ExperimentConfig::noise_for(std::size_t n) const
{
    return make_noise_spec(theta.build(n), nu);
}

void ExperimentConfig::validate() const
{
    if (!(nu >= 0.0) || !std::isfinite(nu)) throw ConfigError("noise.nu: must be finite and >= 0");
    if (!theta.cutoff_follows_n && theta.cutoff < 1) throw ConfigError("noise.cutoff: must be >= 1 or \"N\"");
    if (!(theta.value > 0.0)) throw ConfigError("noise.value: must be positive");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("integrator.dt: must be positive");
    if (!(t_final > 0.0) || !std::isfinite(t_final)) throw ConfigError("integrator.T: must be positive");
    if (std::abs(double(n_steps()) * dt - t_final) > 1e-9 * t_final)
        throw ConfigError("integrator.T: must be a whole number of steps dt");
    if (!(delta_min > 0.0)) throw ConfigError("integrator.delta_min: must be positive");
    if (n_values.empty()) throw ConfigError("experiment.N: at least one value is required");
    for (std::size_t i = 0; i < n_values.size(); ++i) {
        if (n_values[i] < 2) throw ConfigError("experiment.N: every N must be >= 2");
        if (i > 0 && n_values[i] <= n_values[i - 1])
            throw ConfigError("experiment.N: values must be strictly increasing");
    }
    if (realizations < 1) throw ConfigError("experiment.realizations: must be >= 1");
    if (records < 1 || records > n_steps()) throw ConfigError("experiment.records: must lie in [1, steps]");
    if (diagnostics.mode_radius < 1) throw ConfigError("experiment.diagnostics.mode_radius: must be >= 1");
    if (!(diagnostics.sobolev_s > 1.0)) throw ConfigError("experiment.diagnostics.sobolev_s: must exceed 1");
    if (diagnostics.sobolev_window < 1) throw ConfigError("experiment.diagnostics.sobolev_window: must be >= 1");
    if (!(diagnostics.concentration_r > 0.0 && diagnostics.concentration_r < 0.25))
        throw ConfigError("experiment.diagnostics.concentration_r: must lie in (0, 1/4)");
    for (Mode k : diagnostics.martingale_modes)
        if (k.k1 == 0 && k.k2 == 0) throw ConfigError("experiment.diagnostics.martingale_modes: (0,0) is not a test mode");
    if (kernel_cutoff < 64) throw ConfigError("experiment.kernel.cutoff: must be >= 64");
    if (kernel_table < 256) throw ConfigError("experiment.kernel.table: must be >= 256");
    pde.validate();
    if (pde.nu != nu) throw ConfigError("experiment.pde: viscosity must equal noise.nu");
    if (f0.max_mode() > pde.dealias_limit()) throw ConfigError("experiment.pde.n: too small for the density modes");
    if (entropy_bins < 2) throw ConfigError("experiment.entropy_bins: must be >= 2");
    if (moment_lags.size() < 2) throw ConfigError("experiment.moment_lags: need at least two lags");
    for (std::size_t i = 0; i < moment_lags.size(); ++i)
        if (moment_lags[i] < 1 || (i > 0 && moment_lags[i] <= moment_lags[i - 1]))
            throw ConfigError("experiment.moment_lags: positive and strictly increasing");
    if (moment_modes.empty()) throw ConfigError("experiment.moment_modes: at least one mode");
    if (threads < 0) throw ConfigError("experiment.threads: must be >= 0");
}

ExperimentConfig parse_config(const std::string &json_text)
{
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error &e) {
        throw ConfigError(std::string("config: not valid JSON: ") + e.what());
    }
    check_keys(root, "config", {"density", "noise", "integrator", "experiment"});
    ExperimentConfig c;

    if (root.contains("density")) c.f0 = read_density(root.at("density"));

    if (root.contains("noise")) {
        const json &n = root.at("noise");
        check_keys(n, "noise", {"nu", "profile", "value", "cutoff", "backend"});
        read(n, "nu", "noise", c.nu);
        if (n.contains("profile"))
            c.theta.profile = profile_kind_from_string(get<std::string>(n.at("profile"), "noise.profile"));
        read(n, "value", "noise", c.theta.value);
        if (n.contains("cutoff")) {
            const json &cut = n.at("cutoff");
            if (cut.is_string()) {
                if (cut.get<std::string>() != "N") throw ConfigError("noise.cutoff: expected \"N\" or an integer");
                c.theta.cutoff_follows_n = true;
            } else {
                c.theta.cutoff_follows_n = false;
                c.theta.cutoff = get<int>(cut, "noise.cutoff");
            }
        }
        if (n.contains("backend"))
            c.backend = noise_backend_from_string(get<std::string>(n.at("backend"), "noise.backend"));
    }

    if (root.contains("integrator")) {
        const json &i = root.at("integrator");
        check_keys(i, "integrator", {"scheme", "dt", "T", "delta_min"});
        if (i.contains("scheme") && get<std::string>(i.at("scheme"), "integrator.scheme") != "euler-maruyama")
            throw ConfigError("integrator.scheme: only euler-maruyama is available");
        read(i, "dt", "integrator", c.dt);
        read(i, "T", "integrator", c.t_final);
        read(i, "delta_min", "integrator", c.delta_min);
    }

    if (!root.contains("experiment")) throw ConfigError("experiment: section is required");
    const json &e = root.at("experiment");
    check_keys(e, "experiment",
               {"kind", "seed", "N", "realizations", "records", "out", "threads", "diagnostics", "kernel", "pde",
                "entropy_bins", "moment_lags", "moment_modes"});
    if (!e.contains("kind")) throw ConfigError("experiment.kind: required");
    if (!e.contains("seed")) throw ConfigError("experiment.seed: required");
    c.kind = experiment_kind_from_string(get<std::string>(e.at("kind"), "experiment.kind"));
    c.seed = get<std::uint64_t>(e.at("seed"), "experiment.seed");
    read(e, "N", "experiment", c.n_values);
    read(e, "realizations", "experiment", c.realizations);
    read(e, "records", "experiment", c.records);
    if (e.contains("out")) c.out_dir = get<std::string>(e.at("out"), "experiment.out");
    read(e, "threads", "experiment", c.threads);
    if (e.contains("diagnostics")) {
        const json &d = e.at("diagnostics");
        const std::string w = "experiment.diagnostics";
        check_keys(d, w,
                   {"mode_radius", "sobolev_s", "sobolev_window", "concentration_r", "martingale_modes", "track_qv",
                    "hamiltonian", "concentration"});
        read(d, "mode_radius", w, c.diagnostics.mode_radius);
        read(d, "sobolev_s", w, c.diagnostics.sobolev_s);
        read(d, "sobolev_window", w, c.diagnostics.sobolev_window);
        read(d, "concentration_r", w, c.diagnostics.concentration_r);
        if (d.contains("martingale_modes"))
            c.diagnostics.martingale_modes = read_modes(d.at("martingale_modes"), w + ".martingale_modes");
        read(d, "track_qv", w, c.diagnostics.track_qv);
        read(d, "hamiltonian", w, c.diagnostics.hamiltonian);
        read(d, "concentration", w, c.diagnostics.concentration);
    }
    if (e.contains("kernel")) {
        const json &k = e.at("kernel");
        check_keys(k, "experiment.kernel", {"cutoff", "table"});
        read(k, "cutoff", "experiment.kernel", c.kernel_cutoff);
        read(k, "table", "experiment.kernel", c.kernel_table);
    }
    if (e.contains("pde")) {
        const json &p = e.at("pde");
        check_keys(p, "experiment.pde", {"n", "dt"});
        read(p, "n", "experiment.pde", c.pde.n);
        read(p, "dt", "experiment.pde", c.pde.dt);
    }
    c.pde.nu = c.nu;
    read(e, "entropy_bins", "experiment", c.entropy_bins);
    read(e, "moment_lags", "experiment", c.moment_lags);
    if (e.contains("moment_modes")) c.moment_modes = read_modes(e.at("moment_modes"), "experiment.moment_modes");

    c.validate();
    return c;
}

ExperimentConfig load_config(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string dump_config(const ExperimentConfig &c)
{
    ordered_json root;
    ordered_json terms = ordered_json::array();
    for (const DensityTerm &t : c.f0.terms()) {
        ordered_json term;
        term["k"] = mode_json(t.k);
        term["amplitude"] = t.amplitude;
        terms.push_back(term);
    }
    root["density"]["terms"] = terms;
    root["density"]["min"] = c.f0.declared_min();

    root["noise"]["nu"] = c.nu;
    root["noise"]["profile"] = to_string(c.theta.profile);
    root["noise"]["value"] = c.theta.value;
    if (c.theta.cutoff_follows_n) root["noise"]["cutoff"] = "N";
    else root["noise"]["cutoff"] = c.theta.cutoff;
    root["noise"]["backend"] = to_string(c.backend);

    root["integrator"]["scheme"] = "euler-maruyama";
    root["integrator"]["dt"] = c.dt;
    root["integrator"]["T"] = c.t_final;
    root["integrator"]["delta_min"] = c.delta_min;

    ordered_json &e = root["experiment"];
    e["kind"] = to_string(c.kind);
    e["seed"] = c.seed;
    e["N"] = c.n_values;
    e["realizations"] = c.realizations;
    e["records"] = c.records;
    e["out"] = c.out_dir.string();
    e["threads"] = c.threads;
    ordered_json &d = e["diagnostics"];
    d["mode_radius"] = c.diagnostics.mode_radius;
    d["sobolev_s"] = c.diagnostics.sobolev_s;
    d["sobolev_window"] = c.diagnostics.sobolev_window;
    d["concentration_r"] = c.diagnostics.concentration_r;
    d["martingale_modes"] = modes_json(c.diagnostics.martingale_modes);
    d["track_qv"] = c.diagnostics.track_qv;
    d["hamiltonian"] = c.diagnostics.hamiltonian;
    d["concentration"] = c.diagnostics.concentration;
    e["kernel"]["cutoff"] = c.kernel_cutoff;
    e["kernel"]["table"] = c.kernel_table;
    e["pde"]["n"] = c.pde.n;
    e["pde"]["dt"] = c.pde.dt;
    e["entropy_bins"] = c.entropy_bins;
    e["moment_lags"] = c.moment_lags;
    e["moment_modes"] = modes_json(c.moment_modes);
    return root.dump(2) + "\n";
}

void write_config_echo(const ExperimentConfig &config)
{
    std::filesystem::create_directories(config.out_dir);
    std::ofstream out(config.out_dir / "config_echo.json");
    if (!out) throw Error("cannot write config_echo.json in " + config.out_dir.string());
    out << dump_config(config);
}

} // namespace vortexmf
