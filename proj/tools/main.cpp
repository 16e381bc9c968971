// Command-line front end: trajectory runs, figure-data reproduction,
// asymptotic-state reports, validation suites and parameter sweeps.
//
// Exit codes: 0 ok, 1 validation failure, 2 parse error,
// 3 physics-invariant breach, 4 I/O failure.

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "qutrit/evolution.hpp"
#include "qutrit/specs.hpp"
#include "qutrit/validate.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qutrit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitParse = 2;
constexpr int kExitPhysics = 3;
constexpr int kExitIo = 4;

struct Options {
    std::string command;
    std::string model = "sysII:ge=1,gu=0";
    int atoms = 2;
    std::string state = "psimax";
    IntegratorSettings integrator;
    std::string out;
    std::string out_dir = ".";
    std::string format = "csv";
    std::uint64_t seed = 20240901;
    std::string suite;
    std::string elements;  // "i,j;i,j" element columns for trajectory CSVs
    bool check_numeric = false;
    int figure = 3;
    std::string sweep_param;
    std::string sweep_values;
};

std::vector<std::pair<int, int>> parse_elements(const std::string& text) {
    std::vector<std::pair<int, int>> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        int i = 0, j = 0;
        char comma = 0;
        std::stringstream pair(item);
        if (!(pair >> i >> comma >> j) || comma != ',' || i < 1 || i > 9 || j < 1 || j > 9)
            throw ParseError("bad element spec '" + item + "' (expected i,j with 1<=i,j<=9)");
        out.emplace_back(i, j);
    }
    return out;
}

void write_trajectory_json(const std::string& path, const Trajectory& traj,
                           const std::vector<std::pair<int, int>>& elements) {
    json doc;
    doc["t"] = traj.times;
    doc["negativity"] = traj.negativities;
    json trace_defect = json::array(), min_eig = json::array();
    for (const auto& d : traj.diagnostics) {
        trace_defect.push_back(d.trace_defect);
        min_eig.push_back(d.min_eigenvalue);
    }
    doc["trace_defect"] = std::move(trace_defect);
    doc["min_eig"] = std::move(min_eig);
    for (const auto& [i, j] : elements) {
        json re = json::array(), im = json::array();
        for (const auto& state : traj.states) {
            const Complex z = state(i - 1, j - 1);
            re.push_back(z.real());
            im.push_back(z.imag());
        }
        const std::string key = "elem_" + std::to_string(i) + "_" + std::to_string(j);
        doc[key + "_re"] = std::move(re);
        doc[key + "_im"] = std::move(im);
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << doc.dump(2) << "\n";
}

void write_trajectory(const Options& opts, const std::string& path, const Trajectory& traj) {
    const auto elements = parse_elements(opts.elements);
    if (opts.format == "json")
        write_trajectory_json(path, traj, elements);
    else
        write_trajectory_csv(path, traj, elements);
}

IntegratorSettings default_settings(const ModelSpec& model, double t_end_factor = 10.0) {
    IntegratorSettings s;
    const double rate = std::max(model.max_rate(), 1e-12);
    s.dt = 1e-3 / rate;
    s.t_end = t_end_factor / rate;
    s.sample_every = 10;
    return s;
}

int run_evolve(const Options& opts) {
    const ModelSpec model = parse_model(opts.model, opts.atoms);
    const StateSpec state = parse_state(opts.state, opts.atoms);
    const Trajectory traj = evolve_rk4(model.build(), state.state, opts.integrator);
    if (!opts.out.empty()) write_trajectory(opts, opts.out, traj);

    const double rate = std::max(model.max_rate(), 1e-12);
    const auto steady = detect_steady_state(traj, 5.0 / rate, 1e-6);
    std::cout << "final negativity: " << traj.negativities.back() << "\n";
    if (steady)
        std::cout << "steady state reached at t = " << steady->time << "\n";
    else
        std::cout << "no steady state within the horizon\n";
    return kExitOk;
}

int run_negativity(const Options& opts) {
    const StateSpec state = parse_state(opts.state, opts.atoms);
    std::cout << "negativity: " << negativity(state.state) << "\n";
    if (const auto* pure = std::get_if<PureStateParams>(&state.family))
        std::cout << "closed form: " << negativity_pure_closed_form(*pure) << "\n";
    else if (const auto* iso = std::get_if<IsotropicParams>(&state.family))
        std::cout << "closed form: " << negativity_isotropic_closed_form(*iso) << "\n";
    return kExitOk;
}

int run_asymptote(const Options& opts) {
    const StateSpec state = parse_state(opts.state, opts.atoms);
    const DensityMatrix as = asymptotic_state_max_interference(state.state);
    const double n_as = negativity(as);
    std::cout << "asymptotic negativity: " << n_as << "\n";
    std::cout << (n_as > 0.0 ? "asymptotic state is entangled\n"
                             : "asymptotic state is separable\n");
    if (!opts.out.empty()) write_matrix_csv(opts.out, as.body());
    if (opts.check_numeric) {
        ModelSpec model = parse_model("sysII:ge=1,gu=0", opts.atoms);
        IntegratorSettings settings = default_settings(model, 50.0);
        settings.dt = 0.01;
        const Trajectory traj = evolve_rk4(model.build(), state.state, settings);
        const double deviation = (traj.final_state().body() - as.body()).max_abs();
        std::cout << "numeric plateau deviation: " << deviation << "\n";
    }
    return kExitOk;
}

struct Curve {
    std::string label;
    std::string model;
    std::string state;
    double t_end;
};

std::vector<Curve> figure_curves(int n) {
    const std::vector<double> alphas = {0.0, 0.1, 0.25, 0.5, 1.0};
    const std::vector<double> betas = {0.0, 0.3, 0.6, 0.9, 1.0};
    const std::vector<double> kappas = {0.25, 0.5, 0.75, 1.0};
    const std::string pure_state = "pure:theta=0.39269908169872414,phi=0.5235987755982988";
    const std::string isotropic = "isotropic:p=0.75";

    auto sys_II = [](double alpha) {
        return "sysII:ge=1,gu=" + std::to_string(alpha);
    };
    auto sys_I = [](double g2, double beta) {
        return "sysI:g1=1,g2=" + std::to_string(g2) + ",beta=" + std::to_string(beta);
    };

    std::vector<Curve> curves;
    switch (n) {
        case 3:
        case 4:
        case 5:
            for (double a : alphas)
                curves.push_back({"alpha=" + std::to_string(a), sys_II(a),
                                  n == 3 ? "psimax" : (n == 4 ? pure_state : isotropic),
                                  10.0});
            break;
        case 6:
        case 7:
            for (double b : betas)
                curves.push_back({"beta=" + std::to_string(b), sys_I(0.9, b),
                                  n == 6 ? pure_state : isotropic, 10.0});
            break;
        case 8:
            for (double k : kappas)
                curves.push_back(
                    {"kappa=" + std::to_string(k), sys_I(k, 1.0), "psimax", 50.0});
            break;
        default:
            throw ParseError("figure number must be in 3..8");
    }
    return curves;
}

std::size_t worker_count(std::size_t jobs) {
    std::size_t cap = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("QUTRIT_LINDBLAD_THREADS")) {
        const long parsed = std::strtol(env, nullptr, 10);
        if (parsed >= 1) cap = static_cast<std::size_t>(parsed);
    }
    return std::max<std::size_t>(1, std::min(cap, jobs));
}

// Runs the trajectories concurrently; results land in a pre-sized
// vector so output is identical regardless of execution order.
std::vector<Trajectory> run_parallel(const std::vector<Curve>& curves) {
    std::vector<Trajectory> results(curves.size());
    std::vector<std::string> errors(curves.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next.fetch_add(1); i < curves.size(); i = next.fetch_add(1)) {
            try {
                const ModelSpec model = parse_model(curves[i].model, 2);
                const StateSpec state = parse_state(curves[i].state, 2);
                IntegratorSettings settings = default_settings(model, curves[i].t_end);
                results[i] = evolve_rk4(model.build(), state.state, settings);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < worker_count(curves.size()); ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    for (const auto& err : errors)
        if (!err.empty()) throw std::runtime_error(err);
    return results;
}

int run_figure(const Options& opts) {
    const std::vector<Curve> curves = figure_curves(opts.figure);
    const auto trajectories = run_parallel(curves);
    std::error_code ec;
    fs::create_directories(opts.out_dir, ec);
    json manifest;
    manifest["figure"] = opts.figure;
    manifest["curves"] = json::array();
    for (std::size_t i = 0; i < curves.size(); ++i) {
        const std::string file =
            "fig" + std::to_string(opts.figure) + "_" + curves[i].label + ".csv";
        write_trajectory_csv((fs::path(opts.out_dir) / file).string(), trajectories[i]);
        manifest["curves"].push_back({{"file", file},
                                      {"label", curves[i].label},
                                      {"model", curves[i].model},
                                      {"state", curves[i].state},
                                      {"t_end", curves[i].t_end}});
    }
    const fs::path manifest_path =
        fs::path(opts.out_dir) / ("fig" + std::to_string(opts.figure) + "_manifest.json");
    std::ofstream out(manifest_path);
    if (!out) {
        std::cerr << "cannot write " << manifest_path << "\n";
        return kExitIo;
    }
    out << manifest.dump(2) << "\n";
    std::cout << "wrote " << curves.size() << " curves to " << opts.out_dir << "\n";
    return kExitOk;
}

int run_validate(const Options& opts) {
    const auto results = run_validation_suites(opts.seed, opts.suite);
    int failures = 0;
    for (const auto& r : results) {
        std::cout << r.name << ": " << r.passed << " passed, " << r.failed << " failed\n";
        if (r.failed > 0) {
            std::cout << "  first counterexample: " << r.first_failure << "\n";
            failures += r.failed;
        }
    }
    return failures == 0 ? kExitOk : kExitValidation;
}

int run_sweep(const Options& opts) {
    if (opts.sweep_param.empty() || opts.sweep_values.empty())
        throw ParseError("sweep requires --param and --values");
    std::vector<Curve> curves;
    std::stringstream ss(opts.sweep_values);
    std::string value;
    while (std::getline(ss, value, ';')) {
        // override or append the swept key in the model spec
        std::string model = opts.model;
        const std::string key = opts.sweep_param + "=";
        const auto pos = model.find(key);
        if (pos != std::string::npos) {
            auto end = model.find(',', pos);
            if (end == std::string::npos) end = model.size();
            model = model.substr(0, pos) + key + value + model.substr(end);
        } else {
            model += "," + key + value;
        }
        curves.push_back({opts.sweep_param + "=" + value, model, opts.state,
                          opts.integrator.t_end});
    }
    const auto trajectories = run_parallel(curves);
    std::error_code ec;
    fs::create_directories(opts.out_dir, ec);
    json manifest;
    manifest["sweep"] = opts.sweep_param;
    manifest["curves"] = json::array();
    for (std::size_t i = 0; i < curves.size(); ++i) {
        const std::string file = "sweep_" + curves[i].label + ".csv";
        write_trajectory_csv((fs::path(opts.out_dir) / file).string(), trajectories[i]);
        manifest["curves"].push_back(
            {{"file", file}, {"label", curves[i].label}, {"model", curves[i].model}});
    }
    std::ofstream out(fs::path(opts.out_dir) / "sweep_manifest.json");
    if (!out) return kExitIo;
    out << manifest.dump(2) << "\n";
    return kExitOk;
}

void apply_config_file(const std::string& path, Options& opts) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file '" + path + "'");
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad config JSON: ") + e.what());
    }
    if (doc.contains("command")) opts.command = doc["command"];
    if (doc.contains("model")) opts.model = doc["model"];
    if (doc.contains("atoms")) opts.atoms = doc["atoms"];
    if (doc.contains("state")) opts.state = doc["state"];
    if (doc.contains("out")) opts.out = doc["out"];
    if (doc.contains("out_dir")) opts.out_dir = doc["out_dir"];
    if (doc.contains("format")) opts.format = doc["format"];
    if (doc.contains("seed")) opts.seed = doc["seed"];
    if (doc.contains("suite")) opts.suite = doc["suite"];
    if (doc.contains("elements")) opts.elements = doc["elements"];
    if (doc.contains("figure")) opts.figure = doc["figure"];
    if (doc.contains("integrator")) {
        const auto& integ = doc["integrator"];
        if (integ.contains("dt")) opts.integrator.dt = integ["dt"];
        if (integ.contains("t_end")) opts.integrator.t_end = integ["t_end"];
        if (integ.contains("sample_every")) opts.integrator.sample_every = integ["sample_every"];
        if (integ.contains("adapt")) opts.integrator.adapt = integ["adapt"];
    }
}

int dispatch(const Options& opts) {
    if (opts.command == "evolve") return run_evolve(opts);
    if (opts.command == "negativity") return run_negativity(opts);
    if (opts.command == "asymptote") return run_asymptote(opts);
    if (opts.command == "figure") return run_figure(opts);
    if (opts.command == "validate") return run_validate(opts);
    if (opts.command == "sweep") return run_sweep(opts);
    throw ParseError("unknown command '" + opts.command + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entanglement dynamics of two independent V-type three-level atoms"};
    app.require_subcommand(0, 1);

    Options opts;
    std::string config_path;
    app.add_option("--config", config_path, "JSON run configuration");

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--model", opts.model, "sysI:g1=,g2=,beta= | sysII:ge=,gu=");
        cmd->add_option("--atoms", opts.atoms, "1 or 2")->check(CLI::Range(1, 2));
        cmd->add_option("--state", opts.state,
                        "pure:theta=,phi= | psimax | isotropic:p= | file:<path>");
        cmd->add_option("--dt", opts.integrator.dt, "integrator step");
        cmd->add_option("--t-end", opts.integrator.t_end, "integration horizon");
        cmd->add_option("--sample-every", opts.integrator.sample_every, "output stride");
        cmd->add_flag("--adapt", opts.integrator.adapt, "step-halving error control");
        cmd->add_option("--out", opts.out, "output file");
        cmd->add_option("--out-dir", opts.out_dir, "output directory");
        cmd->add_option("--format", opts.format, "csv|json")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--seed", opts.seed, "RNG seed");
        cmd->add_option("--elements", opts.elements, "matrix elements to export, e.g. 1,5;5,9");
    };

    add_common(app.add_subcommand("evolve", "integrate a trajectory and export it"));
    add_common(app.add_subcommand("negativity", "negativity of a state spec"));
    auto* asym = app.add_subcommand("asymptote", "maximal-interference asymptotic state");
    add_common(asym);
    asym->add_flag("--check-numeric", opts.check_numeric,
                   "compare against the long-time RK4 plateau");
    auto* fig = app.add_subcommand("figure", "reproduce the data behind one figure");
    add_common(fig);
    fig->add_option("n", opts.figure, "figure number (3-8)")->check(CLI::Range(3, 8));
    auto* val = app.add_subcommand("validate", "run the invariant suites");
    add_common(val);
    val->add_option("--suite", opts.suite, "restrict to one suite");
    auto* sweep = app.add_subcommand("sweep", "sweep one model parameter");
    add_common(sweep);
    sweep->add_option("--param", opts.sweep_param, "model key to sweep (e.g. beta)");
    sweep->add_option("--values", opts.sweep_values, "semicolon-separated values");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitParse;
    }

    try {
        if (!config_path.empty()) apply_config_file(config_path, opts);
        if (!app.get_subcommands().empty())
            opts.command = app.get_subcommands().front()->get_name();
        if (opts.command.empty()) {
            std::cerr << app.help();
            return kExitParse;
        }
        return dispatch(opts);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::runtime_error& e) {
        const std::string what = e.what();
        if (what.find("physicality breach") != std::string::npos) {
            std::cerr << "physics error: " << what << "\n";
            return kExitPhysics;
        }
        if (what.find("cannot write") != std::string::npos) {
            std::cerr << "I/O error: " << what << "\n";
            return kExitIo;
        }
        std::cerr << "error: " << what << "\n";
        return kExitValidation;
    }
}
