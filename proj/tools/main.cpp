// Command-line front end: configuration ingestion, pipeline execution and
// machine-readable output. Talks to the solver exclusively through the C API.
//
// Exit codes: 0 success, 1 validation failure, 2 configuration error,
// 3 numerical failure.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "elastodipole.h"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_validation = 1;
constexpr int exit_config = 2;
constexpr int exit_numerical = 3;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

// Minimal ordered JSON emitter; numbers are fixed at 9 significant digits so
// identical configs produce byte-identical output.
class JsonWriter {
public:
    void open() { out_ += "{"; }
    void close() { out_ += "\n}\n"; }
    void field(const std::string& key, double v) { raw(key, fmt9(v)); }
    void field(const std::string& key, int v) { raw(key, std::to_string(v)); }
    void field(const std::string& key, const std::string& v) { raw(key, "\"" + v + "\""); }
    void field_bool(const std::string& key, bool v) { raw(key, v ? "true" : "false"); }
    template <typename T, typename F>
    void array(const std::string& key, const std::vector<T>& vals, F&& f) {
        std::string body = "[";
        for (size_t i = 0; i < vals.size(); ++i) {
            if (i) body += ", ";
            body += f(vals[i]);
        }
        body += "]";
        raw(key, body);
    }
    void object(const std::string& key, const std::string& body) { raw(key, body); }
    const std::string& str() const { return out_; }

private:
    void raw(const std::string& key, const std::string& value) {
        out_ += first_ ? "\n" : ",\n";
        first_ = false;
        out_ += "  \"" + key + "\": " + value;
    }
    std::string out_;
    bool first_ = true;
};

struct OmegaGrid {
    double start = 0.0, stop = 0.0;
    int count = 0;
    bool log = true;

    std::vector<double> build() const {
        if (count <= 0 || start <= 0.0 || stop <= start)
            throw ConfigError("omega grid needs 0 < start < stop and count >= 1");
        std::vector<double> w(count);
        for (int i = 0; i < count; ++i) {
            const double t = count == 1 ? 0.0 : double(i) / (count - 1);
            w[i] = log ? start * std::pow(stop / start, t) : start + t * (stop - start);
        }
        return w;
    }
};

struct RunConfig {
    std::string mesh_path;         // OFF file, or
    double ico_radius = 1.0;       // icosphere parameters
    int ico_subdiv = 3;
    bool use_icosphere = true;
    std::optional<std::array<double, 3>> scale;
    ed_material material{1.0, 1.0, 1.0};
    ed_contrast contrast{1e-6, 1e-4};
    int resolution = 32;
    OmegaGrid grid{};
    bool grid_set = false;
    std::array<double, 3> polarization{0.0, 0.0, 1.0};
    std::string out_path = "-";
    std::string format = "json";
    double tolerance = 0.05;
    bool nullspace_gap = true;
};

std::vector<double> parse_numbers(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stod(tok));
        } catch (...) {
            throw ConfigError("cannot parse number '" + tok + "'");
        }
    }
    return out;
}

void apply_geometry(RunConfig& cfg, const std::string& value) {
    if (value.rfind("icosphere:", 0) == 0) {
        const auto nums = parse_numbers(value.substr(10));
        if (nums.size() != 2) throw ConfigError("icosphere geometry needs R,SUBDIV");
        cfg.use_icosphere = true;
        cfg.ico_radius = nums[0];
        cfg.ico_subdiv = int(nums[1]);
    } else if (value.rfind("mesh:", 0) == 0) {
        cfg.use_icosphere = false;
        cfg.mesh_path = value.substr(5);
    } else {
        throw ConfigError("geometry must be 'icosphere:R,SUBDIV' or 'mesh:PATH'");
    }
}

void apply_omega_grid(RunConfig& cfg, const std::string& value) {
    std::stringstream ss(value);
    std::string tok;
    std::vector<std::string> parts;
    while (std::getline(ss, tok, ',')) parts.push_back(tok);
    if (parts.size() != 4) throw ConfigError("omega grid is START,STOP,COUNT,log|lin");
    try {
        cfg.grid.start = std::stod(parts[0]);
        cfg.grid.stop = std::stod(parts[1]);
        cfg.grid.count = std::stoi(parts[2]);
    } catch (...) {
        throw ConfigError("cannot parse omega grid '" + value + "'");
    }
    if (parts[3] == "log") cfg.grid.log = true;
    else if (parts[3] == "lin") cfg.grid.log = false;
    else throw ConfigError("omega grid spacing must be 'log' or 'lin'");
    cfg.grid_set = true;
}

void apply_key(RunConfig& cfg, const std::string& key, const std::string& value) {
    auto num = [&] {
        try {
            return std::stod(value);
        } catch (...) {
            throw ConfigError("key '" + key + "': cannot parse number '" + value + "'");
        }
    };
    if (key == "geometry") apply_geometry(cfg, value);
    else if (key == "lambda") cfg.material.lambda_ = num();
    else if (key == "mu") cfg.material.mu = num();
    else if (key == "rho") cfg.material.rho = num();
    else if (key == "delta") cfg.contrast.delta = num();
    else if (key == "epsilon") cfg.contrast.epsilon = num();
    else if (key == "resolution") cfg.resolution = int(num());
    else if (key == "omega_grid") apply_omega_grid(cfg, value);
    else if (key == "polarization") {
        const auto nums = parse_numbers(value);
        if (nums.size() != 3) throw ConfigError("polarization needs three components");
        cfg.polarization = {nums[0], nums[1], nums[2]};
    } else if (key == "scale") {
        const auto nums = parse_numbers(value);
        if (nums.size() != 3) throw ConfigError("scale needs three factors");
        cfg.scale = {nums[0], nums[1], nums[2]};
    } else if (key == "out") cfg.out_path = value;
    else if (key == "format") cfg.format = value;
    else if (key == "tolerance") cfg.tolerance = num();
    else if (key == "nullspace_gap") cfg.nullspace_gap = (value == "on" || value == "true" || value == "1");
    else throw ConfigError("unknown config key '" + key + "'");
}

void load_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto h = line.find('#');
        if (h != std::string::npos) line.erase(h);
        const auto eq = line.find('=');
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        apply_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

using MeshPtr = std::unique_ptr<ed_mesh, decltype(&ed_mesh_free)>;

void check(ed_status st) {
    switch (st) {
        case ED_OK: return;
        case ED_ERR_NUMERICAL: throw NumericalError(ed_last_error());
        default: throw ConfigError(ed_last_error());
    }
}

MeshPtr build_mesh(const RunConfig& cfg) {
    ed_mesh* raw = nullptr;
    if (cfg.use_icosphere) check(ed_mesh_icosphere(cfg.ico_radius, cfg.ico_subdiv, &raw));
    else check(ed_mesh_load_off(cfg.mesh_path.c_str(), &raw));
    MeshPtr mesh(raw, &ed_mesh_free);
    if (cfg.scale) {
        ed_mesh* scaled = nullptr;
        check(ed_mesh_scaled(mesh.get(), (*cfg.scale)[0], (*cfg.scale)[1], (*cfg.scale)[2], &scaled));
        mesh.reset(scaled);
    }
    return mesh;
}

void write_output(const RunConfig& cfg, const std::string& text) {
    if (cfg.out_path == "-" || cfg.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file: " + cfg.out_path);
    out << text;
}

std::vector<std::string> collect_warnings(const RunConfig& cfg, bool subwavelength_violated) {
    std::vector<std::string> w;
    const double tau = std::sqrt(cfg.contrast.delta / cfg.contrast.epsilon);
    if (tau > 1.0)
        w.push_back("tau = sqrt(delta/epsilon) = " + fmt9(tau) + " exceeds 1; the speed-contrast assumption is violated");
    if (subwavelength_violated)
        w.push_back("computed frequencies are not deep in the sub-wavelength regime (omega << 1 violated)");
    return w;
}

int cmd_resonance(const RunConfig& cfg) {
    const MeshPtr mesh = build_mesh(cfg);
    ed_resonance_result r{};
    check(ed_resonance_compute(mesh.get(), &cfg.material, &cfg.contrast, cfg.resolution, cfg.nullspace_gap ? 1 : 0, &r));
    JsonWriter j;
    j.open();
    std::vector<double> eig(r.eigenvalues, r.eigenvalues + 6), freq(r.frequencies, r.frequencies + 6);
    std::vector<int> mult(r.multiplicities, r.multiplicities + r.n_clusters);
    j.array("eigenvalues", eig, fmt9);
    j.array("frequencies", freq, fmt9);
    j.array("multiplicities", mult, [](int v) { return std::to_string(v); });
    std::string diag = "{";
    diag += "\"mesh_faces\": " + std::to_string(r.mesh_faces);
    diag += ", \"interior_points\": " + std::to_string(r.interior_points);
    diag += ", \"volume_estimate\": " + fmt9(r.volume_estimate);
    diag += ", \"nullspace_gap\": " + fmt9(r.nullspace_gap);
    diag += ", \"rotation_residual\": " + fmt9(r.rotation_residual);
    diag += ", \"biorth_error\": " + fmt9(r.biorth_error);
    diag += "}";
    j.object("diagnostics", diag);
    j.array("warnings", collect_warnings(cfg, r.subwavelength_warning != 0),
            [](const std::string& s) { return "\"" + s + "\""; });
    j.close();
    write_output(cfg, j.str());
    return exit_ok;
}

int cmd_sphere_oracle(const RunConfig& cfg) {
    if (!cfg.use_icosphere) throw ConfigError("sphere-oracle needs icosphere geometry (radius defines the ball)");
    ed_sphere_result r{};
    check(ed_sphere_oracle(cfg.ico_radius, &cfg.material, &cfg.contrast, &r));
    JsonWriter j;
    j.open();
    j.field("omega1_closed", r.omega1_closed);
    j.field("omega2_closed", r.omega2_closed);
    j.field("omega_torsional_root", r.omega_torsional_root);
    j.field("omega_compressional_root", r.omega_compressional_root);
    j.field("rel_gap_torsional", r.rel_gap_torsional);
    j.field("rel_gap_compressional", r.rel_gap_compressional);
    j.field("rel_gap", std::max(r.rel_gap_torsional, r.rel_gap_compressional));
    j.array("warnings", collect_warnings(cfg, false), [](const std::string& s) { return "\"" + s + "\""; });
    j.close();
    write_output(cfg, j.str());
    return exit_ok;
}

int cmd_sweep(const RunConfig& cfg) {
    if (!cfg.grid_set) throw ConfigError("sweep needs an omega grid (--omega-grid START,STOP,COUNT,log|lin)");
    const MeshPtr mesh = build_mesh(cfg);
    const auto omegas = cfg.grid.build();
    std::vector<double> amp(omegas.size()), cond(omegas.size());
    check(ed_amplitude_sweep(mesh.get(), &cfg.material, &cfg.contrast, cfg.polarization.data(), omegas.data(),
                             int(omegas.size()), cfg.resolution, amp.data(), cond.data()));
    std::string text;
    if (cfg.format == "csv") {
        text = "omega,amplitude,condition_estimate\n";
        for (size_t i = 0; i < omegas.size(); ++i)
            text += fmt9(omegas[i]) + "," + fmt9(amp[i]) + "," + fmt9(cond[i]) + "\n";
    } else {
        JsonWriter j;
        j.open();
        std::vector<size_t> idx(omegas.size());
        for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        j.array("rows", idx, [&](size_t i) {
            return "[" + fmt9(omegas[i]) + ", " + fmt9(amp[i]) + ", " + fmt9(cond[i]) + "]";
        });
        j.close();
        text = j.str();
    }
    write_output(cfg, text);
    return exit_ok;
}

int cmd_validate(const RunConfig& cfg) {
    if (!cfg.use_icosphere) throw ConfigError("validate needs sphere-type geometry (icosphere:R,SUBDIV)");
    const MeshPtr mesh = build_mesh(cfg);
    ed_sphere_result oracle{};
    check(ed_sphere_oracle(cfg.ico_radius, &cfg.material, &cfg.contrast, &oracle));
    ed_resonance_result bem{};
    check(ed_resonance_compute(mesh.get(), &cfg.material, &cfg.contrast, cfg.resolution, cfg.nullspace_gap ? 1 : 0, &bem));

    // ascending BEM frequencies: first three compressional, last three torsional
    std::vector<std::string> rows;
    bool pass = true;
    double worst = 0.0;
    for (int i = 0; i < 6; ++i) {
        const double oracle_w = i < 3 ? oracle.omega2_closed : oracle.omega1_closed;
        const double rel = std::abs(bem.frequencies[i] - oracle_w) / oracle_w;
        worst = std::max(worst, rel);
        if (rel > cfg.tolerance) pass = false;
        rows.push_back("{\"bem\": " + fmt9(bem.frequencies[i]) + ", \"oracle\": " + fmt9(oracle_w) +
                       ", \"rel_error\": " + fmt9(rel) + "}");
    }
    JsonWriter j;
    j.open();
    j.field("tolerance", cfg.tolerance);
    j.array("comparison", rows, [](const std::string& s) { return s; });
    j.field("max_rel_error", worst);
    j.field_bool("pass", pass);
    if (!pass)
        j.field("hint", std::string("refine the surface mesh (icosphere subdivisions >= 3) or the interior grid"));
    j.array("warnings", collect_warnings(cfg, false), [](const std::string& s) { return "\"" + s + "\""; });
    j.close();
    write_output(cfg, j.str());
    return pass ? exit_ok : exit_validation;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sub-wavelength dipolar resonance solver for hard elastic inclusions"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path, icosphere_arg, mesh_arg, grid_arg, pol_arg, scale_arg;
    double delta_arg = -1.0, eps_arg = -1.0, lambda_arg = 0, mu_arg = 0, rho_arg = 0, tol_arg = -1.0;
    bool lambda_set = false, mu_set = false, rho_set = false;
    int res_arg = -1;
    std::string out_arg, format_arg;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "key = value configuration file");
        sub->add_option("--out", out_arg, "output path ('-' for stdout)");
        sub->add_option("--format", format_arg, "json|csv");
        sub->add_option("--mesh", mesh_arg, "OFF mesh path");
        sub->add_option("--icosphere", icosphere_arg, "R,SUBDIV icosphere geometry");
        sub->add_option("--delta", delta_arg, "Lame contrast delta");
        sub->add_option("--epsilon", eps_arg, "density contrast epsilon");
        sub->add_option("--resolution", res_arg, "interior quadrature resolution");
        sub->add_option("--omega-grid", grid_arg, "START,STOP,COUNT,log|lin");
        sub->add_option("--lambda", lambda_arg, "background Lame lambda")->each([&](const std::string&) { lambda_set = true; });
        sub->add_option("--mu", mu_arg, "background shear modulus")->each([&](const std::string&) { mu_set = true; });
        sub->add_option("--rho", rho_arg, "background density")->each([&](const std::string&) { rho_set = true; });
        sub->add_option("--polarization", pol_arg, "incident p-wave polarization PX,PY,PZ");
        sub->add_option("--scale", scale_arg, "anisotropic geometry scaling SX,SY,SZ");
        sub->add_option("--tolerance", tol_arg, "validation tolerance");
    };

    CLI::App* c_res = app.add_subcommand("resonance", "boundary-element resonant frequencies");
    CLI::App* c_orc = app.add_subcommand("sphere-oracle", "analytic spherical-geometry frequencies");
    CLI::App* c_swp = app.add_subcommand("sweep", "amplitude-vs-frequency curve");
    CLI::App* c_val = app.add_subcommand("validate", "compare the two pipelines");
    for (auto* s : {c_res, c_orc, c_swp, c_val}) add_common(s);

    CLI11_PARSE(app, argc, argv);

    try {
        if (!config_path.empty()) load_config_file(cfg, config_path);
        if (!mesh_arg.empty()) apply_geometry(cfg, "mesh:" + mesh_arg);
        if (!icosphere_arg.empty()) apply_geometry(cfg, "icosphere:" + icosphere_arg);
        if (delta_arg > 0) cfg.contrast.delta = delta_arg;
        if (eps_arg > 0) cfg.contrast.epsilon = eps_arg;
        if (lambda_set) cfg.material.lambda_ = lambda_arg;
        if (mu_set) cfg.material.mu = mu_arg;
        if (rho_set) cfg.material.rho = rho_arg;
        if (res_arg > 0) cfg.resolution = res_arg;
        if (!grid_arg.empty()) apply_omega_grid(cfg, grid_arg);
        if (!pol_arg.empty()) apply_key(cfg, "polarization", pol_arg);
        if (!scale_arg.empty()) apply_key(cfg, "scale", scale_arg);
        if (!out_arg.empty()) cfg.out_path = out_arg;
        if (!format_arg.empty()) cfg.format = format_arg;
        if (tol_arg > 0) cfg.tolerance = tol_arg;
        if (cfg.format != "json" && cfg.format != "csv") throw ConfigError("format must be json or csv");

        if (c_res->parsed()) return cmd_resonance(cfg);
        if (c_orc->parsed()) return cmd_sphere_oracle(cfg);
        if (c_swp->parsed()) return cmd_sweep(cfg);
        return cmd_validate(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "{\"error\": \"config\", \"message\": \"" << e.what() << "\"}\n";
        return exit_config;
    } catch (const NumericalError& e) {
        std::cerr << "{\"error\": \"numerical\", \"message\": \"" << e.what() << "\"}\n";
        return exit_numerical;
    } catch (const std::exception& e) {
        std::cerr << "{\"error\": \"internal\", \"message\": \"" << e.what() << "\"}\n";
        return exit_numerical;
    }
}
