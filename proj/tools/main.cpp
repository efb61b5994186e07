// Command-line front end: every simulation as a subcommand with config-file
// input and CSV/JSON output. Exit codes: 0 success, 2 parameter error,
// 3 numerical error, 64 usage.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "rydlat/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace rydlat;
using numerics::Complex;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Output {
    std::string dir;
    std::string json_path;

    fs::path resolve(const std::string& name) const {
        fs::path p(name);
        if (p.is_absolute())
            return p;
        return fs::path(dir) / p;
    }
};

Output make_output(const std::string& out_flag, const std::string& json_flag) {
    Output o;
    const char* env = std::getenv("RYDLAT_OUT_DIR");
    o.dir = !out_flag.empty() ? out_flag : (env ? env : ".");
    o.json_path = json_flag;
    return o;
}

json load_config(const std::string& path) {
    if (path.empty())
        return json::object();
    std::ifstream f(path);
    if (!f)
        throw ParamError("cannot read config file '" + path + "'");
    json j;
    f >> j;
    return j;
}

// flags that were not given on the command line fall back to config values
template <typename T>
void fallback(const CLI::App* cmd, const std::string& flag, const json& block,
              const std::string& key, T& value) {
    if (cmd->count(flag) == 0 && block.contains(key))
        value = block[key].get<T>();
}

void emit(const Output& out, const std::string& command, const json& config,
          const json& result, const std::string& default_json_name) {
    json doc;
    doc["meta"] = {{"tool", "rydlat"},
                   {"version", kVersion},
                   {"command", command},
                   {"config", config}};
    doc["result"] = result;
    const fs::path path = out.json_path.empty()
                              ? out.resolve(default_json_name)
                              : out.resolve(out.json_path);
    io::write_file(path.string(), doc.dump(2) + "\n");
    std::cout << path.string() << "\n";
}

json pulse_config(const noblockade::PulseParams& p) {
    return {{"omega1_mhz", p.omega1_mhz},
            {"omega2_mhz", p.omega2_mhz},
            {"delta_mhz", p.delta_mhz},
            {"delta_hf_mhz", p.delta_hf_mhz},
            {"photon_order", p.photon_order},
            {"rabi_offset", p.rabi_offset},
            {"drive_ratio", p.drive_ratio}};
}

noblockade::PulseParams pulse_from_config(const json& block) {
    noblockade::PulseParams p;
    p.omega1_mhz = block.value("omega1_mhz", p.omega1_mhz);
    p.omega2_mhz = block.value("omega2_mhz", p.omega2_mhz);
    p.delta_mhz = block.value("delta_mhz", p.delta_mhz);
    p.delta_hf_mhz = block.value("delta_hf_mhz", p.delta_hf_mhz);
    p.photon_order = block.value("photon_order", p.photon_order);
    p.rabi_offset = block.value("rabi_offset", p.rabi_offset);
    p.drive_ratio = block.value("drive_ratio", p.drive_ratio);
    return p;
}

json interaction_config(const noblockade::InteractionParams& i) {
    return {{"V_int_mhz", i.V_int_mhz},     {"delta_V_ratio", i.delta_V_ratio},
            {"gamma_per_s", i.gamma_per_s}, {"power", i.power},
            {"R_nm", i.R_nm},               {"omega_trap_khz", i.omega_trap_khz}};
}

noblockade::InteractionParams interaction_from_config(const json& block) {
    noblockade::InteractionParams i;
    i.V_int_mhz = block.value("V_int_mhz", i.V_int_mhz);
    i.power = block.value("power", i.power);
    i.delta_V_ratio =
        block.value("delta_V_ratio", i.power == 6 ? 1.0 / 729.0 : 1.0 / 27.0);
    i.gamma_per_s = block.value("gamma_per_s", i.gamma_per_s);
    i.R_nm = block.value("R_nm", i.R_nm);
    i.omega_trap_khz = block.value("omega_trap_khz", i.omega_trap_khz);
    return i;
}

ramps::RampSchedule schedule_from_config(const json& block) {
    if (!block.contains("segments"))
        return ramps::merge_schedule(block.value("recoil_khz", 3.5));
    ramps::RampSchedule s;
    s.recoil_khz = block.value("recoil_khz", 3.5);
    const double unit_us = 1e3 / (2.0 * M_PI * s.recoil_khz);
    for (const auto& seg : block["segments"]) {
        ramps::RampSegment r;
        if (seg.contains("duration_us"))
            r.duration = seg["duration_us"].get<double>() / unit_us;
        else
            r.duration = seg.value("duration", 1.0);
        auto path = [&](const char* key, ramps::ScalarPath dflt) {
            if (!seg.contains(key))
                return dflt;
            const auto& v = seg[key];
            if (v.is_array())
                return ramps::ScalarPath{v[0].get<double>(), v[1].get<double>()};
            return ramps::ScalarPath{v.get<double>(), v.get<double>()};
        };
        r.V0 = path("V0", {100.0, 100.0});
        r.V1 = path("V1", {100.0, 100.0});
        r.phi = path("phi", {0.0, 0.0});
        r.k = path("k", {1.0, 1.0});
        s.segments.push_back(r);
    }
    return s;
}

json schedule_config(const ramps::RampSchedule& s) {
    const double unit_us = 1e3 / (2.0 * M_PI * s.recoil_khz);
    json segments = json::array();
    for (const auto& seg : s.segments)
        segments.push_back({{"duration_us", seg.duration * unit_us},
                            {"V0", {seg.V0.start, seg.V0.end}},
                            {"V1", {seg.V1.start, seg.V1.end}},
                            {"phi", {seg.phi.start, seg.phi.end}},
                            {"k", {seg.k.start, seg.k.end}}});
    return {{"recoil_khz", s.recoil_khz}, {"segments", segments}};
}

json verify_noblockade(const noblockade::PulseParams& p,
                       const noblockade::InteractionParams& i) {
    json rows = json::array();
    auto row = [&](const std::string& name, double analytic, double numeric) {
        rows.push_back({{"term", name},
                        {"analytic", analytic},
                        {"numeric", numeric},
                        {"ratio", analytic != 0.0 ? numeric / analytic : 0.0}});
    };
    noblockade::InteractionParams nodecay = i;
    nodecay.gamma_per_s = 0.0;
    const auto g0 = noblockade::run_gate(p, nodecay);
    row("eps_imp_exc",
        budget::imperfect_excitation_error(i.V_int_mhz, p.two_photon_rabi_mhz()),
        1.0 - g0.fidelity_avg);
    if (i.gamma_per_s > 0.0) {
        const auto g1 = noblockade::run_gate(p, i);
        const auto [d1, d2] = budget::decay_errors_no_blockade(
            i.gamma_per_s, i.V_int_mhz, p.two_photon_rabi_mhz());
        row("eps_rydb_decay", d1 + d2, g0.fidelity_avg - g1.fidelity_avg);
    }
    noblockade::PulseParams inact = p;
    inact.drive_ratio = noblockade::inactive_drive_ratio(p.photon_order);
    row("inactive_P", noblockade::inactive_closed_form(inact.drive_ratio),
        noblockade::run_inactive(inact));
    return rows;
}

json verify_blockade(const blockade::BlockadeParams& p,
                     const noblockade::InteractionParams& i) {
    json rows = json::array();
    auto row = [&](const std::string& name, double analytic, double numeric) {
        rows.push_back({{"term", name},
                        {"analytic", analytic},
                        {"numeric", numeric},
                        {"ratio", analytic != 0.0 ? numeric / analytic : 0.0}});
    };
    noblockade::InteractionParams nodecay = i;
    nodecay.gamma_per_s = 0.0;
    const auto g0 = blockade::run_blockade_gate(p, nodecay);
    row("eps_imp_block",
        budget::imperfect_blockade_error(p.pulse.two_photon_rabi_mhz() * 1e3,
                                         p.delta_vec_khz),
        1.0 - g0.fidelity_avg);
    if (i.gamma_per_s > 0.0) {
        const auto g1 = blockade::run_blockade_gate(p, i);
        row("eps_rydb_decay_blockade",
            budget::decay_error_blockade(i.gamma_per_s,
                                         p.pulse.two_photon_rabi_mhz() * 1e3),
            g0.fidelity_avg - g1.fidelity_avg);
    }
    blockade::BlockadeParams inact = p;
    const double ratio = blockade::standing_wave_ratio(100.0, 100.0);
    inact.pulse.drive_ratio = std::pow(ratio, p.pulse.photon_order);
    const auto gi = blockade::run_blockade_gate(inact, nodecay);
    const auto d = gi.realized_diagonal();
    const double numericP = 0.25 * (std::norm(d[0]) + std::norm(d[1]) +
                                    std::norm(d[2]) + std::norm(d[3]));
    row("inactive_P",
        blockade::run_blockade_inactive(ratio, p.pulse.photon_order), numericP);
    return rows;
}

void print_verify(const json& rows) {
    std::printf("%-26s %14s %14s %8s\n", "term", "analytic", "numeric", "ratio");
    for (const auto& r : rows)
        std::printf("%-26s %14.6e %14.6e %8.4f\n",
                    r["term"].get<std::string>().c_str(),
                    r["analytic"].get<double>(), r["numeric"].get<double>(),
                    r["ratio"].get<double>());
}

cluster::Geometry parse_geometry(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw ParamError("geometry must look like 1d:6 or 2d:3x3");
    const std::string kind = text.substr(0, colon);
    const std::string rest = text.substr(colon + 1);
    try {
        if (kind == "1d")
            return cluster::Geometry::chain(std::stoi(rest));
        if (kind == "2d") {
            const auto x = rest.find('x');
            if (x == std::string::npos)
                throw ParamError("2d geometry must look like 2d:3x3");
            return cluster::Geometry::grid(std::stoi(rest.substr(0, x)),
                                           std::stoi(rest.substr(x + 1)));
        }
    } catch (const std::invalid_argument&) {
        throw ParamError("bad geometry '" + text + "'");
    }
    throw ParamError("geometry kind must be 1d or 2d");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Superlattice cluster-state generation toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_dir, json_out;
    app.add_option("--config", config_path, "JSON config file; flags override");
    app.add_option("--out", out_dir,
                   "output directory (default: $RYDLAT_OUT_DIR or .)");
    app.add_option("--json-out", json_out, "path of the JSON result file");

    auto* bands = app.add_subcommand("bands", "Bloch bands of the superlattice");
    double b_V0 = 100.0, b_V1 = 100.0, b_phi = 0.0, b_k = 1.0, b_ER = 3.5;
    int b_nbands = 4, b_qpoints = 32, b_nmax = 10;
    bands->add_option("--V0", b_V0, "depth of the cos^2(kx+phi) lattice, E_R");
    bands->add_option("--V1", b_V1, "depth of the cos^2(2kx) lattice, E_R");
    bands->add_option("--phi", b_phi, "superlattice phase, rad");
    bands->add_option("--k", b_k, "wavevector in reference units");
    bands->add_option("--ER", b_ER, "recoil energy, kHz");
    bands->add_option("--n-bands", b_nbands);
    bands->add_option("--q-points", b_qpoints);
    bands->add_option("--N-max", b_nmax);

    auto* wan = app.add_subcommand("wannier", "Wannier / generalized Wannier functions");
    double w_V0 = 100.0, w_V1 = 100.0, w_phi = 0.0, w_k = 1.0, w_ER = 3.5;
    int w_qpoints = 16, w_nmax = 10, w_cell = 0;
    wan->add_option("--V0", w_V0);
    wan->add_option("--V1", w_V1);
    wan->add_option("--phi", w_phi);
    wan->add_option("--k", w_k);
    wan->add_option("--ER", w_ER);
    wan->add_option("--q-points", w_qpoints);
    wan->add_option("--N-max", w_nmax);
    wan->add_option("--cell", w_cell, "cell index for the Wannier center");

    auto* ramp = app.add_subcommand("ramp", "band retention through a lattice manipulation");
    double r_scale = 1.0;
    std::string r_scan;
    int r_jobs = 1, r_tracked = 4;
    ramp->add_option("--scale", r_scale, "duration scale factor");
    ramp->add_option("--scan", r_scan, "comma-separated scale factors");
    ramp->add_option("--jobs", r_jobs, "parallel evaluations for --scan");
    ramp->add_option("--n-tracked", r_tracked);

    auto* str = app.add_subcommand("stretch", "lattice stretch retention");
    double s_duration = 16.0, s_kstart = 2.0, s_kend = 0.4, s_V1 = 100.0,
           s_ER = 3.5;
    str->add_option("--duration", s_duration, "duration in 1/E_R units");
    str->add_option("--k-start", s_kstart);
    str->add_option("--k-end", s_kend);
    str->add_option("--V1", s_V1);
    str->add_option("--ER", s_ER);

    auto* gnb = app.add_subcommand("gate-noblockade", "no-blockade phase gate");
    double g_o2d = 30.0, g_delta = 40000.0, g_dhf = 6834.683, g_vint = 3.0,
           g_gamma = 0.0, g_offset = 0.0, g_ratio = 1.0;
    int g_photon = 2, g_power = 6;
    bool g_verify = false, g_inactive = false;
    gnb->add_option("--o2d", g_o2d, "two-photon Rabi Omega^2/Delta, MHz");
    gnb->add_option("--delta", g_delta, "intermediate detuning, MHz");
    gnb->add_option("--delta-hf", g_dhf, "hyperfine splitting, MHz");
    gnb->add_option("--vint", g_vint, "interaction shift, MHz");
    gnb->add_option("--gamma", g_gamma, "Rydberg decay rate, 1/s");
    gnb->add_option("--rabi-offset", g_offset);
    gnb->add_option("--drive-ratio", g_ratio);
    gnb->add_option("--photon-order", g_photon);
    gnb->add_option("--power", g_power, "interaction power: 6 vdW, 3 dipolar");
    gnb->add_flag("--verify", g_verify, "print the analytic-vs-numeric table");
    gnb->add_flag("--inactive", g_inactive, "inactive-site return probability");

    auto* gbl = app.add_subcommand("gate-blockade", "blockaded phase gate");
    double bl_o2d = 40.0, bl_dvec = 200.0, bl_vint = 4.0, bl_gamma = 0.0,
           bl_delta = 40000.0, bl_dhf = 6834.683;
    int bl_photon = 2;
    bool bl_verify = false, bl_swap = false;
    gbl->add_option("--o2d-khz", bl_o2d, "two-photon Rabi, kHz");
    gbl->add_option("--delta-vec", bl_dvec, "left-right qubit shift, kHz");
    gbl->add_option("--vint", bl_vint, "interaction shift, MHz");
    gbl->add_option("--gamma", bl_gamma, "Rydberg decay rate, 1/s");
    gbl->add_option("--delta", bl_delta, "intermediate detuning, MHz");
    gbl->add_option("--delta-hf", bl_dhf);
    gbl->add_option("--photon-order", bl_photon);
    gbl->add_flag("--swap-roles", bl_swap);
    gbl->add_flag("--verify", bl_verify);

    auto* eb = app.add_subcommand("error-budget", "analytic error budget");
    std::string eb_preset = "rb_noblockade_2ph";
    bool eb_verify = false;
    eb->add_option("--preset", eb_preset,
                   "one of: rb_noblockade_2ph, rb_noblockade_4ph, "
                   "rb_blockade_2ph, csho_blockade_1ph, co_molecule_2ph, "
                   "co_molecule_4ph");
    eb->add_flag("--verify", eb_verify);

    auto* tim = app.add_subcommand("timing", "cluster-state generation times");
    std::string t_scheme = "no_blockade";
    int t_dim = 1;
    tim->add_option("--scheme", t_scheme, "no_blockade or blockade");
    tim->add_option("--dimension", t_dim, "1 or 2");

    auto* clu = app.add_subcommand("cluster", "cluster-state protocol and stabilizers");
    std::string c_geometry = "1d:6", c_gate = "ideal";
    clu->add_option("--geometry", c_geometry, "1d:N or 2d:RxC");
    clu->add_option("--gate", c_gate,
                    "ideal, or a JSON file with a simulated gate outcome");

    // global options (--config/--out/--json-out) may follow the subcommand
    for (auto* sc : app.get_subcommands(std::function<bool(CLI::App*)>{}))
        sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 64;
    }

    try {
        const json cfg = load_config(config_path);
        const Output out = make_output(out_dir, json_out);

        if (*bands) {
            const json block = cfg.value("lattice", json::object());
            fallback(bands, "--V0", block, "V0", b_V0);
            fallback(bands, "--V1", block, "V1", b_V1);
            fallback(bands, "--phi", block, "phi", b_phi);
            fallback(bands, "--k", block, "k", b_k);
            fallback(bands, "--ER", block, "recoil_khz", b_ER);
            fallback(bands, "--n-bands", block, "n_bands", b_nbands);
            fallback(bands, "--q-points", block, "q_points", b_qpoints);
            fallback(bands, "--N-max", block, "N_max", b_nmax);
            lattice::LatticeParams p{b_V0, b_V1, b_phi, b_k, b_ER};
            const auto bs = lattice::solve_bands(p, b_nbands, b_qpoints, b_nmax);
            io::write_file(out.resolve("bands.csv").string(),
                           io::band_energies_csv(bs));
            json config;
            config["lattice"] = io::to_json(p);
            config["lattice"]["n_bands"] = b_nbands;
            config["lattice"]["q_points"] = b_qpoints;
            config["lattice"]["N_max"] = b_nmax;
            emit(out, "bands", config, io::to_json(bs), "bands.json");
        } else if (*wan) {
            const json block = cfg.value("lattice", json::object());
            fallback(wan, "--V0", block, "V0", w_V0);
            fallback(wan, "--V1", block, "V1", w_V1);
            fallback(wan, "--phi", block, "phi", w_phi);
            fallback(wan, "--k", block, "k", w_k);
            fallback(wan, "--ER", block, "recoil_khz", w_ER);
            fallback(wan, "--q-points", block, "q_points", w_qpoints);
            fallback(wan, "--N-max", block, "N_max", w_nmax);
            fallback(wan, "--cell", block, "cell", w_cell);
            lattice::LatticeParams p{w_V0, w_V1, w_phi, w_k, w_ER};
            const auto ws = lattice::wannier(
                lattice::solve_bands(p, 2, w_qpoints, w_nmax), w_cell);
            io::write_file(out.resolve("wannier.csv").string(),
                           io::wannier_csv(ws));
            json config;
            config["lattice"] = io::to_json(p);
            config["lattice"]["q_points"] = w_qpoints;
            config["lattice"]["N_max"] = w_nmax;
            config["lattice"]["cell"] = w_cell;
            emit(out, "wannier", config, io::to_json(ws), "wannier.json");
        } else if (*ramp) {
            ramps::RampSchedule schedule =
                schedule_from_config(cfg.value("ramp", json::object()));
            if (r_scale != 1.0)
                schedule = schedule.scaled(r_scale);
            json config;
            config["ramp"] = schedule_config(schedule);
            config["ramp"]["n_tracked"] = r_tracked;
            json result;
            if (!r_scan.empty()) {
                std::vector<double> scales;
                std::stringstream ss(r_scan);
                for (std::string item; std::getline(ss, item, ',');)
                    scales.push_back(std::stod(item));
                const auto scan = ramps::adiabaticity_scan(schedule, scales,
                                                           r_tracked, 10, r_jobs);
                io::write_file(out.resolve("ramp_scan.csv").string(),
                               io::scan_csv(scan));
                json rows = json::array();
                for (const auto& [scale, retention] : scan)
                    rows.push_back({{"scale", scale}, {"retention", retention}});
                result["scan"] = rows;
                config["ramp"]["scan"] = r_scan;
            } else {
                const auto rep = ramps::evolve_bands(schedule, r_tracked);
                io::write_file(out.resolve("ramp_populations.csv").string(),
                               io::retention_csv(rep));
                result = io::to_json(rep);
            }
            emit(out, "ramp", config, result, "ramp.json");
        } else if (*str) {
            const json block = cfg.value("stretch", json::object());
            fallback(str, "--duration", block, "duration", s_duration);
            fallback(str, "--k-start", block, "k_start", s_kstart);
            fallback(str, "--k-end", block, "k_end", s_kend);
            fallback(str, "--V1", block, "V1", s_V1);
            fallback(str, "--ER", block, "recoil_khz", s_ER);
            const auto rep = ramps::evolve_stretch(s_duration, s_kstart, s_kend,
                                                   s_V1, 4, 10, 0.0, s_ER);
            io::write_file(out.resolve("stretch_populations.csv").string(),
                           io::retention_csv(rep));
            json config;
            config["stretch"] = {{"duration", s_duration},
                                 {"k_start", s_kstart},
                                 {"k_end", s_kend},
                                 {"V1", s_V1},
                                 {"recoil_khz", s_ER}};
            emit(out, "stretch", config, io::to_json(rep), "stretch.json");
        } else if (*gnb) {
            noblockade::PulseParams p =
                pulse_from_config(cfg.value("pulse", json::object()));
            if (gnb->count("--o2d") || gnb->count("--delta") ||
                !cfg.contains("pulse")) {
                p.omega1_mhz = p.omega2_mhz = std::sqrt(g_o2d * g_delta);
                p.delta_mhz = g_delta;
            }
            if (gnb->count("--delta-hf"))
                p.delta_hf_mhz = g_dhf;
            if (gnb->count("--photon-order"))
                p.photon_order = g_photon;
            if (gnb->count("--rabi-offset"))
                p.rabi_offset = g_offset;
            if (gnb->count("--drive-ratio"))
                p.drive_ratio = g_ratio;
            noblockade::InteractionParams i =
                interaction_from_config(cfg.value("interaction", json::object()));
            if (gnb->count("--vint"))
                i.V_int_mhz = g_vint;
            if (gnb->count("--gamma"))
                i.gamma_per_s = g_gamma;
            if (gnb->count("--power")) {
                i.power = g_power;
                i.delta_V_ratio = g_power == 6 ? 1.0 / 729.0 : 1.0 / 27.0;
            }
            json config;
            config["pulse"] = pulse_config(p);
            config["interaction"] = interaction_config(i);
            json result;
            if (g_inactive) {
                noblockade::PulseParams q = p;
                if (gnb->count("--drive-ratio") == 0)
                    q.drive_ratio = noblockade::inactive_drive_ratio(p.photon_order);
                result["inactive_P"] = noblockade::run_inactive(q);
                result["drive_ratio"] = q.drive_ratio;
                result["closed_form"] =
                    noblockade::inactive_closed_form(q.drive_ratio);
            } else {
                result = io::to_json(noblockade::run_gate(p, i));
            }
            if (g_verify) {
                result["verify"] = verify_noblockade(p, i);
                print_verify(result["verify"]);
            }
            emit(out, "gate-noblockade", config, result, "gate_noblockade.json");
        } else if (*gbl) {
            blockade::BlockadeParams p;
            p.pulse = pulse_from_config(cfg.value("pulse", json::object()));
            if (gbl->count("--o2d-khz") || gbl->count("--delta") ||
                !cfg.contains("pulse")) {
                p.pulse.delta_mhz = bl_delta;
                p.pulse.omega1_mhz = p.pulse.omega2_mhz =
                    std::sqrt(bl_o2d * 1e-3 * bl_delta);
            }
            if (gbl->count("--delta-hf"))
                p.pulse.delta_hf_mhz = bl_dhf;
            if (gbl->count("--photon-order"))
                p.pulse.photon_order = bl_photon;
            const json bblock = cfg.value("blockade", json::object());
            p.delta_vec_khz = bblock.value("delta_vec_khz", bl_dvec);
            if (gbl->count("--delta-vec"))
                p.delta_vec_khz = bl_dvec;
            p.swap_roles = bl_swap || bblock.value("swap_roles", false);
            noblockade::InteractionParams i =
                interaction_from_config(cfg.value("interaction", json::object()));
            if (gbl->count("--vint"))
                i.V_int_mhz = bl_vint;
            if (gbl->count("--gamma"))
                i.gamma_per_s = bl_gamma;
            json config;
            config["pulse"] = pulse_config(p.pulse);
            config["blockade"] = {{"delta_vec_khz", p.delta_vec_khz},
                                  {"swap_roles", p.swap_roles}};
            config["interaction"] = interaction_config(i);
            json result = io::to_json(blockade::run_blockade_gate(p, i));
            result["theta"] = io::to_json(blockade::theta_check(
                p.pulse.two_photon_rabi_mhz() * 1e3, std::abs(p.delta_vec_khz)));
            if (bl_verify) {
                result["verify"] = verify_blockade(p, i);
                print_verify(result["verify"]);
            }
            emit(out, "gate-blockade", config, result, "gate_blockade.json");
        } else if (*eb) {
            fallback(eb, "--preset", cfg.value("budget", json::object()),
                     "preset", eb_preset);
            const auto b = budget::assemble_table(eb_preset);
            std::cout << budget::format_table(b);
            json result = io::to_json(b);
            if (eb_verify) {
                if (b.scheme == budget::Scheme::no_blockade) {
                    noblockade::PulseParams p;
                    const double o2d = eb_preset.rfind("co_", 0) == 0 ? 0.1 : 30.0;
                    p.omega1_mhz = p.omega2_mhz = std::sqrt(o2d * 40000.0);
                    p.photon_order = b.photon_order;
                    noblockade::InteractionParams i;
                    i.V_int_mhz = b.terms.at("V_int_mhz");
                    i.power = eb_preset.rfind("co_", 0) == 0 ? 3 : 6;
                    i.gamma_per_s = eb_preset.rfind("co_", 0) == 0 ? 2.0 : 2000.0;
                    result["verify"] = verify_noblockade(p, i);
                } else {
                    blockade::BlockadeParams p;
                    const double o2d_khz = b.photon_order == 1 ? 100.0 : 40.0;
                    p.pulse.omega1_mhz = p.pulse.omega2_mhz =
                        std::sqrt(o2d_khz * 1e-3 * 40000.0);
                    p.pulse.photon_order = b.photon_order;
                    // nearest theta-valid operating point
                    p.delta_vec_khz = b.photon_order == 1 ? 1000.0 : 400.0;
                    noblockade::InteractionParams i;
                    i.V_int_mhz = 40.0;
                    i.gamma_per_s = 2000.0;
                    result["verify"] = verify_blockade(p, i);
                }
                print_verify(result["verify"]);
            }
            json config;
            config["budget"] = {{"preset", eb_preset}};
            emit(out, "error-budget", config, result, "error_budget.json");
        } else if (*tim) {
            fallback(tim, "--scheme", cfg.value("timing", json::object()),
                     "scheme", t_scheme);
            fallback(tim, "--dimension", cfg.value("timing", json::object()),
                     "dimension", t_dim);
            budget::Scheme scheme;
            if (t_scheme == "no_blockade")
                scheme = budget::Scheme::no_blockade;
            else if (t_scheme == "blockade")
                scheme = budget::Scheme::blockade;
            else
                throw ParamError("scheme must be no_blockade or blockade");
            const auto t = budget::timing(scheme, t_dim);
            json config;
            config["timing"] = {{"scheme", t_scheme}, {"dimension", t_dim}};
            emit(out, "timing", config, io::to_json(t), "timing.json");
        } else if (*clu) {
            fallback(clu, "--geometry", cfg.value("cluster", json::object()),
                     "geometry", c_geometry);
            fallback(clu, "--gate", cfg.value("cluster", json::object()), "gate",
                     c_gate);
            const auto geometry = parse_geometry(c_geometry);
            cluster::Gate4 gate;
            if (c_gate == "ideal") {
                gate = cluster::ideal_cz();
            } else {
                std::ifstream f(c_gate);
                if (!f)
                    throw ParamError("cannot read gate file '" + c_gate + "'");
                json jg;
                f >> jg;
                const json& res = jg.contains("result") ? jg["result"] : jg;
                if (!res.is_object() || !res.contains("branches"))
                    throw ParamError("'" + c_gate +
                                     "' does not contain a simulated gate outcome");
                gate = cluster::Gate4::Zero();
                const char* keys[4] = {"00", "01", "10", "11"};
                for (int k = 0; k < 4; ++k) {
                    const auto& ov = res.at("branches").at(keys[k]).at("overlap");
                    gate(k, k) = Complex(ov[0].get<double>(), ov[1].get<double>());
                }
            }
            const auto res = cluster::run_protocol(geometry, gate);
            json config;
            config["cluster"] = {{"geometry", c_geometry}, {"gate", c_gate}};
            emit(out, "cluster", config, io::to_json(res), "cluster.json");
        }
        return 0;
    } catch (const ParamError& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
}
