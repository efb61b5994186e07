#include "rydlat/io.hpp"

#include <cstdio>
#include <fstream>

namespace rydlat::io {

namespace {

json complex_json(const numerics::Complex& z) {
    return json::array({z.real(), z.imag()});
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17e", v);
    return buf;
}

} // namespace

json to_json(const lattice::LatticeParams& p) {
    return {{"V0", p.V0},
            {"V1", p.V1},
            {"phi", p.phi},
            {"k", p.k},
            {"recoil_khz", p.recoil_khz}};
}

lattice::LatticeParams lattice_params_from_json(const json& j) {
    lattice::LatticeParams p;
    p.V0 = j.value("V0", p.V0);
    p.V1 = j.value("V1", p.V1);
    p.phi = j.value("phi", p.phi);
    p.k = j.value("k", p.k);
    p.recoil_khz = j.value("recoil_khz", p.recoil_khz);
    return p;
}

json to_json(const lattice::BandStructure& bs) {
    json j;
    j["params"] = to_json(bs.params);
    j["N_max"] = bs.N_max;
    j["n_bands"] = bs.energies.rows();
    j["q_points"] = bs.q_grid.size();
    json lowest = json::array(), splitting = json::array();
    for (Eigen::Index q = 0; q < bs.q_grid.size(); ++q) {
        lowest.push_back(bs.energies(0, q));
        if (bs.energies.rows() > 1)
            splitting.push_back(bs.energies(1, q) - bs.energies(0, q));
    }
    j["ground_band"] = lowest;
    j["lowest_splitting"] = splitting;
    return j;
}

json to_json(const lattice::WannierSet& ws) {
    const double cell_lo = ws.cell_center - M_PI / 2.0;
    json j;
    j["cell_center"] = ws.cell_center;
    j["grid_points"] = ws.x_grid.size();
    j["w1_rms_width"] = lattice::rms_width(ws.x_grid, ws.w1);
    j["psiL_left_weight"] = lattice::probability_weight(
        ws.x_grid, ws.psiL, cell_lo, ws.cell_center);
    j["psiR_right_weight"] = lattice::probability_weight(
        ws.x_grid, ws.psiR, ws.cell_center, cell_lo + M_PI);
    return j;
}

json to_json(const ramps::RetentionReport& r) {
    json j;
    j["retention"] = r.retention;
    j["total_time_us"] = r.total_time_us;
    j["final_norm"] = r.final_norm;
    if (!r.band_populations.empty()) {
        json fin = json::array();
        for (double p : r.band_populations.back())
            fin.push_back(p);
        j["final_band_populations"] = fin;
    }
    j["samples"] = r.times.size();
    return j;
}

json to_json(const noblockade::GateOutcome& g) {
    json j;
    j["fidelity_avg"] = g.fidelity_avg;
    j["conditional_phase"] = g.conditional_phase;
    j["leakage_avg"] = g.leakage_avg;
    json branches;
    for (const auto& [key, b] : g.branches) {
        json jb;
        jb["basis"] = b.basis;
        json amps = json::array();
        for (Eigen::Index i = 0; i < b.amplitudes.size(); ++i)
            amps.push_back(complex_json(b.amplitudes[i]));
        jb["amplitudes"] = amps;
        jb["overlap"] = complex_json(b.overlap);
        jb["leakage"] = b.leakage;
        branches[key] = jb;
    }
    j["branches"] = branches;
    j["warnings"] = g.warnings;
    return j;
}

json to_json(const blockade::ThetaCondition& c) {
    return {{"theta", c.theta},
            {"residue", c.residue},
            {"satisfied", c.satisfied},
            {"nearest_valid_o2d_khz", c.nearest_valid_o2d_khz}};
}

json to_json(const budget::ErrorBudget& b) {
    json j;
    j["preset"] = b.preset;
    j["scheme"] = b.scheme == budget::Scheme::no_blockade ? "no_blockade" : "blockade";
    j["photon_order"] = b.photon_order;
    j["terms"] = b.terms;
    j["total"] = b.total;
    j["inactive_P"] = b.inactive_P;
    return j;
}

json to_json(const budget::TimingBudget& t) {
    json steps = json::array();
    for (const auto& [label, us] : t.steps)
        steps.push_back({{"label", label}, {"us", us}});
    return {{"steps", steps}, {"total_us", t.total_us}};
}

json to_json(const cluster::ProtocolResult& r) {
    json j;
    j["fidelity_to_ideal"] = r.fidelity_to_ideal;
    j["success_probability"] = r.success_probability;
    j["stabilizers"] = r.stabilizers;
    j["frame"] = r.state.frame;
    return j;
}

std::string band_energies_csv(const lattice::BandStructure& bs) {
    std::string out = "q_over_k";
    for (Eigen::Index b = 0; b < bs.energies.rows(); ++b)
        out += ",E" + std::to_string(b + 1);
    out += "\n";
    for (Eigen::Index q = 0; q < bs.q_grid.size(); ++q) {
        out += fmt(bs.q_grid[q]);
        for (Eigen::Index b = 0; b < bs.energies.rows(); ++b)
            out += "," + fmt(bs.energies(b, q));
        out += "\n";
    }
    return out;
}

std::string wannier_csv(const lattice::WannierSet& ws) {
    std::string out =
        "kx,w1_re,w1_im,w2_re,w2_im,psiL_re,psiL_im,psiR_re,psiR_im\n";
    for (Eigen::Index i = 0; i < ws.x_grid.size(); ++i) {
        out += fmt(ws.x_grid[i]);
        for (const auto* f : {&ws.w1, &ws.w2, &ws.psiL, &ws.psiR}) {
            out += "," + fmt((*f)[i].real());
            out += "," + fmt((*f)[i].imag());
        }
        out += "\n";
    }
    return out;
}

std::string retention_csv(const ramps::RetentionReport& r) {
    const size_t bands =
        r.band_populations.empty() ? 0 : r.band_populations.front().size();
    std::string out = "time";
    for (size_t b = 1; b <= bands; ++b)
        out += ",P_band" + std::to_string(b);
    out += "\n";
    for (size_t s = 0; s < r.times.size(); ++s) {
        out += fmt(r.times[s]);
        for (size_t b = 0; b < bands; ++b)
            out += "," + fmt(r.band_populations[s][b]);
        out += "\n";
    }
    return out;
}

std::string scan_csv(const std::vector<std::pair<double, double>>& scan) {
    std::string out = "scale,retention\n";
    for (const auto& [scale, retention] : scan)
        out += fmt(scale) + "," + fmt(retention) + "\n";
    return out;
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw ParamError("cannot open output file '" + path + "'");
    f << contents;
    if (!f.good())
        throw NumericalError("failed writing '" + path + "'");
}

} // namespace rydlat::io
