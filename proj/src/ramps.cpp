#include "rydlat/ramps.hpp"

#include <cmath>
#include <future>

namespace rydlat::ramps {

using numerics::Complex;
using numerics::MatrixXcd;
using numerics::VectorXcd;

double RampSchedule::total_duration() const {
    double t = 0.0;
    for (const auto& s : segments)
        t += s.duration;
    return t;
}

LatticeParams RampSchedule::params_at(double t) const {
    double acc = 0.0;
    for (const auto& s : segments) {
        if (t <= acc + s.duration || &s == &segments.back()) {
            const double f = std::clamp((t - acc) / s.duration, 0.0, 1.0);
            return LatticeParams{s.V0.at(f), s.V1.at(f), s.phi.at(f), s.k.at(f),
                                 recoil_khz};
        }
        acc += s.duration;
    }
    throw ParamError("params_at: empty schedule");
}

double RampSchedule::k_rate_at(double t) const {
    double acc = 0.0;
    for (const auto& s : segments) {
        if (t <= acc + s.duration || &s == &segments.back())
            return (s.k.end - s.k.start) / s.duration;
        acc += s.duration;
    }
    return 0.0;
}

RampSchedule RampSchedule::scaled(double factor) const {
    if (factor <= 0.0)
        throw ParamError("schedule scale factor must be positive");
    RampSchedule out = *this;
    for (auto& s : out.segments)
        s.duration *= factor;
    return out;
}

RampSchedule RampSchedule::reversed() const {
    RampSchedule out = *this;
    std::reverse(out.segments.begin(), out.segments.end());
    for (auto& s : out.segments) {
        std::swap(s.V0.start, s.V0.end);
        std::swap(s.V1.start, s.V1.end);
        std::swap(s.phi.start, s.phi.end);
        std::swap(s.k.start, s.k.end);
    }
    return out;
}

void validate(const RampSchedule& s) {
    if (s.segments.empty())
        throw ParamError("schedule has no segments");
    if (s.recoil_khz <= 0.0)
        throw ParamError("schedule recoil energy must be positive");
    const RampSegment* prev = nullptr;
    for (const auto& seg : s.segments) {
        if (seg.duration <= 0.0)
            throw ParamError("segment durations must be positive");
        if (seg.V0.start < 0.0 || seg.V0.end < 0.0 || seg.V1.start < 0.0 ||
            seg.V1.end < 0.0)
            throw ParamError("schedule reaches V0 < 0 or V1 < 0");
        if (seg.k.start <= 0.0 || seg.k.end <= 0.0)
            throw ParamError("schedule reaches k <= 0");
        if (prev) {
            const bool cont = prev->V0.end == seg.V0.start &&
                              prev->V1.end == seg.V1.start &&
                              prev->phi.end == seg.phi.start &&
                              prev->k.end == seg.k.start;
            if (!cont)
                throw ParamError("schedule paths are discontinuous across segments");
        }
        prev = &seg;
    }
}

RampSchedule merge_schedule(double recoil_khz) {
    const double unit_us = 1e3 / (2.0 * M_PI * recoil_khz);
    RampSchedule s;
    s.recoil_khz = recoil_khz;
    s.segments = {
        {250.0 / unit_us, {100.0, 20.0}, {100.0, 100.0}, {0.0, 0.0}, {1.0, 1.0}},
        {95.0 / unit_us, {20.0, 20.0}, {100.0, 100.0}, {0.0, M_PI / 2.0}, {1.0, 1.0}},
        {250.0 / unit_us, {20.0, 100.0}, {100.0, 100.0}, {M_PI / 2.0, M_PI / 2.0}, {1.0, 1.0}},
    };
    return s;
}

namespace {

// q = 0 projection of the dilation generator (y d/dy + 1/2) over one lattice
// cell centered on the occupied potential minimum, antisymmetrized so the
// co-moving term is exactly Hermitian in the evolution. Real antisymmetric:
// D[m][n] = (n + m) / (2 (n - m)).
Eigen::MatrixXd dilation_matrix(int N_max) {
    const int dim = 2 * N_max + 1;
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            const int m = i - N_max, n = j - N_max;
            if (n != m)
                D(i, j) = static_cast<double>(n + m) / (2.0 * (n - m));
        }
    return D;
}

} // namespace

RetentionReport evolve_bands(const RampSchedule& schedule, int n_tracked,
                             int N_max, double dt, int samples) {
    validate(schedule);
    if (n_tracked < 1 || n_tracked > 2 * N_max + 1)
        throw ParamError("evolve_bands: bad n_tracked");

    const int dim = 2 * N_max + 1;
    const double T = schedule.total_duration();
    bool k_varies = false;
    for (const auto& seg : schedule.segments)
        if (seg.k.start != seg.k.end)
            k_varies = true;
    const Eigen::MatrixXd D = dilation_matrix(N_max);

    auto fill = [&](double t, MatrixXcd& H) {
        H = lattice::central_matrix(schedule.params_at(t), 0.0, N_max);
        if (k_varies) {
            const double rate = schedule.k_rate_at(t) / schedule.params_at(t).k;
            if (rate != 0.0)
                H -= Complex(0.0, rate) * D;
        }
    };

    if (dt <= 0.0) {
        MatrixXcd H0(dim, dim), H1(dim, dim);
        fill(0.0, H0);
        fill(T, H1);
        dt = std::min(numerics::default_step(H0), numerics::default_step(H1));
    }

    const auto start = numerics::eigh(
        lattice::central_matrix(schedule.params_at(0.0), 0.0, N_max));
    VectorXcd psi = start.eigenvectors.col(0);

    RetentionReport rep;
    const long nsteps = std::max<long>(1, std::lround(std::ceil(T / dt)));
    const double h = T / static_cast<double>(nsteps);
    const long per_sample = std::max<long>(1, nsteps / samples);

    auto record = [&](double t, const VectorXcd& state) {
        const auto spec = numerics::eigh(
            lattice::central_matrix(schedule.params_at(t), 0.0, N_max));
        std::vector<double> pops(n_tracked);
        for (int b = 0; b < n_tracked; ++b)
            pops[b] = std::norm(spec.eigenvectors.col(b).dot(state));
        rep.times.push_back(t);
        rep.band_populations.push_back(std::move(pops));
    };
    record(0.0, psi);

    // march segment-aligned chunks through the RK4 kernel so samples land on
    // uniform times without splitting steps
    long done = 0;
    while (done < nsteps) {
        const long chunk = std::min(per_sample, nsteps - done);
        const double t0 = h * static_cast<double>(done);
        const double t1 = h * static_cast<double>(done + chunk);
        psi = numerics::evolve(fill, psi, t0, t1, h, 1).final_state;
        done += chunk;
        record(t1, psi);
    }

    rep.final_norm = psi.norm();
    const auto fin = numerics::eigh(
        lattice::central_matrix(schedule.params_at(T), 0.0, N_max));
    rep.retention = std::norm(fin.eigenvectors.col(0).dot(psi));
    rep.total_time_us = T * 1e3 / (2.0 * M_PI * schedule.recoil_khz);
    return rep;
}

RetentionReport evolve_stretch(double duration, double k_start, double k_end,
                               double V1, int n_tracked, int N_max, double dt,
                               double recoil_khz) {
    if (duration <= 0.0)
        throw ParamError("evolve_stretch: duration must be positive");
    if (k_start <= 0.0 || k_end <= 0.0)
        throw ParamError("evolve_stretch: k must stay positive");
    if (V1 < 0.0)
        throw ParamError("evolve_stretch: V1 must be non-negative");
    RampSchedule s;
    s.recoil_khz = recoil_khz;
    s.segments = {{duration, {V1, V1}, {0.0, 0.0}, {0.0, 0.0}, {k_start, k_end}}};
    return evolve_bands(s, n_tracked, N_max, dt);
}

std::vector<std::pair<double, double>> adiabaticity_scan(
    const RampSchedule& schedule, const std::vector<double>& scale_factors,
    int n_tracked, int N_max, int jobs) {
    if (scale_factors.empty())
        throw ParamError("adiabaticity_scan: empty scale list");
    for (double f : scale_factors)
        if (f <= 0.0)
            throw ParamError("adiabaticity_scan: scale factors must be positive");

    std::vector<std::pair<double, double>> out(scale_factors.size());
    if (jobs <= 1) {
        for (size_t i = 0; i < scale_factors.size(); ++i)
            out[i] = {scale_factors[i],
                      evolve_bands(schedule.scaled(scale_factors[i]), n_tracked,
                                   N_max).retention};
        return out;
    }
    std::vector<std::future<double>> futs;
    futs.reserve(scale_factors.size());
    for (double f : scale_factors)
        futs.push_back(std::async(std::launch::async, [&, f] {
            return evolve_bands(schedule.scaled(f), n_tracked, N_max).retention;
        }));
    for (size_t i = 0; i < futs.size(); ++i)
        out[i] = {scale_factors[i], futs[i].get()};
    return out;
}

} // namespace rydlat::ramps
