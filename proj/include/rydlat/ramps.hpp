#ifndef RYDLAT_RAMPS_HPP
#define RYDLAT_RAMPS_HPP

#include <utility>
#include <vector>

#include "rydlat/lattice.hpp"

namespace rydlat::ramps {

using lattice::LatticeParams;

struct ScalarPath {
    double start = 0.0;
    double end = 0.0;
    double at(double f) const { return start + (end - start) * f; }
};

/// One linear-ramp segment. Durations are in 1/E_R units (hbar = 1, so a
/// duration T accumulates phase E*T for a state of energy E in E_R).
/// At E_R = 3.5 kHz one time unit is 1/(2*pi*3.5 kHz) = 45.5 us.
struct RampSegment {
    double duration = 1.0;
    ScalarPath V0, V1, phi, k{1.0, 1.0};
};

struct RampSchedule {
    std::vector<RampSegment> segments;
    double recoil_khz = 3.5;

    double total_duration() const;
    LatticeParams params_at(double t) const;
    double k_rate_at(double t) const; // dk/dt, piecewise constant
    RampSchedule scaled(double factor) const;
    RampSchedule reversed() const;
};

void validate(const RampSchedule& s);

/// Band populations along a lattice-manipulation schedule.
struct RetentionReport {
    double retention = 0.0;                 // final ground-band population
    std::vector<double> times;              // sample times, 1/E_R units
    std::vector<std::vector<double>> band_populations; // [sample][band]
    double total_time_us = 0.0;
    double final_norm = 1.0;
};

/// Default merge manipulation at E_R = 3.5 kHz: V0 100 -> 20 E_R, phase ramp
/// 0 -> pi/2 on the low-V0 plateau, V0 back up; segment lengths
/// (250, 95, 250) us. The phase-ramp length is tuned so the left/right-well
/// relative phase rewinds to 2*pi*n, which is what makes the ground-band
/// return probability peak (~0.99999 here, vs arbitrary values off-peak).
RampSchedule merge_schedule(double recoil_khz = 3.5);

/// Evolve the q = 0 plane-wave coefficient vector through a schedule and
/// report instantaneous-band populations. The state is kept in the full
/// (2 N_max + 1)-dimensional space; bands enter only as projections.
/// For schedules that ramp k, the evolution runs in the co-moving scaled
/// coordinate (fixed basis); the induced dilation generator is included to
/// first order in (dk/dt)/k, projected on the q = 0 sector with the cell
/// centered on the occupied potential minimum.
RetentionReport evolve_bands(const RampSchedule& schedule,
                             int n_tracked = 4, int N_max = 10,
                             double dt = 0.0, int samples = 400);

/// Stretch of the single-cosine lattice V1 cos^2(kx) with k ramped linearly.
RetentionReport evolve_stretch(double duration, double k_start, double k_end,
                               double V1, int n_tracked = 4, int N_max = 10,
                               double dt = 0.0, double recoil_khz = 3.5);

/// Rerun a schedule with all durations multiplied by each scale factor.
std::vector<std::pair<double, double>> adiabaticity_scan(
    const RampSchedule& schedule, const std::vector<double>& scale_factors,
    int n_tracked = 4, int N_max = 10, int jobs = 1);

} // namespace rydlat::ramps

#endif
