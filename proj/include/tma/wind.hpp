#pragma once

#include <stdexcept>

#include "tma/geometry.hpp"
#include "tma/rng.hpp"

namespace tma {

// A commanded-speed/wind pair produced a ground speed <= 0 on some
// segment; the command is unflyable under this wind.
class NonpositiveGroundSpeed : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Signed per-segment wind components, positive = tailwind. The scenario
// wind is an east-to-west scalar w, i.e. wind vector (-w, 0).
struct WindComponents {
    double leg = 0.0;
    double arc = 0.0;
    double final_leg = 0.0;
};

// Scalar scenario wind draw, N(mu, sigma^2); deterministic given the rng seed.
double sample_wind(double mu_kts, double sigma_kts, Rng& rng);

// Projects the scenario wind onto the segment headings: component = -w * h_x.
WindComponents segment_wind_components(double w, const SegmentHeadings& headings);

// Wind-corrected travel duration (seconds) over an already-built path.
// Throws NonpositiveGroundSpeed when any ground speed is <= 0.
double wind_corrected_duration(const PathGeometry& path, const SegmentSpeeds& speeds,
                               const WindComponents& wind);

// Absolute wind-corrected FAF arrival time: tau + corrected duration, with
// wind components evaluated at this candidate d.
double wind_corrected_arrival_time(const Point2& entry, double tau, const ApproachLayout& layout,
                                   double d, const SegmentSpeeds& speeds, double w);

}  // namespace tma
