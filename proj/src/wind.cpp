#include "tma/wind.hpp"

namespace tma {

double sample_wind(double mu_kts, double sigma_kts, Rng& rng) {
    if (sigma_kts == 0.0) return mu_kts;
    return rng.gaussian(mu_kts, sigma_kts);
}

WindComponents segment_wind_components(double w, const SegmentHeadings& headings) {
    return {-w * headings.leg_x, -w * headings.arc_x, -w * headings.final_x};
}

double wind_corrected_duration(const PathGeometry& path, const SegmentSpeeds& speeds,
                               const WindComponents& wind) {
    const double gs_leg = speeds.v_leg + wind.leg;
    const double gs_arc = speeds.v_arc + wind.arc;
    const double gs_final = speeds.v_final + wind.final_leg;
    if (gs_leg <= 0.0 || gs_arc <= 0.0 || gs_final <= 0.0) {
        throw NonpositiveGroundSpeed("wind cancels the commanded airspeed on a segment");
    }
    return kSecondsPerHour *
           (path.tangent_leg_len / gs_leg + path.arc_len / gs_arc + path.extension / gs_final);
}

double wind_corrected_arrival_time(const Point2& entry, double tau, const ApproachLayout& layout,
                                   double d, const SegmentSpeeds& speeds, double w) {
    const PathGeometry path = build_path(entry, layout, d);
    const SegmentHeadings headings = segment_headings(entry, layout, path);
    return tau + wind_corrected_duration(path, speeds, segment_wind_components(w, headings));
}

}  // namespace tma
