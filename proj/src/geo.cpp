// SPDX-License-Identifier: Apache-2.0

#include "fsmrv/geo.hpp"

#include <cmath>

namespace fsmrv {

static constexpr double pi = 3.141592653589793238462643383279502884;
static double rad(double deg) { return deg * pi / 180.0; }

double haversine_m(double lat1, double lon1, double lat2, double lon2) {
    double dlat = rad(lat2 - lat1);
    double dlon = rad(lon2 - lon1);
    double a = std::sin(dlat / 2) * std::sin(dlat / 2) +
               std::cos(rad(lat1)) * std::cos(rad(lat2)) * std::sin(dlon / 2) * std::sin(dlon / 2);
    double c = 2 * std::atan2(std::sqrt(a), std::sqrt(1 - a));
    return earth_radius_m * c;
}

double initial_bearing_deg(double lat1, double lon1, double lat2, double lon2) {
    double phi1 = rad(lat1), phi2 = rad(lat2), dl = rad(lon2 - lon1);
    double y = std::sin(dl) * std::cos(phi2);
    double x = std::cos(phi1) * std::sin(phi2) - std::sin(phi1) * std::cos(phi2) * std::cos(dl);
    double deg = std::atan2(y, x) * 180.0 / pi;
    if (deg < 0) deg += 360.0;
    if (deg >= 360.0) deg -= 360.0;
    return deg;
}

std::string compass_dir(double lat, double lon, double ref_lat, double ref_lon, double eps_m) {
    if (haversine_m(ref_lat, ref_lon, lat, lon) < eps_m) return "C";
    double b = initial_bearing_deg(ref_lat, ref_lon, lat, lon);
    static const char* names[8] = {"N", "NE", "E", "SE", "S", "SW", "W", "NW"};
    int idx = int(std::floor(std::fmod(b + 22.5, 360.0) / 45.0));
    if (idx < 0) idx = 0;
    if (idx > 7) idx = 7;
    return names[idx];
}

}  // namespace fsmrv
