// SPDX-License-Identifier: Apache-2.0
//
// Great-circle helpers for derived attributes. Degrees in, meters/degrees out.

#pragma once

#include <string>

namespace fsmrv {

inline constexpr double earth_radius_m = 6371000.0;

// Haversine great-circle distance in meters.
double haversine_m(double lat1, double lon1, double lat2, double lon2);

// Initial bearing from (lat1, lon1) toward (lat2, lon2), degrees in [0, 360).
double initial_bearing_deg(double lat1, double lon1, double lat2, double lon2);

// 8-sector compass direction of (lat, lon) as seen from (ref_lat, ref_lon):
// sectors are 45 degrees wide and centered on N/NE/E/SE/S/SW/W/NW (bearing in
// [-22.5, 22.5) is N). Returns "C" when the distance is below eps_m.
std::string compass_dir(double lat, double lon, double ref_lat, double ref_lon, double eps_m);

}  // namespace fsmrv
