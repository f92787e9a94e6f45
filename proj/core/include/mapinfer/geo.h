// Copyright 2026 The mapinfer Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MAPINFER_GEO_H_
#define MAPINFER_GEO_H_

#include <cmath>
#include <optional>
#include <span>

namespace mapinfer {

// Geographic position in degrees on the WGS-84 ellipsoid.
struct LatLon {
  double lat = 0.0;
  double lon = 0.0;

  friend bool operator==(const LatLon&, const LatLon&) = default;
};

bool IsValid(const LatLon& p);

// Direction of travel in degrees clockwise from north, always in [0, 360).
class Heading {
 public:
  constexpr Heading() = default;
  explicit Heading(double degrees) : degrees_(Normalize(degrees)) {}

  double degrees() const { return degrees_; }

  static double Normalize(double degrees) {
    double d = std::fmod(degrees, 360.0);
    if (d < 0.0) d += 360.0;
    // fmod of a tiny negative value can round up to exactly 360.
    if (d >= 360.0) d = 0.0;
    return d;
  }

  friend bool operator==(const Heading&, const Heading&) = default;

 private:
  double degrees_ = 0.0;
};

// One GPS fix. Heading and speed are optional because location-only feeds
// exist; ingest fills them in from neighbouring fixes.
struct GpsPoint {
  LatLon location;
  std::optional<Heading> heading;
  double timestamp = 0.0;  // seconds since epoch
  std::optional<double> speed_kmh;
};

// Location plus heading: the space the combined metric is defined on.
struct OrientedPoint {
  LatLon location;
  Heading heading;
};

// WGS-84 ellipsoid constants.
inline constexpr double kWgs84A = 6378137.0;
inline constexpr double kWgs84F = 1.0 / 298.257223563;
inline constexpr double kWgs84B = kWgs84A * (1.0 - kWgs84F);
inline constexpr double kMeanEarthRadius = 6371008.8;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double DegToRad(double d) { return d * kPi / 180.0; }
inline constexpr double RadToDeg(double r) { return r * 180.0 / kPi; }

// Inverse Vincenty on WGS-84. Falls back to the spherical great-circle
// distance when the iteration does not converge (near-antipodal points).
double VincentyDistance(const LatLon& a, const LatLon& b);

// Haversine distance on a sphere of mean Earth radius.
double GreatCircleDistance(const LatLon& a, const LatLon& b);

// Unit-circle metric: min(|a-b|, 360-|a-b|), in [0, 180].
double AngleDistance(Heading a, Heading b);

// sqrt(v(L1,L2)^2 + (theta * d(a1,a2) / 180)^2). Metres.
double CombinedDistance(const OrientedPoint& p, const OrientedPoint& q,
                        double theta);

struct CircularMeanResult {
  Heading mean;
  // True when the resultant vector vanished and `mean` is just the first
  // input heading.
  bool degenerate = false;
};

// atan2 of the mean sine and mean cosine. Requires a non-empty input.
CircularMeanResult CircularMean(std::span<const Heading> headings);

// Mean angular deviation of `headings` from `mean`, in [0, 180].
double HeadingVariability(std::span<const Heading> headings, Heading mean);

// Great-circle initial bearing from a to b. Throws InvalidArgument when the
// points coincide.
Heading InitialBearing(const LatLon& a, const LatLon& b);

// Linear interpolation in lat/lon; t in [0, 1].
LatLon Interpolate(const LatLon& a, const LatLon& b, double t);

// Local scale factors of the ellipsoid: metres per degree of latitude and of
// longitude at the given latitude.
double MetersPerDegreeLat(double lat);
double MetersPerDegreeLon(double lat);

// Flat east/north offset in metres of `p` relative to `origin`, using the
// local radii of curvature at the origin. Accurate for sub-10 km spans.
struct EastNorth {
  double east = 0.0;
  double north = 0.0;
};
EastNorth ToEastNorth(const LatLon& origin, const LatLon& p);
LatLon FromEastNorth(const LatLon& origin, const EastNorth& offset);

}  // namespace mapinfer

#endif  // MAPINFER_GEO_H_
