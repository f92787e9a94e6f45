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

#include "mapinfer/geo.h"

#include <algorithm>
#include <cmath>

#include "mapinfer/error.h"

namespace mapinfer {
namespace {

constexpr int kVincentyMaxIterations = 100;
constexpr double kVincentyTolerance = 1e-12;

}  // namespace

bool IsValid(const LatLon& p) {
  return std::isfinite(p.lat) && std::isfinite(p.lon) && p.lat >= -90.0 &&
         p.lat <= 90.0 && p.lon >= -180.0 && p.lon <= 180.0;
}

double VincentyDistance(const LatLon& a, const LatLon& b) {
  if (a == b) return 0.0;

  const double f = kWgs84F;
  const double L = DegToRad(b.lon - a.lon);
  const double u1 = std::atan((1.0 - f) * std::tan(DegToRad(a.lat)));
  const double u2 = std::atan((1.0 - f) * std::tan(DegToRad(b.lat)));
  const double sin_u1 = std::sin(u1), cos_u1 = std::cos(u1);
  const double sin_u2 = std::sin(u2), cos_u2 = std::cos(u2);

  double lambda = L;
  double sin_sigma = 0.0, cos_sigma = 0.0, sigma = 0.0;
  double cos_sq_alpha = 0.0, cos_2sigma_m = 0.0;
  bool converged = false;
  for (int i = 0; i < kVincentyMaxIterations; ++i) {
    const double sin_lambda = std::sin(lambda);
    const double cos_lambda = std::cos(lambda);
    const double t1 = cos_u2 * sin_lambda;
    const double t2 = cos_u1 * sin_u2 - sin_u1 * cos_u2 * cos_lambda;
    sin_sigma = std::sqrt(t1 * t1 + t2 * t2);
    if (sin_sigma == 0.0) return 0.0;  // coincident after rounding
    cos_sigma = sin_u1 * sin_u2 + cos_u1 * cos_u2 * cos_lambda;
    sigma = std::atan2(sin_sigma, cos_sigma);
    const double sin_alpha = cos_u1 * cos_u2 * sin_lambda / sin_sigma;
    cos_sq_alpha = 1.0 - sin_alpha * sin_alpha;
    // Equatorial lines have cos_sq_alpha == 0.
    cos_2sigma_m =
        cos_sq_alpha != 0.0 ? cos_sigma - 2.0 * sin_u1 * sin_u2 / cos_sq_alpha
                            : 0.0;
    const double C = f / 16.0 * cos_sq_alpha * (4.0 + f * (4.0 - 3.0 * cos_sq_alpha));
    const double lambda_prev = lambda;
    lambda = L + (1.0 - C) * f * sin_alpha *
                     (sigma + C * sin_sigma *
                                  (cos_2sigma_m +
                                   C * cos_sigma *
                                       (-1.0 + 2.0 * cos_2sigma_m * cos_2sigma_m)));
    if (std::abs(lambda - lambda_prev) < kVincentyTolerance) {
      converged = true;
      break;
    }
  }
  if (!converged || !std::isfinite(lambda)) return GreatCircleDistance(a, b);

  const double a2 = kWgs84A * kWgs84A;
  const double b2 = kWgs84B * kWgs84B;
  const double u_sq = cos_sq_alpha * (a2 - b2) / b2;
  const double A =
      1.0 + u_sq / 16384.0 * (4096.0 + u_sq * (-768.0 + u_sq * (320.0 - 175.0 * u_sq)));
  const double B = u_sq / 1024.0 * (256.0 + u_sq * (-128.0 + u_sq * (74.0 - 47.0 * u_sq)));
  const double delta_sigma =
      B * sin_sigma *
      (cos_2sigma_m +
       B / 4.0 *
           (cos_sigma * (-1.0 + 2.0 * cos_2sigma_m * cos_2sigma_m) -
            B / 6.0 * cos_2sigma_m * (-3.0 + 4.0 * sin_sigma * sin_sigma) *
                (-3.0 + 4.0 * cos_2sigma_m * cos_2sigma_m)));
  return kWgs84B * A * (sigma - delta_sigma);
}

double GreatCircleDistance(const LatLon& a, const LatLon& b) {
  const double phi1 = DegToRad(a.lat), phi2 = DegToRad(b.lat);
  const double dphi = phi2 - phi1;
  const double dlambda = DegToRad(b.lon - a.lon);
  const double s1 = std::sin(dphi / 2.0), s2 = std::sin(dlambda / 2.0);
  const double h = s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2;
  return 2.0 * kMeanEarthRadius * std::asin(std::min(1.0, std::sqrt(h)));
}

double AngleDistance(Heading a, Heading b) {
  const double d = std::abs(a.degrees() - b.degrees());
  return std::min(d, 360.0 - d);
}

double CombinedDistance(const OrientedPoint& p, const OrientedPoint& q,
                        double theta) {
  const double v = VincentyDistance(p.location, q.location);
  const double ang = theta * AngleDistance(p.heading, q.heading) / 180.0;
  return std::sqrt(v * v + ang * ang);
}

CircularMeanResult CircularMean(std::span<const Heading> headings) {
  if (headings.empty()) {
    throw InvalidArgumentError("circular mean of an empty heading set");
  }
  double sum_sin = 0.0, sum_cos = 0.0;
  for (Heading h : headings) {
    const double r = DegToRad(h.degrees());
    sum_sin += std::sin(r);
    sum_cos += std::cos(r);
  }
  const double n = static_cast<double>(headings.size());
  const double mean_sin = sum_sin / n, mean_cos = sum_cos / n;
  if (std::abs(mean_sin) < 1e-12 && std::abs(mean_cos) < 1e-12) {
    return {headings.front(), true};
  }
  return {Heading(RadToDeg(std::atan2(mean_sin, mean_cos))), false};
}

double HeadingVariability(std::span<const Heading> headings, Heading mean) {
  if (headings.empty()) {
    throw InvalidArgumentError("heading variability of an empty heading set");
  }
  double total = 0.0;
  for (Heading h : headings) total += AngleDistance(h, mean);
  return total / static_cast<double>(headings.size());
}

Heading InitialBearing(const LatLon& a, const LatLon& b) {
  if (a == b) throw InvalidArgumentError("undefined bearing: points coincide");
  const double phi1 = DegToRad(a.lat), phi2 = DegToRad(b.lat);
  const double dlambda = DegToRad(b.lon - a.lon);
  const double y = std::sin(dlambda) * std::cos(phi2);
  const double x = std::cos(phi1) * std::sin(phi2) -
                   std::sin(phi1) * std::cos(phi2) * std::cos(dlambda);
  return Heading(RadToDeg(std::atan2(y, x)));
}

LatLon Interpolate(const LatLon& a, const LatLon& b, double t) {
  return {a.lat + (b.lat - a.lat) * t, a.lon + (b.lon - a.lon) * t};
}

double MetersPerDegreeLat(double lat) {
  // Meridional radius of curvature M = a(1-e^2) / (1 - e^2 sin^2 phi)^1.5.
  const double e2 = kWgs84F * (2.0 - kWgs84F);
  const double s = std::sin(DegToRad(lat));
  const double w = 1.0 - e2 * s * s;
  return DegToRad(kWgs84A * (1.0 - e2) / (w * std::sqrt(w)));
}

double MetersPerDegreeLon(double lat) {
  // Prime-vertical radius N = a / sqrt(1 - e^2 sin^2 phi), scaled by cos phi.
  const double e2 = kWgs84F * (2.0 - kWgs84F);
  const double phi = DegToRad(lat);
  const double s = std::sin(phi);
  return DegToRad(kWgs84A / std::sqrt(1.0 - e2 * s * s) * std::cos(phi));
}

EastNorth ToEastNorth(const LatLon& origin, const LatLon& p) {
  return {(p.lon - origin.lon) * MetersPerDegreeLon(origin.lat),
          (p.lat - origin.lat) * MetersPerDegreeLat(origin.lat)};
}

LatLon FromEastNorth(const LatLon& origin, const EastNorth& offset) {
  return {origin.lat + offset.north / MetersPerDegreeLat(origin.lat),
          origin.lon + offset.east / MetersPerDegreeLon(origin.lat)};
}

}  // namespace mapinfer
