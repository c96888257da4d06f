#pragma once

// Measurement analytics: relative energy savings, Akima interpolation and
// Bjontegaard-delta rate.

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace greenmeta {

struct EnergyMeasurement {
  std::string label;
  double energy = 0.0;  // joules, > 0
};

/// 100 * (1 - test / reference); positive means the test run used less energy.
double relative_savings(const EnergyMeasurement& reference, const EnergyMeasurement& test);

/// Original Akima piecewise-cubic interpolant. End slopes come from two ghost
/// segments on each side, extrapolated linearly in slope; with two knots the
/// interpolant is the straight line through them.
class AkimaSpline {
public:
  /// Throws TooFewKnots (< 2) or InvalidArgument (x not strictly increasing).
  AkimaSpline(std::vector<double> x, std::vector<double> y);

  /// Throws OutOfDomain outside [x.front(), x.back()].
  double operator()(double xq) const;
  double derivative(double xq) const;

  double x_min() const { return x_.front(); }
  double x_max() const { return x_.back(); }
  const std::vector<double>& knot_slopes() const { return t_; }

private:
  std::size_t segment(double xq) const;

  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> t_;
};

double akima_interpolate(std::span<const std::pair<double, double>> knots, double x_query);

struct RdPoint {
  double rate = 0.0;
  double quality = 0.0;  // PSNR, dB
};

class RdCurve {
public:
  /// Throws MalformedCurve unless there are >= 2 points, all rates are
  /// positive and quality is strictly increasing.
  explicit RdCurve(std::vector<RdPoint> points);

  const std::vector<RdPoint>& points() const { return points_; }
  double min_quality() const { return points_.front().quality; }
  double max_quality() const { return points_.back().quality; }

private:
  std::vector<RdPoint> points_;
};

inline constexpr int kBdRateIntervals = 4096;

/// Average rate difference of `test` against `reference` at equal quality, in
/// percent. log10(rate) is Akima-interpolated over quality on each curve and
/// the difference is integrated with the trapezoidal rule over the common
/// quality span. Empty (or single-point) overlap gives nullopt.
std::optional<double> bd_rate(const RdCurve& reference, const RdCurve& test);

}  // namespace greenmeta
