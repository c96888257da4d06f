#include "greenmeta/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "greenmeta/error.hpp"

namespace greenmeta {

double relative_savings(const EnergyMeasurement& reference, const EnergyMeasurement& test) {
  if (!(reference.energy > 0.0)) {
    throw Error(ErrorCode::NonPositiveReference,
                "reference '" + reference.label + "' energy must be positive");
  }
  if (!(test.energy > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "test '" + test.label + "' energy must be positive");
  }
  return 100.0 * (1.0 - test.energy / reference.energy);
}

AkimaSpline::AkimaSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n != y_.size()) throw Error(ErrorCode::InvalidArgument, "knot x and y differ in length");
  if (n < 2) throw Error(ErrorCode::TooFewKnots, "Akima interpolation needs at least 2 knots");
  for (std::size_t i = 1; i < n; ++i) {
    if (!(x_[i] > x_[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, "knot abscissae must be strictly increasing");
    }
  }

  // d[k + 2] = slope of segment k; two ghost slopes on each side.
  std::vector<double> d(n + 3);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    d[k + 2] = (y_[k + 1] - y_[k]) / (x_[k + 1] - x_[k]);
  }
  if (n == 2) {
    std::fill(d.begin(), d.end(), d[2]);
  } else {
    d[1] = 2.0 * d[2] - d[3];
    d[0] = 2.0 * d[1] - d[2];
    d[n + 1] = 2.0 * d[n] - d[n - 1];
    d[n + 2] = 2.0 * d[n + 1] - d[n];
  }

  t_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double w_left = std::abs(d[i + 3] - d[i + 2]);
    const double w_right = std::abs(d[i + 1] - d[i]);
    const double den = w_left + w_right;
    t_[i] = den == 0.0 ? 0.5 * (d[i + 1] + d[i + 2]) : (w_left * d[i + 1] + w_right * d[i + 2]) / den;
  }
}

std::size_t AkimaSpline::segment(double xq) const {
  if (!(xq >= x_.front() && xq <= x_.back())) {
    throw Error(ErrorCode::OutOfDomain, "query " + std::to_string(xq) + " outside [" +
                                            std::to_string(x_.front()) + ", " +
                                            std::to_string(x_.back()) + "]");
  }
  const auto it = std::upper_bound(x_.begin(), x_.end(), xq);
  const auto idx = static_cast<std::size_t>(it - x_.begin());
  return std::min(idx == 0 ? 0 : idx - 1, x_.size() - 2);
}

double AkimaSpline::operator()(double xq) const {
  const std::size_t i = segment(xq);
  if (xq == x_[i]) return y_[i];
  if (xq == x_[i + 1]) return y_[i + 1];
  const double h = x_[i + 1] - x_[i];
  const double s = (xq - x_[i]) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * y_[i] + (s3 - 2 * s2 + s) * h * t_[i] +
         (-2 * s3 + 3 * s2) * y_[i + 1] + (s3 - s2) * h * t_[i + 1];
}

double AkimaSpline::derivative(double xq) const {
  const std::size_t i = segment(xq);
  const double h = x_[i + 1] - x_[i];
  const double s = (xq - x_[i]) / h;
  const double s2 = s * s;
  return (6 * s2 - 6 * s) * y_[i] / h + (3 * s2 - 4 * s + 1) * t_[i] +
         (-6 * s2 + 6 * s) * y_[i + 1] / h + (3 * s2 - 2 * s) * t_[i + 1];
}

double akima_interpolate(std::span<const std::pair<double, double>> knots, double x_query) {
  std::vector<double> x;
  std::vector<double> y;
  x.reserve(knots.size());
  y.reserve(knots.size());
  for (const auto& [kx, ky] : knots) {
    x.push_back(kx);
    y.push_back(ky);
  }
  return AkimaSpline(std::move(x), std::move(y))(x_query);
}

RdCurve::RdCurve(std::vector<RdPoint> points) : points_(std::move(points)) {
  if (points_.size() < 2) throw Error(ErrorCode::MalformedCurve, "RD curve needs at least 2 points");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!(points_[i].rate > 0.0) || !std::isfinite(points_[i].rate)) {
      throw Error(ErrorCode::MalformedCurve, "RD curve rates must be positive");
    }
    if (!std::isfinite(points_[i].quality)) {
      throw Error(ErrorCode::MalformedCurve, "RD curve quality must be finite");
    }
    if (i > 0 && !(points_[i].quality > points_[i - 1].quality)) {
      throw Error(ErrorCode::MalformedCurve, "RD curve quality must be strictly increasing");
    }
  }
}

namespace {

AkimaSpline log_rate_over_quality(const RdCurve& c) {
  std::vector<double> q;
  std::vector<double> lr;
  for (const auto& p : c.points()) {
    q.push_back(p.quality);
    lr.push_back(std::log10(p.rate));
  }
  return AkimaSpline(std::move(q), std::move(lr));
}

}  // namespace

std::optional<double> bd_rate(const RdCurve& reference, const RdCurve& test) {
  const double lo = std::max(reference.min_quality(), test.min_quality());
  const double hi = std::min(reference.max_quality(), test.max_quality());
  if (!(hi > lo)) return std::nullopt;

  const AkimaSpline ref = log_rate_over_quality(reference);
  const AkimaSpline tst = log_rate_over_quality(test);

  const double h = (hi - lo) / kBdRateIntervals;
  double integral = 0.0;
  for (int k = 0; k <= kBdRateIntervals; ++k) {
    const double q = k == kBdRateIntervals ? hi : lo + k * h;
    const double diff = tst(q) - ref(q);
    integral += (k == 0 || k == kBdRateIntervals) ? 0.5 * diff : diff;
  }
  const double mean_diff = integral * h / (hi - lo);
  return 100.0 * (std::pow(10.0, mean_diff) - 1.0);
}

}  // namespace greenmeta
