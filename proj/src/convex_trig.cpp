#include "finsler_iso/convex_trig.hpp"

#include "finsler_iso/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fiso {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double angle_of(Vec2 v) {
  double a = std::atan2(v.y, v.x);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a -= kTwoPi;
  return a;
}

}  // namespace

TrigTable TrigTable::build(const ConvexBody& body, int resolution) {
  TrigTable table(body);
  if (body.is_polygon()) {
    table.exactness_ = TrigExactness::exact_piecewise_linear;
    const auto verts = body.vertices();
    const std::size_t n = verts.size();
    // Edge k from a vertex with y <= 0 to one with y > 0 holds the x-axis point.
    std::size_t k = 0;
    for (; k < n; ++k) {
      const Vec2 a = verts[k];
      const Vec2 b = verts[(k + 1) % n];
      if (a.y <= 0.0 && b.y > 0.0 && (a.x > 0.0 || b.x > 0.0)) break;
    }
    std::vector<Vec2> ring;
    ring.reserve(n + 1);
    const Vec2 a = verts[k];
    if (a.y == 0.0) {
      for (std::size_t i = 0; i < n; ++i) ring.push_back(verts[(k + i) % n]);
    } else {
      ring.push_back({1.0 / gauge(body, {1.0, 0.0}), 0.0});
      for (std::size_t i = 1; i <= n; ++i) ring.push_back(verts[(k + i) % n]);
    }
    double theta = 0.0;
    for (std::size_t i = 0; i < ring.size(); ++i) {
      table.samples_.push_back({theta, ring[i]});
      table.angles_.push_back(i == 0 ? 0.0 : angle_of(ring[i]));
      theta += cross(ring[i], ring[(i + 1) % ring.size()]);
    }
    table.period_ = theta;
    return table;
  }

  if (resolution < kMinResolution) {
    throw TrigError("ResolutionTooLow: p-ball tables need resolution >= " +
                    std::to_string(kMinResolution));
  }
  table.exactness_ = TrigExactness::interpolated;
  const int per_quadrant = (resolution + 3) / 4;
  // Cosine grading clusters samples at the four axis points.
  std::vector<double> phis;
  phis.reserve(static_cast<std::size_t>(4 * per_quadrant));
  for (int quadrant = 0; quadrant < 4; ++quadrant) {
    for (int j = 0; j < per_quadrant; ++j) {
      const double u = static_cast<double>(j) / per_quadrant;
      phis.push_back(quadrant * std::numbers::pi / 2.0 +
                     std::numbers::pi / 4.0 * (1.0 - std::cos(std::numbers::pi * u)));
    }
  }
  double theta = 0.0;
  for (std::size_t i = 0; i < phis.size(); ++i) {
    const double phi = phis[i];
    const double rho = radial(body, phi);
    const Vec2 point = i == 0 ? Vec2{rho, 0.0} : Vec2{rho * std::cos(phi), rho * std::sin(phi)};
    table.samples_.push_back({theta, point});
    table.angles_.push_back(phi);
    const double next = i + 1 < phis.size() ? phis[i + 1] : kTwoPi;
    theta += table.sector_integral(phi, next);
  }
  table.period_ = theta;
  return table;
}

double TrigTable::sector_integral(double phi_from, double phi_to) const {
  return num::gauss_legendre(
      [this](double phi) {
        const double rho = radial(body_, phi);
        return rho * rho;
      },
      phi_from, phi_to);
}

std::vector<double> TrigTable::breakpoints() const {
  std::vector<double> out;
  out.reserve(samples_.size());
  for (const auto& s : samples_) out.push_back(s.theta);
  return out;
}

double TrigTable::reduce(double theta, long* turns) const {
  const double k = std::floor(theta / period_);
  double r = theta - k * period_;
  long whole = static_cast<long>(k);
  if (r >= period_) {
    r -= period_;
    ++whole;
  }
  if (r < 0.0) {
    r += period_;
    --whole;
  }
  if (turns) *turns = whole;
  return r;
}

std::size_t TrigTable::piece_of(double reduced_theta) const {
  auto it = std::upper_bound(samples_.begin(), samples_.end(), reduced_theta,
                             [](double t, const TrigSample& s) { return t < s.theta; });
  if (it == samples_.begin()) return 0;
  return static_cast<std::size_t>(std::distance(samples_.begin(), it)) - 1;
}

double TrigTable::polish_phi(std::size_t piece, double theta) const {
  const std::size_t n = samples_.size();
  const double t0 = samples_[piece].theta;
  const double t1 = piece + 1 < n ? samples_[piece + 1].theta : period_;
  const double p0 = angles_[piece];
  const double p1 = piece + 1 < n ? angles_[piece + 1] : kTwoPi;

  // Cubic Hermite guess for phi(theta) with exact slopes 1 / rho^2.
  const double h = t1 - t0;
  const double s = (theta - t0) / h;
  const double r0 = radial(body_, p0);
  const double r1 = radial(body_, p1);
  const double d0 = h / (r0 * r0);
  const double d1 = h / (r1 * r1);
  const double s2 = s * s;
  const double s3 = s2 * s;
  double phi = (2 * s3 - 3 * s2 + 1) * p0 + (s3 - 2 * s2 + s) * d0 + (-2 * s3 + 3 * s2) * p1 +
               (s3 - s2) * d1;
  phi = std::clamp(phi, p0, p1);

  // Safeguarded Newton on theta(phi) - theta.
  double lo = p0;
  double hi = p1;
  for (int iter = 0; iter < 60; ++iter) {
    const double f = t0 + sector_integral(p0, phi) - theta;
    if (f == 0.0) return phi;
    if (f > 0.0) {
      hi = phi;
    } else {
      lo = phi;
    }
    const double rho = radial(body_, phi);
    double next = phi - f / (rho * rho);
    if (!(next >= lo && next <= hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - phi) <= 4e-16 * (1.0 + std::abs(phi)) || hi - lo <= 1e-15) {
      return next;
    }
    phi = next;
  }
  return phi;
}

Vec2 TrigTable::eval(double theta) const {
  const double r = reduce(theta);
  const std::size_t i = piece_of(r);
  if (exactness_ == TrigExactness::exact_piecewise_linear) {
    const std::size_t n = samples_.size();
    const TrigSample& a = samples_[i];
    const Vec2 b = samples_[(i + 1) % n].point;
    const double t1 = i + 1 < n ? samples_[i + 1].theta : period_;
    const double s = (r - a.theta) / (t1 - a.theta);
    return a.point + (b - a.point) * s;
  }
  if (r == samples_[i].theta) return samples_[i].point;
  const double phi = polish_phi(i, r);
  const double rho = radial(body_, phi);
  return {rho * std::cos(phi), rho * std::sin(phi)};
}

double TrigTable::theta_of_direction(Vec2 v) const {
  const double a = angle_of(v);
  auto it = std::upper_bound(angles_.begin(), angles_.end(), a);
  const std::size_t i =
      it == angles_.begin() ? 0 : static_cast<std::size_t>(std::distance(angles_.begin(), it)) - 1;
  double theta = 0.0;
  if (exactness_ == TrigExactness::exact_piecewise_linear) {
    // Intersect the ray with the edge from sample i to sample i + 1.
    const Vec2 p = samples_[i].point;
    const Vec2 q = samples_[(i + 1) % samples_.size()].point;
    const Vec2 e = q - p;
    const double t = cross(p, v) / cross(v, e);
    const Vec2 b = p + e * std::clamp(t, 0.0, 1.0);
    theta = samples_[i].theta + cross(p, b);
  } else {
    theta = samples_[i].theta + sector_integral(angles_[i], a);
  }
  if (theta >= period_) theta -= period_;
  return theta;
}

TrigTable TrigTable::with_displaced_sample(std::size_t index, Vec2 offset) const {
  TrigTable copy = *this;
  copy.samples_.at(index).point = copy.samples_.at(index).point + offset;
  return copy;
}

Correspondence::Correspondence(std::shared_ptr<const TrigTable> primal,
                               std::shared_ptr<const TrigTable> polar)
    : primal_(std::move(primal)), polar_(std::move(polar)) {
  if (polar_->exactness() != TrigExactness::exact_piecewise_linear) return;
  const auto ps = polar_->samples();
  const auto qs = primal_->samples();
  const std::size_t n = ps.size();
  piece_theta_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 mid = (ps[i].point + ps[(i + 1) % n].point) * 0.5;
    std::size_t best = 0;
    for (std::size_t j = 1; j < qs.size(); ++j) {
      if (dot(qs[j].point, mid) > dot(qs[best].point, mid)) best = j;
    }
    double t = qs[best].theta;
    if (!piece_theta_.empty()) {
      while (t < piece_theta_.back()) t += primal_->period();
    }
    piece_theta_.push_back(t);
  }
}

double Correspondence::theta(double theta_polar) const {
  long turns = 0;
  const double r = polar_->reduce(theta_polar, &turns);
  const double shift = static_cast<double>(turns) * primal_->period();
  if (!piece_theta_.empty()) {
    const std::size_t i = polar_->piece_of(r);
    if (r == polar_->samples()[i].theta) {
      const double before =
          i == 0 ? piece_theta_.back() - primal_->period() : piece_theta_[i - 1];
      return 0.5 * (before + piece_theta_[i]) + shift;
    }
    return piece_theta_[i] + shift;
  }
  const Vec2 v = support_point(primal_->body(), polar_->eval(r));
  const double t = primal_->theta_of_direction(v);
  // Unwrap against the proportional guess; both maps start at theta = 0.
  const double guess = r * primal_->period() / polar_->period();
  const double k = std::round((guess - t) / primal_->period());
  return t + k * primal_->period() + shift;
}

Vec2 Correspondence::dual_point(double theta_polar) const {
  if (!piece_theta_.empty()) return primal_->eval(theta(theta_polar));
  return support_point(primal_->body(), polar_->eval(theta_polar));
}

double Correspondence::identity_residual(double theta_polar) const {
  const Vec2 w = polar_->eval(theta_polar);
  const Vec2 v = primal_->eval(theta(theta_polar));
  return std::abs(dot(v, w) - 1.0);
}

std::vector<double> regularity_breaks(const TrigTable& table) {
  if (table.exactness() == TrigExactness::exact_piecewise_linear) return table.breakpoints();
  if (table.body().exponent() == 2.0) return {};
  return {0.0, table.theta_of_direction({0.0, 1.0}), table.theta_of_direction({-1.0, 0.0}),
          table.theta_of_direction({0.0, -1.0})};
}

double derivative_residual(const Correspondence& corr, double theta_polar, double h) {
  const Vec2 fwd = corr.polar().eval(theta_polar + h);
  const Vec2 bwd = corr.polar().eval(theta_polar - h);
  const Vec2 slope = (fwd - bwd) / (2.0 * h);
  const Vec2 v = corr.primal().eval(corr.theta(theta_polar));
  return std::max(std::abs(slope.x + v.y), std::abs(slope.y - v.x));
}

}  // namespace fiso
