#include "eigdiag/shapegen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace eigdiag {

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw Error(ErrorCode::InvalidParam, "uniform_int: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1u;
  if (span == 0) return static_cast<std::int64_t>(next());  // full 64-bit range
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = kMax - kMax % span;
  std::uint64_t r = next();
  while (r >= limit) r = next();
  return lo + static_cast<std::int64_t>(r % span);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  std::uint64_t z = master + (index + 1u) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

namespace {

struct AxisSteps {
  std::vector<double> steps;  // sum to zero
  double lo = 0.0;            // smallest sample
};

// The sorted samples are split at random into two monotone chains running
// from the minimum to the maximum; the chain increments become the steps.
AxisSteps axis_steps(Rng& rng, int n) {
  std::vector<double> pool(static_cast<std::size_t>(n));
  for (double& v : pool) v = rng.uniform01();
  std::sort(pool.begin(), pool.end());
  const double lo = pool.front(), hi = pool.back();
  AxisSteps out{{}, lo};
  out.steps.reserve(pool.size());
  double last_a = lo, last_b = lo;
  for (std::size_t i = 1; i + 1 < pool.size(); ++i) {
    const double v = pool[i];
    if (rng.coin()) {
      out.steps.push_back(v - last_a);
      last_a = v;
    } else {
      out.steps.push_back(last_b - v);
      last_b = v;
    }
  }
  out.steps.push_back(hi - last_a);
  out.steps.push_back(last_b - hi);
  return out;
}

std::vector<Point2> valtr_draw(Rng& rng, int n) {
  const AxisSteps ax = axis_steps(rng, n);
  AxisSteps ay = axis_steps(rng, n);
  rng.shuffle(ay.steps);

  std::vector<Point2> vec(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < vec.size(); ++i) vec[i] = {ax.steps[i], ay.steps[i]};
  std::stable_sort(vec.begin(), vec.end(),
                   [](Point2 a, Point2 b) { return std::atan2(a.y, a.x) < std::atan2(b.y, b.x); });

  std::vector<Point2> pts;
  pts.reserve(vec.size());
  Point2 cur{};
  Point2 mn{};
  for (Point2 v : vec) {
    pts.push_back(cur);
    mn.x = std::min(mn.x, cur.x);
    mn.y = std::min(mn.y, cur.y);
    cur = cur + v;
  }
  // the polygon's extent along each axis is (max - min) of that axis' samples,
  // so placing its lower-left corner on the sample minima keeps it in [0,1]^2
  const Point2 shift{ax.lo - mn.x, ay.lo - mn.y};
  for (Point2& p : pts) p = p + shift;
  return pts;
}

}  // namespace

ConvexPolygon valtr_random(int n, std::uint64_t seed) {
  if (n < 3 || n > 1000) throw Error(ErrorCode::InvalidParam, "valtr_random: n must lie in [3, 1000]");
  Rng rng(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<Point2> pts = valtr_draw(rng, n);
    if (is_strictly_convex(pts)) return ConvexPolygon(std::move(pts));
    // a zero step or two parallel steps (probability zero); redraw from the
    // continuing stream so the result stays a function of the seed
  }
  throw Error(ErrorCode::InvalidParam, "valtr_random: could not draw a strictly convex polygon");
}

ConvexityStats convexity_probability(int n) {
  if (n < 3 || n > 60) throw Error(ErrorCode::InvalidParam, "convexity_probability: n must lie in [3, 60]");
  using boost::multiprecision::cpp_int;
  using boost::multiprecision::cpp_rational;
  cpp_int binom = 1;  // C(2n-2, n-1)
  const int m = n - 1;
  for (int k = 1; k <= m; ++k) binom = binom * (m + k) / k;
  cpp_int fact = 1;
  for (int k = 2; k <= n; ++k) fact *= k;
  const cpp_rational ratio(binom, fact);
  const cpp_rational p = ratio * ratio;
  ConvexityStats s;
  s.n = n;
  s.p_n = static_cast<double>(p);
  s.expected_iterations = static_cast<double>(cpp_rational(1) / p);
  s.p_n_exact = boost::multiprecision::numerator(p).str() + "/" +
                boost::multiprecision::denominator(p).str();
  return s;
}

ConvexPolygon regular_ngon(int n, double area) {
  if (n < 3) throw Error(ErrorCode::InvalidParam, "regular_ngon: n must be >= 3");
  if (!(area > 0.0) || !std::isfinite(area)) throw Error(ErrorCode::InvalidParam, "regular_ngon: area must be positive");
  const double t = 2.0 * std::numbers::pi / n;
  // area = (n/2) R^2 sin(2 pi / n)
  const double radius = std::sqrt(2.0 * area / (n * std::sin(t)));
  std::vector<Point2> v(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) v[static_cast<std::size_t>(k)] = {radius * std::cos(k * t), radius * std::sin(k * t)};
  return ConvexPolygon(std::move(v));
}

ConvexPolygon rectangle(double aspect) {
  if (!(aspect >= 1.0) || !std::isfinite(aspect)) throw Error(ErrorCode::InvalidParam, "rectangle: aspect must be >= 1");
  const double a = 0.5 * std::sqrt(aspect), b = 0.5 / std::sqrt(aspect);
  return ConvexPolygon({{-a, -b}, {a, -b}, {a, b}, {-a, b}});
}

ConvexPolygon isosceles_triangle(double apex_angle) {
  if (!(apex_angle > 0.0 && apex_angle < std::numbers::pi))
    throw Error(ErrorCode::InvalidParam, "isosceles_triangle: apex angle must lie in (0, pi)");
  // half-base tan(apex/2) for unit height, then scale to unit area
  const double half_base = std::tan(0.5 * apex_angle);
  const double s = 1.0 / std::sqrt(half_base);  // area = half_base * height^2
  const double hb = s * half_base;
  const double h = s;
  return ConvexPolygon({{-hb, -h / 3.0}, {hb, -h / 3.0}, {0.0, 2.0 * h / 3.0}});
}

ConvexPolygon rhombus(double d) {
  if (!(d >= std::sqrt(2.0)) || !std::isfinite(d))
    throw Error(ErrorCode::InvalidParam, "rhombus: diameter must be >= sqrt(2) for a unit-area rhombus");
  const double a = 0.5 * d, b = 1.0 / d;
  return ConvexPolygon({{a, 0.0}, {0.0, b}, {-a, 0.0}, {0.0, -b}});
}

ConvexPolygon ellipse_polygon(double eps, int n) {
  if (n < 32) throw Error(ErrorCode::InvalidParam, "ellipse_polygon: n must be >= 32");
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw Error(ErrorCode::InvalidParam, "ellipse_polygon: eps must be >= 0");
  const double t = 2.0 * std::numbers::pi / n;
  std::vector<Point2> v(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k)
    v[static_cast<std::size_t>(k)] = {(1.0 + eps) * std::cos(k * t), std::sin(k * t)};
  return ConvexPolygon(std::move(v));
}

SimplePolygon dumbbell(const DumbbellSpec& spec) {
  const double eps = spec.eps, h = spec.channel_height;
  if (!(eps > 0.0 && eps < 0.8)) throw Error(ErrorCode::InvalidParam, "dumbbell: eps must lie in (0, 0.8)");
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidParam, "dumbbell: channel height must be positive");
  if (!(h < 2.0 * eps)) throw Error(ErrorCode::InvalidParam, "dumbbell: channel does not attach (height >= 2 eps)");
  if (!(spec.channel_length > 0.0)) throw Error(ErrorCode::InvalidParam, "dumbbell: channel length must be positive");
  if (spec.arc_points < 16) throw Error(ErrorCode::InvalidParam, "dumbbell: arc_points must be >= 16");

  const double half = 0.5 * h;
  const double cx = 1.0 + spec.channel_length + eps;
  const double alpha = std::asin(half);        // big circle attachment angle
  const double beta = std::asin(half / eps);   // small circle, measured from pi
  const int m = spec.arc_points;
  const double pi = std::numbers::pi;

  std::vector<Point2> v;
  v.reserve(2 * static_cast<std::size_t>(m));
  // unit circle, upper attachment -> left -> lower attachment
  for (int k = 0; k < m; ++k) {
    const double th = alpha + (2.0 * pi - 2.0 * alpha) * k / (m - 1);
    v.push_back({std::cos(th), std::sin(th)});
  }
  v.back().y = -half;
  v.front().y = half;
  // bottom channel edge is implicit; small circle lower-left -> right -> upper-left
  for (int k = 0; k < m; ++k) {
    const double th = pi + beta + (2.0 * pi - 2.0 * beta) * k / (m - 1);
    v.push_back({cx + eps * std::cos(th), eps * std::sin(th)});
  }
  v[static_cast<std::size_t>(m)].y = -half;
  v.back().y = half;
  return SimplePolygon(std::move(v));
}

}  // namespace eigdiag
