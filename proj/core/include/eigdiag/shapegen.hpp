#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "eigdiag/geomkit.hpp"

namespace eigdiag {

/// Reproducible random stream.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The conversions on top of it are spelled out here (the standard
/// distributions are not portable across library implementations):
///   uniform01()         = (next() >> 11) * 2^-53, a double in [0, 1)
///   uniform_int(lo, hi) = lo + Lemire-style rejection on next() % span
///   shuffle             = Fisher-Yates, i from size-1 down to 1, swap(i, uniform_int(0, i))
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  bool coin() { return (next() >> 63) != 0; }
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  template <class Vec>
  void shuffle(Vec& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(i - 1)));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer applied to master + (index + 1) * 0x9E3779B97F4A7C15.
/// Gives every sample its own stream so parallel runs are order independent.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

/// Uniformly random convex n-gon inside [0, 1]^2 (Valtr's construction).
ConvexPolygon valtr_random(int n, std::uint64_t seed);

struct ConvexityStats {
  int n = 0;
  double p_n = 0.0;
  double expected_iterations = 0.0;
  std::string p_n_exact;  // reduced fraction "num/den"
};

/// Probability that n uniform points in a square are in convex position,
/// p_n = (C(2n-2, n-1) / n!)^2, evaluated exactly.
ConvexityStats convexity_probability(int n);

/// Regular n-gon with the given area, centered at the origin, first vertex on
/// the positive x axis (so n = 4 is the square rotated by 45 degrees).
ConvexPolygon regular_ngon(int n, double area);

/// Unit-area rectangle with side ratio aspect >= 1, long side along x,
/// centered at the origin.
ConvexPolygon rectangle(double aspect);

/// Unit-area isosceles triangle with the given apex angle, base on the x axis
/// and apex above it, centroid at the origin.
ConvexPolygon isosceles_triangle(double apex_angle);

/// Unit-area rhombus with diagonals on the axes: vertices (+-d/2, 0), (0, +-1/d).
ConvexPolygon rhombus(double d);

/// n-gon inscribed in the ellipse ((1 + eps) cos t, sin t) at uniform t.
ConvexPolygon ellipse_polygon(double eps, int n);

/// Two discs joined by a horizontal channel: the unit disc at the origin and
/// a disc of radius eps centered at (1 + channel_length + eps, 0).
struct DumbbellSpec {
  double eps = 0.5;
  double channel_height = 0.125;
  double channel_length = 0.5;
  int arc_points = 64;
};

SimplePolygon dumbbell(const DumbbellSpec& spec);

}  // namespace eigdiag
