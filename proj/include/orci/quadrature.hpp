#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <span>
#include <vector>

namespace orci {

struct QuadratureResult {
  double value = 0.0;
  double error_bound = 0.0;
  int segments = 0;
  bool converged = false;
};

namespace detail {

// 15-point Kronrod rule with embedded 7-point Gauss rule on [-1,1].
// Positive abscissae in decreasing order; index 7 is the midpoint.
inline constexpr double kGk15Nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};

inline constexpr double kGk15Weights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};

// Gauss weights for nodes 1, 3, 5 and the midpoint.
inline constexpr double kG7Weights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct QuadSegment {
  double a = 0.0;
  double b = 0.0;
  double integral = 0.0;
  double error = 0.0;

  bool operator<(const QuadSegment& o) const { return error < o.error; }
};

// One G7/K15 evaluation over [a,b] with the QUADPACK error heuristic.
template <class F>
QuadSegment gk15(F& f, double a, double b) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);

  double fv[15];
  const double f_mid = f(mid);
  double resk = kGk15Weights[7] * f_mid;
  double resg = kG7Weights[3] * f_mid;
  double resabs = kGk15Weights[7] * std::abs(f_mid);
  fv[14] = f_mid;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kGk15Nodes[j];
    const double f1 = f(mid - dx);
    const double f2 = f(mid + dx);
    fv[2 * j] = f1;
    fv[2 * j + 1] = f2;
    resk += kGk15Weights[j] * (f1 + f2);
    resabs += kGk15Weights[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) resg += kG7Weights[j / 2] * (f1 + f2);
  }

  const double reskh = 0.5 * resk;
  double resasc = kGk15Weights[7] * std::abs(f_mid - reskh);
  for (int j = 0; j < 7; ++j)
    resasc += kGk15Weights[j] *
              (std::abs(fv[2 * j] - reskh) + std::abs(fv[2 * j + 1] - reskh));

  const double ah = std::abs(half);
  resasc *= ah;
  resabs *= ah;
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double eps = std::numeric_limits<double>::epsilon();
  const double uflow = std::numeric_limits<double>::min();
  if (resabs > uflow / (50.0 * eps)) err = std::max(err, 50.0 * eps * resabs);

  return {a, b, resk * half, err};
}

}  // namespace detail

/// Globally adaptive quadrature of f over consecutive pairs of `edges`
/// (an increasing list from a to b): the segment with the largest error
/// estimate is bisected until the summed error meets
/// max(abs_tol, rel_tol*|integral|) or max_segments is exhausted.
///
/// Edges exist so callers can pre-split around features far narrower than
/// the whole domain (sharp boundary layers, spikes): a feature that no
/// node of the initial rule samples is invisible to the error estimate,
/// so adaptivity alone cannot find it.
template <class F>
QuadratureResult integrate_adaptive_edges(F&& f, std::span<const double> edges,
                                          double abs_tol, double rel_tol,
                                          int max_segments = 1'000'000) {
  std::priority_queue<detail::QuadSegment> heap;
  double total = 0.0;
  double total_err = 0.0;
  int segments = 0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (!(edges[i] < edges[i + 1])) continue;
    const detail::QuadSegment seg = detail::gk15(f, edges[i], edges[i + 1]);
    total += seg.integral;
    total_err += seg.error;
    heap.push(seg);
    ++segments;
  }

  const auto target = [&] { return std::max(abs_tol, rel_tol * std::abs(total)); };

  while (total_err > target() && segments < max_segments && !heap.empty()) {
    const detail::QuadSegment seg = heap.top();
    heap.pop();
    const double mid = 0.5 * (seg.a + seg.b);
    if (!(seg.a < mid && mid < seg.b)) continue;  // too narrow to split
    const detail::QuadSegment lo = detail::gk15(f, seg.a, mid);
    const detail::QuadSegment hi = detail::gk15(f, mid, seg.b);
    total += lo.integral + hi.integral - seg.integral;
    total_err += lo.error + hi.error - seg.error;
    heap.push(lo);
    heap.push(hi);
    ++segments;
  }

  QuadratureResult out;
  out.value = total;
  out.error_bound = total_err;
  out.segments = segments;
  out.converged = total_err <= target();
  return out;
}

template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, double abs_tol,
                                    double rel_tol, int max_segments = 1'000'000) {
  const double edges[2] = {a, b};
  return integrate_adaptive_edges(f, edges, abs_tol, rel_tol, max_segments);
}

}  // namespace orci
