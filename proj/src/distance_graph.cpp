#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <vector>

#include "topo/distance.hpp"
#include "topo/errors.hpp"

namespace topo {

namespace {

struct Offset {
  int di;
  int dj;
};

std::vector<Offset> stencil_offsets(int radius) {
  std::vector<Offset> out;
  for (int i = -radius; i <= radius; ++i) {
    for (int j = -radius; j <= radius; ++j) {
      if ((i || j) && std::gcd(std::abs(i), std::abs(j)) == 1) out.push_back({i, j});
    }
  }
  return out;
}

// Largest angular gap between consecutive stencil directions.
double stencil_gap(const std::vector<Offset>& offs) {
  std::vector<double> angles;
  for (const auto& o : offs) angles.push_back(std::atan2(o.dj, o.di));
  std::sort(angles.begin(), angles.end());
  double gap = 0.0;
  for (std::size_t i = 0; i + 1 < angles.size(); ++i) gap = std::max(gap, angles[i + 1] - angles[i]);
  return gap;
}

// Spacing that puts both a and b on grid lines.
double snapped_spacing(double a, double b, double target) {
  const double d = std::abs(b - a);
  if (d < 1e-12) return target;
  const double cells = std::max(1.0, std::round(d / target));
  return d / cells;
}

}  // namespace

DistanceResult distance_graph(const MetricSurface& m, const Vec2& p, const Vec2& q,
                              int resolution, int stencil) {
  if (resolution < 32) throw DomainError("distance_graph: resolution must be at least 32");
  if (stencil < 1) throw DomainError("distance_graph: stencil radius must be at least 1");
  if (!m.domain().contains(p) || !m.domain().contains(q)) {
    throw DomainError("distance_graph: endpoints outside the chart of " + m.label());
  }
  DistanceResult out;
  out.method = DistanceMethod::Graph;
  if ((p - q).norm() < 1e-14) return out;

  // Box around the segment, widened so bent geodesics fit, clipped to the chart.
  const auto dom = m.domain().bounds();
  const Vec2 lo = p.cwiseMin(q), hi = p.cwiseMax(q);
  const double ext = std::max((hi - lo).maxCoeff(), 1e-3);
  const double pad = 0.5 * ext;
  const double u0 = std::max(lo.x() - pad, dom[0]), u1 = std::min(hi.x() + pad, dom[1]);
  const double v0 = std::max(lo.y() - pad, dom[2]), v1 = std::min(hi.y() + pad, dom[3]);
  const double target = std::max(u1 - u0, v1 - v0) / resolution;
  const double hu = snapped_spacing(p.x(), q.x(), target);
  const double hv = snapped_spacing(p.y(), q.y(), target);
  // Grid origin aligned so that p is a node.
  const double gu = p.x() - std::floor((p.x() - u0) / hu + 1e-9) * hu;
  const double gv = p.y() - std::floor((p.y() - v0) / hv + 1e-9) * hv;
  const int nu = static_cast<int>(std::floor((u1 - gu) / hu + 1e-9)) + 1;
  const int nv = static_cast<int>(std::floor((v1 - gv) / hv + 1e-9)) + 1;
  auto node_pos = [&](int i, int j) { return Vec2(gu + i * hu, gv + j * hv); };
  auto index = [&](int i, int j) { return static_cast<std::size_t>(j) * static_cast<std::size_t>(nu) + static_cast<std::size_t>(i); };

  const int pi = static_cast<int>(std::lround((p.x() - gu) / hu)), pj = static_cast<int>(std::lround((p.y() - gv) / hv));
  const int qi = static_cast<int>(std::lround((q.x() - gu) / hu)), qj = static_cast<int>(std::lround((q.y() - gv) / hv));

  const std::size_t total = static_cast<std::size_t>(nu) * static_cast<std::size_t>(nv);
  std::vector<char> valid(total, 0);
  for (int j = 0; j < nv; ++j) {
    for (int i = 0; i < nu; ++i) valid[index(i, j)] = m.domain().contains(node_pos(i, j)) ? 1 : 0;
  }
  const std::size_t source = index(pi, pj), sink = index(qi, qj);
  if (!valid[source] || !valid[sink]) throw DomainError("distance_graph: endpoint not on a valid grid node");

  const auto offs = stencil_offsets(stencil);
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(total, kInf);
  std::vector<std::size_t> pred(total, total);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[source] = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    if (u == sink) break;
    const int i = static_cast<int>(u % static_cast<std::size_t>(nu));
    const int j = static_cast<int>(u / static_cast<std::size_t>(nu));
    const Vec2 x = node_pos(i, j);
    for (const auto& o : offs) {
      const int a = i + o.di, b = j + o.dj;
      if (a < 0 || b < 0 || a >= nu || b >= nv) continue;
      const std::size_t w = index(a, b);
      if (!valid[w]) continue;
      const Vec2 step(o.di * hu, o.dj * hv);
      const double len = m.metric(x + 0.5 * step).norm(step);
      if (d + len < dist[w]) {
        dist[w] = d + len;
        pred[w] = u;
        heap.emplace(dist[w], w);
      }
    }
  }
  if (!std::isfinite(dist[sink])) throw DomainError("distance_graph: target unreachable (disconnected grid)");

  out.value = dist[sink];
  std::size_t first = sink;
  while (pred[first] != source && pred[first] != total) first = pred[first];
  const Vec2 x1 = node_pos(static_cast<int>(first % static_cast<std::size_t>(nu)),
                           static_cast<int>(first / static_cast<std::size_t>(nu)));
  out.initial_direction = normalize(m, p, x1 - p);
  const double cell = m.metric(p).norm(Vec2(hu, hv));
  out.est_error = out.value * (1.0 / std::cos(0.5 * stencil_gap(offs)) - 1.0) + cell;
  out.candidates = 1;
  return out;
}

}  // namespace topo
