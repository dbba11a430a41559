#include "dadnet/bpr.hpp"

#include <algorithm>
#include <limits>

namespace dadnet::bpr {

double travel_time(const ArcShape& arc, double flow) {
  if (!(arc.capacity > 0.0)) throw InstanceError("BPR travel time needs positive capacity");
  const double ratio = flow / arc.capacity;
  const double r2 = ratio * ratio;
  return (arc.length / arc.speed) * (1.0 + 0.15 * r2 * r2);
}

double Pieces::envelope(double flow) const {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < slopes.size(); ++r) best = std::max(best, slopes[r] * flow + intercepts[r]);
  return best;
}

Pieces build_pieces(const ArcShape& arc, int pieces) {
  if (pieces < 1) throw InstanceError("BPR approximation needs at least one piece");
  Pieces out;
  out.width = 2.0 * arc.capacity / pieces;
  out.heights.resize(pieces + 1);
  out.heights[0] = 0.0;
  for (int r = 1; r <= pieces; ++r) {
    const double y = r * out.width;
    out.heights[r] = y * travel_time(arc, y);
  }
  out.slopes.resize(pieces);
  out.intercepts.resize(pieces);
  for (int r = 1; r <= pieces; ++r) {
    const double slope = (out.heights[r] - out.heights[r - 1]) / out.width;
    out.slopes[r - 1] = slope;
    out.intercepts[r - 1] = out.heights[r] - slope * r * out.width;
  }
  return out;
}

ArcShape shape_of(const NetworkInstance& inst, ArcIndex a) {
  const auto& arc = inst.arcs.at(a);
  return ArcShape{arc.length, arc.speed, inst.arc_capacity(a)};
}

std::vector<Pieces> build_all(const NetworkInstance& inst) {
  std::vector<Pieces> out;
  out.reserve(inst.arcs.size());
  for (ArcIndex a = 0; a < inst.arcs.size(); ++a) out.push_back(build_pieces(shape_of(inst, a), inst.bpr_pieces));
  return out;
}

}  // namespace dadnet::bpr
