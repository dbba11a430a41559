#pragma once

#include <vector>

#include "dadnet/model.hpp"

namespace dadnet::bpr {

struct ArcShape {
  double length = 0.0;    // mi
  double speed = 0.0;     // mi/h
  double capacity = 0.0;  // v/h
};

// Outer linearization of y * T(y) on [0, 2u] using chords between n_L + 1
// equally spaced breakpoints.
struct Pieces {
  double width = 0.0;               // breakpoint spacing, v/h
  std::vector<double> heights;      // t_r for r = 0..n_L, (v/h)*h
  std::vector<double> slopes;       // alpha_r for r = 1..n_L (index r - 1), h
  std::vector<double> intercepts;   // xi_r for r = 1..n_L (index r - 1), <= 0

  int count() const { return static_cast<int>(slopes.size()); }
  // max_r (alpha_r * y + xi_r), never below 0 at y = 0.
  double envelope(double flow) const;
};

// T(y) = (l / v) * (1 + 0.15 * (y / u)^4), in hours.
double travel_time(const ArcShape& arc, double flow);

// Flow-weighted aggregate y * T(y).
inline double aggregate_time(const ArcShape& arc, double flow) { return flow * travel_time(arc, flow); }

Pieces build_pieces(const ArcShape& arc, int pieces);

ArcShape shape_of(const NetworkInstance& inst, ArcIndex a);

// Pieces for every arc of the instance, indexed by ArcIndex.
std::vector<Pieces> build_all(const NetworkInstance& inst);

}  // namespace dadnet::bpr
