#pragma once

#include <vector>

#include "trafficflow/lattice.hpp"

namespace trafficflow {

enum class TracerDirection { along, against };

struct TauResult {
  Index site = 0;
  Index displacement = 0;
};

// Nearest particle strictly beyond i in the given direction.
TauResult tau(const Configuration& x, Index i, TracerDirection dir);

struct TracerState {
  Configuration config;
  Index position = 0;
  TracerDirection direction = TracerDirection::along;
  Index displacement = 0;
  Index steps = 0;

  double velocity() const { return steps == 0 ? 0.0 : static_cast<double>(displacement) / steps; }
};

// Tracer jumps first, then the flow takes one fast step.
TracerState tracer_step(const TracerState& s, int v);

struct TracerRun {
  std::vector<Index> positions;      // after each step
  std::vector<Index> displacements;  // cumulative
  double velocity = 0.0;
  TracerState final_state;
};

TracerRun tracer_run(const Configuration& x, Index start, TracerDirection dir, int v, Index t);

}  // namespace trafficflow
