#include "trafficflow/tracer.hpp"

#include "trafficflow/dynamics.hpp"
#include "trafficflow/error.hpp"

namespace trafficflow {

TauResult tau(const Configuration& x, Index i, TracerDirection dir) {
  if (x.lanes() != 1) throw Error("single-lane configuration required");
  const Index L = x.size();
  const Index step = dir == TracerDirection::along ? 1 : -1;
  if (x.is_ring()) {
    if (x.particles() == 0) throw Error("tracer stranded");
    for (Index d = 1; d <= L; ++d) {
      const Index j = i + step * d;
      if (x.at(j)) return {x.wrap(j), step * d};
    }
    throw Error("tracer stranded");
  }
  // Scan the core, then fall into the tail if it is full.
  for (Index j = i + step; j >= -1 && j <= L; j += step) {
    if (x.at(j)) return {j, j - i};
  }
  throw Error("tracer stranded");
}

TracerState tracer_step(const TracerState& s, int v) {
  TauResult t = tau(s.config, s.position, s.direction);
  TracerState next = s;
  next.position = t.site;
  next.displacement += t.displacement;
  next.config = step_fast(s.config, v);
  next.steps += 1;
  return next;
}

TracerRun tracer_run(const Configuration& x, Index start, TracerDirection dir, int v, Index t) {
  if (t < 1) throw Error("tracer run needs at least one step");
  TracerRun run;
  run.positions.reserve(static_cast<std::size_t>(t));
  run.displacements.reserve(static_cast<std::size_t>(t));
  TracerState s{x, x.wrap(start), dir, 0, 0};
  for (Index k = 0; k < t; ++k) {
    s = tracer_step(s, v);
    run.positions.push_back(s.position);
    run.displacements.push_back(s.displacement);
  }
  run.velocity = s.velocity();
  run.final_state = std::move(s);
  return run;
}

}  // namespace trafficflow
