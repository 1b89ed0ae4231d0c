#pragma once

#include <utility>
#include <vector>

#include "trafficflow/lattice.hpp"
#include "trafficflow/rational.hpp"

namespace trafficflow {

enum class Direction { forward, backward };

class Velocity {
 public:
  static Velocity finite(int v);
  static Velocity infinite() { return Velocity(0, true); }

  bool is_infinite() const { return infinite_; }
  int value() const;  // throws for the infinite velocity

  bool operator==(const Velocity&) const = default;

 private:
  Velocity(int v, bool inf) : v_(v), infinite_(inf) {}
  int v_ = 1;
  bool infinite_ = false;
};

struct FlowParams {
  Velocity v = Velocity::finite(1);
  int lanes = 1;
  Direction direction = Direction::forward;
};

struct FluxReport {
  Rational rho;
  Rational flux_measured;
  Rational flux_predicted;
  Index transient_steps = 0;
};

// Single-lane map with v = 1 (every 10 becomes 01).
Configuration step_slow(const Configuration& x);

// v = 1 map on M lanes, evaluated from the sitewise formula.
Configuration step_multilane(const Configuration& x);

// Single-lane map: each particle advances min(v, headway).
Configuration step_fast(const Configuration& x, int v, Direction dir = Direction::forward);

// Drivers that anticipate up to m cars ahead: dual o backward fast o dual.
Configuration step_smart(const Configuration& x, int m);

// Each particle jumps to just behind the next one. Padded input needs
// left fill 0 and right fill 1.
Configuration step_superfast(const Configuration& x);

// Sawtooth redirect at `anchor`, fast step on each lane, sum of lanes.
Configuration step_general(const Configuration& x, int v, Index anchor = 0);

// One step of the map selected by `params`, plus the total distance moved.
std::pair<Configuration, Index> step_counted(const Configuration& x, const FlowParams& params);
Configuration step(const Configuration& x, const FlowParams& params);
Configuration evolve(const Configuration& x, const FlowParams& params, Index t);

// Distance covered next step by all particles at each core site.
std::vector<int> velocity_profile(const Configuration& x, int v);
int local_velocity(const Configuration& x, Index i, int v);

Rational flux_window(const Configuration& x, const WindowSpec& w, int v);
Rational flux_pattern_sum(const Configuration& x, int v);
Rational fundamental_flux(const Rational& rho, int v, int M);

// Evolves a ring for `steps` steps and compares the final flux against the
// fundamental diagram. transient_steps is one past the last step whose flux
// missed the prediction by more than v/L.
FluxReport flux_report(const Configuration& x, int v, Index steps);

}  // namespace trafficflow
