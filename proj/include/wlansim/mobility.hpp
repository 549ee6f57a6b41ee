#pragma once

#include "wlansim/event_queue.hpp"
#include "wlansim/geometry.hpp"
#include "wlansim/rng.hpp"
#include "wlansim/sim_time.hpp"

namespace wlansim {

struct Arena {
  double width_m = 50.0;
  double height_m = 50.0;
};

// Random waypoint walk inside a rectangle: move to a uniformly drawn target
// at constant speed, pause, draw the next target. Waypoint advancement is
// event-driven (never query-driven), so the draw sequence depends only on
// the seed: position queries from the traffic/MAC side cannot perturb the
// walk.
class RandomWaypoint {
 public:
  RandomWaypoint() = default;

  // Draws the initial position and first target. speed <= 0 means a static
  // node pinned at `fixed` (or at a drawn position if none given).
  void start(EventQueue& engine, RngStream& rng, const Arena& arena, double speed_mps,
             SimTime pause, const Vec2* fixed = nullptr);

  Vec2 position_at(SimTime t) const;

 private:
  void begin_leg(EventQueue& engine, RngStream& rng);
  Vec2 draw_point(RngStream& rng) const;

  Arena arena_;
  double speed_ = 1.5;
  SimTime pause_ = seconds(2);
  Vec2 from_;
  Vec2 to_;
  SimTime leg_start = 0;
  SimTime leg_end = 0;
};

}  // namespace wlansim
