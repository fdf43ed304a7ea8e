#pragma once

// Central table of numeric defaults. Every tolerance used by the library is
// pinned here so verification reports are reproducible.

namespace optorus::defaults {

// Billiard: reflections within this fraction of the polygon diameter from a
// vertex terminate the trajectory with a flagged status.
inline constexpr double vertex_exclusion_rel = 1e-9;

// Elliptic modulus admissible range; outside it the rectangle degenerates.
inline constexpr double k_min = 1e-6;
inline constexpr double k_max = 1.0 - 1e-6;
inline constexpr double k_default = 0.7071067811865475244; // 1/sqrt(2)

// sn pole neighbourhood: callers get a near-pole flag inside eps_p * b.
inline constexpr double sn_pole_flag_rel = 1e-6;

// Index field: evaluation inside eps_s * min(a,b) of a puncture returns a
// tagged singular result instead of a large float.
inline constexpr double field_singular_rel = 1e-8;

// Geodesic dynamics: guard radius around punctures (fraction of min(a,b));
// trajectories entering it halt with a tag.
inline constexpr double dynamics_guard_rel = 1e-4;

// Schwarz-Christoffel quadrature absolute tolerance.
inline constexpr double sc_quad_tol = 1e-12;

// Parameter problem: residual tolerance and crowding threshold.
inline constexpr double sc_solver_tol = 1e-11;
inline constexpr int    sc_solver_max_iter = 80;
inline constexpr double sc_crowding_gap = 1e-12;

// Map inversion (Newton) tolerance, relative to polygon diameter.
inline constexpr double inversion_tol_rel = 1e-12;

// Geodesic integrator step policy.
inline constexpr double ode_rel_tol = 1e-12;
inline constexpr double ode_abs_tol = 1e-12;
inline constexpr double ode_energy_budget = 5e-10;

} // namespace optorus::defaults
