#pragma once

#include <string>
#include <vector>

#include "awr/field.hpp"

namespace awr {

// Unit-density block: width equals mass, so [center - mass/2, center + mass/2]
// is the occupied interval on the torus.
struct Cluster {
    double mass = 0.0;
    double center = 0.0;
    double velocity = 0.0;
};

// Cyclically ordered cluster list for the event-driven limit dynamics.
struct BlockSystem {
    std::vector<Cluster> clusters;  // sorted by center in [0, length)
    double length = 1.0;
    double time = 0.0;

    double total_mass() const;
    double total_momentum() const;
    double kinetic_energy() const;

    // Checks positive masses, total mass < length, and cyclic gaps >= -1e-12
    // (contact allowed).
    void validate() const;
};

// Splits the initial density into n_particles equal-mass unit-density
// blocklets placed by the inverse cumulative-mass map, with velocities
// interpolated from u0 at the block centers.
BlockSystem discretize(const Field& rho0, const Field& u0, std::size_t n_particles);

// Event-driven free transport with momentum-conserving merges on contact,
// up to absolute time t_end.
BlockSystem evolve(BlockSystem blocks, double t_end);

// Cumulative mass M(x) = integral_0^x rho sampled at the query grid's cell
// centers; rho is the indicator sum of the blocks' unit-density intervals.
Field density_cdf(const BlockSystem& blocks, const Grid& query);

// Same functional for a cell-averaged state: piecewise-linear cumulative
// sums of the density field (midpoint partial sums at its own centers).
Field density_cdf(const State& state, const Grid& query);

// L1 distance of two cumulative-mass fields on a common grid.
double cdf_distance(const Field& a, const Field& b);

// JSON round-trip for inspection files.
std::string block_system_to_json(const BlockSystem& blocks);
BlockSystem block_system_from_json(const std::string& text);

}  // namespace awr
