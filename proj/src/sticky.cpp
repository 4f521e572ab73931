#include "awr/sticky.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "json.hpp"

namespace awr {

double BlockSystem::total_mass() const {
    double m = 0.0;
    for (const auto& c : clusters) m += c.mass;
    return m;
}

double BlockSystem::total_momentum() const {
    double p = 0.0;
    for (const auto& c : clusters) p += c.mass * c.velocity;
    return p;
}

double BlockSystem::kinetic_energy() const {
    double e = 0.0;
    for (const auto& c : clusters) e += 0.5 * c.mass * c.velocity * c.velocity;
    return e;
}

namespace {

double wrap_position(double x, double length) {
    double y = std::fmod(x, length);
    if (y < 0.0) y += length;
    return y;
}

// Arc length from the center of clusters[i] to the center of its cyclic
// successor, measured forward along the torus.
double forward_delta(const BlockSystem& b, std::size_t i) {
    const std::size_t j = (i + 1) % b.clusters.size();
    double d = b.clusters[j].center - b.clusters[i].center;
    if (b.clusters.size() == 1) return b.length;
    if (d <= 0.0 || j == 0) d += b.length;
    return d;
}

}  // namespace

void BlockSystem::validate() const {
    if (clusters.empty()) fail(ErrorKind::argument, "block system has no clusters");
    if (!(length > 0.0)) fail(ErrorKind::argument, "torus length must be positive");
    double mass = 0.0;
    for (const auto& c : clusters) {
        if (!(c.mass > 0.0)) fail(ErrorKind::argument, "cluster masses must be positive");
        if (!std::isfinite(c.center) || !std::isfinite(c.velocity))
            fail(ErrorKind::argument, "cluster state must be finite");
        mass += c.mass;
    }
    if (!(mass < length))
        fail(ErrorKind::validation, "total block mass must be below the torus length",
             "total_mass");
    for (std::size_t i = 0; i + 1 < clusters.size(); ++i) {
        if (clusters[i].center > clusters[i + 1].center)
            fail(ErrorKind::argument, "clusters must be sorted by center");
    }
    for (std::size_t i = 0; i < clusters.size() && clusters.size() > 1; ++i) {
        const std::size_t j = (i + 1) % clusters.size();
        if (clusters[i].center == clusters[j].center)
            fail(ErrorKind::validation,
                 "clusters " + std::to_string(i) + " and " + std::to_string(j) +
                     " coincide",
                 "overlap");
        const double gap =
            forward_delta(*this, i) - 0.5 * (clusters[i].mass + clusters[j].mass);
        if (gap < -1e-12)
            fail(ErrorKind::validation,
                 "clusters " + std::to_string(i) + " and " + std::to_string(j) +
                     " overlap by " + std::to_string(-gap),
                 "overlap");
    }
}

BlockSystem discretize(const Field& rho0, const Field& u0, std::size_t n_particles) {
    if (n_particles < 2) fail(ErrorKind::argument, "need at least 2 particles");
    const Grid& g = rho0.grid();
    if (u0.grid() != g) fail(ErrorKind::argument, "rho0 and u0 must share a grid");
    for (std::size_t j = 0; j < rho0.size(); ++j) {
        if (!(rho0[j] > 0.0 && rho0[j] < 1.0))
            fail(ErrorKind::validation, "discretize needs 0 < rho < 1 everywhere",
                 "positivity");
    }
    const double mass_total = integrate(rho0);
    if (!(mass_total > 0.0 && mass_total < g.length))
        fail(ErrorKind::validation, "total mass must lie strictly inside (0, length)",
             "total_mass");

    // Piecewise-linear cumulative mass; cumulative[j] = integral over cells < j.
    const std::size_t n = g.n_cells;
    std::vector<double> cumulative(n + 1, 0.0);
    for (std::size_t j = 0; j < n; ++j) cumulative[j + 1] = cumulative[j] + rho0[j] * g.dx;

    BlockSystem blocks;
    blocks.length = g.length;
    blocks.time = 0.0;
    const double m = mass_total / static_cast<double>(n_particles);

    std::size_t cell = 0;
    for (std::size_t i = 0; i < n_particles; ++i) {
        const double target = (static_cast<double>(i) + 0.5) * m;
        while (cell + 1 < n && cumulative[cell + 1] < target) ++cell;
        const double x = (static_cast<double>(cell) + (target - cumulative[cell]) /
                                                          (rho0[cell] * g.dx)) *
                         g.dx;

        // Linear interpolation of u0 between the two nearest cell centers.
        const double pos = x / g.dx - 0.5;
        const auto k = static_cast<std::ptrdiff_t>(std::floor(pos));
        const double frac = pos - static_cast<double>(k);
        const double vel = (1.0 - frac) * u0.at_wrapped(k) + frac * u0.at_wrapped(k + 1);

        blocks.clusters.push_back(Cluster{m, wrap_position(x, g.length), vel});
    }
    std::stable_sort(blocks.clusters.begin(), blocks.clusters.end(),
                     [](const Cluster& a, const Cluster& b) { return a.center < b.center; });
    blocks.validate();
    return blocks;
}

namespace {

void advance(BlockSystem& b, double dt) {
    for (auto& c : b.clusters) c.center = wrap_position(c.center + c.velocity * dt, b.length);
    std::stable_sort(b.clusters.begin(), b.clusters.end(),
                     [](const Cluster& x, const Cluster& y) { return x.center < y.center; });
    b.time += dt;
}

}  // namespace

BlockSystem evolve(BlockSystem blocks, double t_end) {
    blocks.validate();
    if (t_end < blocks.time)
        fail(ErrorKind::argument, "evolve target time precedes the system time");

    const std::size_t max_events = blocks.clusters.size();  // n-1 merges, plus slack
    std::size_t events = 0;

    while (blocks.time < t_end) {
        const std::size_t k = blocks.clusters.size();
        if (k == 1) {
            advance(blocks, t_end - blocks.time);
            break;
        }

        // Next contact over all cyclic gaps with positive closing speed;
        // ties resolve to the lowest index through the strict comparison.
        double t_contact = std::numeric_limits<double>::infinity();
        std::size_t idx = k;
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t j = (i + 1) % k;
            const double closing = blocks.clusters[i].velocity - blocks.clusters[j].velocity;
            if (closing <= 0.0) continue;
            const double gap = std::max(
                forward_delta(blocks, i) - 0.5 * (blocks.clusters[i].mass +
                                                  blocks.clusters[j].mass),
                0.0);
            const double t = gap / closing;
            if (t < t_contact) {
                t_contact = t;
                idx = i;
            }
        }
        if (idx == k || blocks.time + t_contact > t_end) {
            advance(blocks, t_end - blocks.time);
            break;
        }

        advance(blocks, t_contact);
        if (++events > max_events)
            fail(ErrorKind::runtime, "merge count exceeded the cluster budget");

        // advance() re-sorts, so locate the contact pair at the current
        // instant: the lowest-index closing pair within contact tolerance,
        // falling back to the minimal-gap closing pair.
        const double contact_tol = 1e-12 * std::max(1.0, blocks.length);
        const std::size_t kk = blocks.clusters.size();
        double best_gap = std::numeric_limits<double>::infinity();
        std::size_t best = kk;
        for (std::size_t i = 0; i < kk; ++i) {
            const std::size_t j = (i + 1) % kk;
            const double closing = blocks.clusters[i].velocity - blocks.clusters[j].velocity;
            if (closing <= 0.0) continue;
            const double gap =
                forward_delta(blocks, i) -
                0.5 * (blocks.clusters[i].mass + blocks.clusters[j].mass);
            if (gap <= contact_tol) {
                best = i;
                break;
            }
            if (gap < best_gap) {
                best_gap = gap;
                best = i;
            }
        }
        if (best == kk) continue;  // closing pair vanished within roundoff

        const std::size_t succ = (best + 1) % kk;
        const Cluster a = blocks.clusters[best];
        const Cluster b = blocks.clusters[succ];
        const double mass = a.mass + b.mass;
        Cluster merged;
        merged.mass = mass;
        merged.velocity = (a.mass * a.velocity + b.mass * b.velocity) / mass;
        merged.center =
            wrap_position(a.center + b.mass / mass * forward_delta(blocks, best),
                          blocks.length);
        blocks.clusters.erase(blocks.clusters.begin() + static_cast<std::ptrdiff_t>(succ));
        const std::size_t keep = succ < best ? best - 1 : best;
        blocks.clusters[keep] = merged;
        std::stable_sort(blocks.clusters.begin(), blocks.clusters.end(),
                         [](const Cluster& x, const Cluster& y) { return x.center < y.center; });
    }
    return blocks;
}

Field density_cdf(const BlockSystem& blocks, const Grid& query) {
    Field out(query);
    for (std::size_t k = 0; k < query.n_cells; ++k) {
        const double x = query.center(k);
        double mass = 0.0;
        for (const auto& c : blocks.clusters) {
            const double a = c.center - 0.5 * c.mass;
            const double b = c.center + 0.5 * c.mass;
            for (double shift : {-blocks.length, 0.0, blocks.length}) {
                const double lo = std::max(a + shift, 0.0);
                const double hi = std::min(b + shift, x);
                if (hi > lo) mass += hi - lo;
            }
        }
        out[k] = mass;
    }
    return out;
}

Field density_cdf(const State& state, const Grid& query) {
    const Grid& g = state.grid();
    const std::size_t n = g.n_cells;
    std::vector<double> cumulative(n + 1, 0.0);
    for (std::size_t j = 0; j < n; ++j)
        cumulative[j + 1] = cumulative[j] + state.rho[j] * g.dx;

    Field out(query);
    for (std::size_t k = 0; k < query.n_cells; ++k) {
        const double x = std::min(query.center(k), g.length);
        const auto cell = std::min(static_cast<std::size_t>(x / g.dx), n - 1);
        out[k] = cumulative[cell] + state.rho[cell] * (x - static_cast<double>(cell) * g.dx);
    }
    return out;
}

double cdf_distance(const Field& a, const Field& b) {
    if (a.grid() != b.grid())
        fail(ErrorKind::argument, "cumulative-mass fields live on different grids");
    Field diff(a.grid());
    for (std::size_t j = 0; j < a.size(); ++j) diff[j] = a[j] - b[j];
    return lp_norm(diff, Norm::l1);
}

std::string block_system_to_json(const BlockSystem& blocks) {
    nlohmann::ordered_json j;
    j["length"] = blocks.length;
    j["time"] = blocks.time;
    j["clusters"] = nlohmann::ordered_json::array();
    for (const auto& c : blocks.clusters)
        j["clusters"].push_back(
            {{"mass", c.mass}, {"center", c.center}, {"velocity", c.velocity}});
    return j.dump(2);
}

BlockSystem block_system_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::parse, std::string("invalid block-system JSON: ") + e.what());
    }
    if (j.contains("snapshots")) {
        // Time series: take the terminal snapshot.
        auto snaps = j["snapshots"];
        if (snaps.empty()) fail(ErrorKind::parse, "block-system JSON has no snapshots");
        auto last = snaps.back();
        last["length"] = j["length"];
        j = last;
    }
    BlockSystem b;
    try {
        b.length = j.at("length").get<double>();
        b.time = j.value("time", 0.0);
        for (const auto& c : j.at("clusters")) {
            b.clusters.push_back(Cluster{c.at("mass").get<double>(),
                                         c.at("center").get<double>(),
                                         c.at("velocity").get<double>()});
        }
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::parse, std::string("invalid block-system JSON: ") + e.what());
    }
    std::sort(b.clusters.begin(), b.clusters.end(),
              [](const Cluster& x, const Cluster& y) { return x.center < y.center; });
    b.validate();
    return b;
}

}  // namespace awr
