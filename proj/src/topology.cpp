#include "leosim/topology.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace leosim {

namespace {

// Nearest satellite of `plane` to position `from`, over the full layout.
// Presence is applied as a filter afterwards so that removing a satellite
// only ever deletes links and never re-pairs the survivors.
int nearest_in_plane(const std::vector<EcefPosition>& positions, const PlaneLayout& layout,
                     int plane, const EcefPosition& from) {
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (int s = 0; s < layout.sats_per_plane; ++s) {
        int cand = layout.sat_index(plane, s);
        double d = distance_m(from, positions[static_cast<std::size_t>(cand)]);
        if (d < best_d) {
            best_d = d;
            best = cand;
        }
    }
    return best;
}

}  // namespace

std::vector<std::vector<int>> build_isl_neighbors(const std::vector<EcefPosition>& positions,
                                                  const PlaneLayout& layout,
                                                  const std::vector<bool>& present,
                                                  bool cross_seam) {
    int n = layout.num_sats();
    std::vector<std::vector<int>> neighbors(static_cast<std::size_t>(n));

    // Intra-plane ring: previous/next slot by anomaly ordering, no re-linking
    // across a missing satellite.
    for (int sat = 0; sat < n; ++sat) {
        if (!present[static_cast<std::size_t>(sat)]) continue;
        int p = layout.plane_of(sat);
        int s = layout.slot_in_plane(sat);
        int ring = layout.sats_per_plane;
        if (ring > 1) {
            int next = layout.sat_index(p, (s + 1) % ring);
            int prev = layout.sat_index(p, (s - 1 + ring) % ring);
            for (int cand : {next, prev}) {
                if (cand == sat) continue;
                if (!present[static_cast<std::size_t>(cand)]) continue;
                if (std::find(neighbors[sat].begin(), neighbors[sat].end(), cand) ==
                    neighbors[sat].end())
                    neighbors[sat].push_back(cand);
            }
        }
    }

    // Cross-plane: mutual-nearest pairing per adjacent-plane crossing. A
    // crossing is identified by its lower plane index; crossing P-1 <-> 0 is
    // the seam.
    if (layout.num_planes > 1) {
        int crossings = layout.num_planes == 2 ? 1 : layout.num_planes;
        for (int c = 0; c < crossings; ++c) {
            int pa = c;
            int pb = (c + 1) % layout.num_planes;
            bool is_seam = pb == 0;
            if (is_seam && !cross_seam) continue;
            for (int s = 0; s < layout.sats_per_plane; ++s) {
                int a = layout.sat_index(pa, s);
                int b = nearest_in_plane(positions, layout, pb,
                                         positions[static_cast<std::size_t>(a)]);
                if (b < 0) continue;
                int back = nearest_in_plane(positions, layout, pa,
                                            positions[static_cast<std::size_t>(b)]);
                if (back != a) continue;  // keep only mutual-nearest pairs
                if (!present[static_cast<std::size_t>(a)] ||
                    !present[static_cast<std::size_t>(b)])
                    continue;
                neighbors[static_cast<std::size_t>(a)].push_back(b);
                neighbors[static_cast<std::size_t>(b)].push_back(a);
            }
        }
    }

    // Dedupe (a mutual pair is discovered from both sides) and keep the
    // per-satellite limit of four.
    for (auto& list : neighbors) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
        if (list.size() > 4) list.resize(4);
    }
    return neighbors;
}

std::vector<Edge> build_gsl_edges(const std::vector<GroundStation>& stations,
                                  const std::vector<EcefPosition>& station_ecef,
                                  const std::vector<EcefPosition>& sat_positions,
                                  const std::vector<bool>& present,
                                  const std::vector<bool>& failure_mask,
                                  double min_elevation_deg, int num_sats,
                                  const ChannelParams& params) {
    std::vector<Edge> edges;
    for (std::size_t j = 0; j < stations.size(); ++j) {
        struct Candidate {
            double distance_m;
            double elevation_deg;
            int sat;
        };
        std::vector<Candidate> visible;
        for (int sat = 0; sat < num_sats; ++sat) {
            double elev = elevation_angle_deg(station_ecef[j], sat_positions[static_cast<std::size_t>(sat)]);
            if (elev < min_elevation_deg) continue;
            double d = distance_m(station_ecef[j], sat_positions[static_cast<std::size_t>(sat)]);
            visible.push_back({d, elev, sat});
        }
        std::sort(visible.begin(), visible.end(), [](const Candidate& a, const Candidate& b) {
            return a.distance_m != b.distance_m ? a.distance_m < b.distance_m : a.sat < b.sat;
        });
        // Antenna targets are selected on full geometry; absent or failed
        // satellites then lose their edge without promoting a replacement.
        std::size_t take = std::min<std::size_t>(visible.size(),
                                                 static_cast<std::size_t>(stations[j].num_antennas));
        for (std::size_t i = 0; i < take; ++i) {
            const auto& c = visible[i];
            if (!present[static_cast<std::size_t>(c.sat)]) continue;
            if (!failure_mask.empty() && failure_mask[static_cast<std::size_t>(c.sat)]) continue;
            Edge e;
            e.src = c.sat;
            e.dst = num_sats + static_cast<int>(j);
            e.kind = LinkKind::Gsl;
            e.distance_m = c.distance_m;
            e.capacity_bps = gsl_capacity_bps(c.distance_m, c.elevation_deg, params);
            e.prop_delay_s = propagation_delay_s(c.distance_m, params);
            edges.push_back(e);
        }
    }
    return edges;
}

TimeSlotGraph build_slot_graph(int slot, const std::vector<EcefPosition>& sat_positions,
                               const PlaneLayout& layout, const std::vector<bool>& present,
                               const std::vector<bool>& failure_mask,
                               const std::vector<GroundStation>& stations,
                               const std::vector<EcefPosition>& station_ecef,
                               const std::vector<double>& fiber_delay_s,
                               const ChannelParams& params, const TopologyOptions& options) {
    int n = layout.num_sats();
    TimeSlotGraph graph(slot, n, static_cast<int>(stations.size()));

    auto neighbors = build_isl_neighbors(sat_positions, layout, present, options.cross_seam_isls);
    for (int sat = 0; sat < n; ++sat) {
        for (int nb : neighbors[static_cast<std::size_t>(sat)]) {
            Edge e;
            e.src = sat;
            e.dst = nb;
            e.kind = LinkKind::Isl;
            e.distance_m = distance_m(sat_positions[static_cast<std::size_t>(sat)],
                                      sat_positions[static_cast<std::size_t>(nb)]);
            e.capacity_bps = isl_capacity_bps(e.distance_m, params);
            e.prop_delay_s = propagation_delay_s(e.distance_m, params);
            graph.add_edge(e);
        }
    }

    for (const Edge& e : build_gsl_edges(stations, station_ecef, sat_positions, present,
                                         failure_mask, options.min_elevation_deg, n, params))
        graph.add_edge(e);

    for (std::size_t j = 0; j < stations.size(); ++j) {
        Edge e;
        e.src = graph.ground_node(static_cast<int>(j));
        e.dst = graph.internet_node();
        e.kind = LinkKind::Fiber;
        e.capacity_bps = stations[j].fiber_capacity_bps > 0.0 ? stations[j].fiber_capacity_bps
                                                              : params.fiber_capacity_bps;
        e.prop_delay_s = fiber_delay_s.empty() ? 0.0 : fiber_delay_s[j];
        e.distance_m = 0.0;
        graph.add_edge(e);
    }
    return graph;
}

std::vector<GroundStation> load_station_catalog(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open station catalog: " + path);
    std::vector<GroundStation> stations;
    std::string line;
    int line_no = 0;
    if (!std::getline(in, line)) throw std::runtime_error("empty station catalog: " + path);
    ++line_no;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        GroundStation gs;
        char name[128];
        double lat, lon, fiber;
        int antennas;
        if (std::sscanf(line.c_str(), "%127[^,],%lf,%lf,%d,%lf", name, &lat, &lon, &antennas,
                        &fiber) != 5)
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": malformed station row");
        if (lat < -90.0 || lat > 90.0)
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": latitude out of range");
        if (antennas < 1)
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": station needs at least one antenna");
        gs.name = name;
        gs.location = {lat, normalize_longitude_deg(lon), 0.0};
        gs.num_antennas = antennas;
        gs.fiber_capacity_bps = fiber;
        stations.push_back(gs);
    }
    return stations;
}

}  // namespace leosim
