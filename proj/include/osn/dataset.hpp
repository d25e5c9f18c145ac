#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "osn/geo.hpp"

namespace osn {

struct Checkin {
    std::int64_t user = 0;
    std::string timestamp;  // kept verbatim; the fits never look at it
    double lat = 0.0;
    double lon = 0.0;
    std::string location_id;
};

using EdgeList = std::vector<std::pair<std::int64_t, std::int64_t>>;

// Lines of two whitespace-separated integer user ids; blank lines ignored;
// exact duplicate pairs collapsed. Malformed lines raise an error carrying
// the 1-based line number.
EdgeList parse_edges(const std::string& path);

struct CheckinFile {
    std::vector<Checkin> checkins;
    std::size_t skipped = 0;  // records whose lat/lon fell outside valid ranges
};

// Tab-separated records: user, timestamp, latitude, longitude, location id.
// Records with |lat| > 90 or |lon| > 180 are skipped and counted; anything
// structurally malformed raises an error with the line number.
CheckinFile parse_checkins(const std::string& path);

// Round-trip serializers (parse -> text -> parse is the identity on
// well-formed input).
std::string edges_text(const EdgeList& edges);
std::string checkins_text(const std::vector<Checkin>& checkins);

struct LocatedUser {
    std::int64_t id = 0;
    GeoPoint loc;
};

// Coordinate-wise median of the user's check-ins (even count: midpoint of
// the middle two). Users without check-ins simply don't appear. Output is
// sorted by user id.
std::vector<LocatedUser> estimate_user_locations(const std::vector<Checkin>& checkins);

struct BBox {
    double lat_min = 7.0, lat_max = 72.0;     // defaults cover North America
    double lon_min = -170.0, lon_max = -50.0;
    bool contains(const GeoPoint& p) const {
        return p.lat >= lat_min && p.lat <= lat_max && p.lon >= lon_min &&
               p.lon <= lon_max;
    }
};

struct GeoUser {
    std::int64_t id = 0;
    GeoPoint loc;
    std::uint32_t degree = 0;  // neighbors inside the box
};

struct GeoDataset {
    std::vector<GeoUser> users;                   // sorted by id
    std::vector<std::vector<std::uint32_t>> adj;  // indices into users, sorted
    BBox box;
};

// Keeps the located users inside the box and restricts the edge set to the
// induced subgraph. Edges are treated as directed out-neighborhoods exactly
// as listed (symmetric input files yield symmetric adjacency).
GeoDataset build_geo_dataset(const std::vector<LocatedUser>& users, const EdgeList& edges,
                             const BBox& box);

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    std::size_t points = 0;
    std::string binning;
};

struct BinPoint {
    double x = 0.0;
    double y = 0.0;
    double num = 0.0;
    double den = 0.0;
};

// Binned degree frequencies on a log grid (0.1 dex): y = lg of the bin's
// count divided by how many integers the bin spans, x = the bin center.
// Raw per-degree frequencies put every tail degree at count 1 and flatten
// the slope, so the fit runs on these bins. Degree-0 users are ignored.
std::vector<BinPoint> degree_fit_points(const std::vector<GeoUser>& users);

// Least squares over degree_fit_points; gamma estimate = -slope. Requires
// >= 10 distinct degrees and >= 10 occupied bins.
FitResult fit_degree_exponent(const std::vector<GeoUser>& users);

struct FormationOptions {
    std::size_t sample_count = 20000;    // positions drawn over the box
    std::size_t subsample_users = 3000;  // 0 = every user
    double d_f_km = 200.0;               // positions farther from all users drop
    std::uint64_t seed = 7;
    // Box to draw positions from; unset = the dataset's box. A box inset
    // from the data's footprint avoids boundary samples whose population
    // disks hang over the empty outside.
    std::optional<BBox> position_box;
};

struct FormationExperiment {
    std::vector<BinPoint> bins;  // x = lg N bin center; num/den = hits/samples
    std::size_t positions_drawn = 0;
    std::size_t positions_retained = 0;
    std::size_t users_sampled = 0;
};

// Friend-probability-versus-population-count experiment: for each retained
// uniform position p (nearest user within d_f_km) and each subsampled user
// u, count the users N within distance |u - p| of u and record whether p's
// nearest user is u's neighbor, accumulated per lg N bin (width 0.2).
FormationExperiment population_distance_experiment(const GeoDataset& data,
                                                   const FormationOptions& opts);

// Least squares on the experiment's bins with denominator >= 30 and at
// least one hit; beta estimate = -slope. Requires >= 10 such bins.
FitResult fit_formation_exponent(const FormationExperiment& exp);

struct FixtureSpec {
    std::size_t n = 20000;
    double gamma = 1.776;
    double beta = 0.752;
    // Out-degree draws above this are rejected (truncated Zipf).  An
    // unbounded tail puts the friend indicator in its saturated regime,
    // where the population-distance plot measures beta*(gamma-1) instead
    // of beta; capping at 50 keeps q * P(rank 1) below one while leaving
    // 14 occupied decade bins for the degree fit.
    std::size_t max_out_degree = 50;
    GeoPoint center{39.0, -98.0};
    double box_km = 400.0;
    std::uint64_t seed = 20260818;
};

struct GeoFixture {
    std::vector<Checkin> checkins;  // one per user
    EdgeList edges;                 // directed out-edges
    BBox box;                       // the fixture's footprint plus margin
};

// Synthetic check-in dataset with known exponents: users uniform in a
// box_km x box_km square; each user draws a Zipf(gamma) out-degree and picks
// friends by distance rank, the j-th nearest with probability proportional
// to (j+1)^-beta. On a finite point set that is the population-distance law
// itself, and it stays exact out at box scale where disk populations stop
// tracking disk areas.
GeoFixture gen_synthetic_geo_fixture(const FixtureSpec& spec);

std::string fit_result_json(const FitResult& fit, const std::string& estimate_name,
                            double estimate);
std::string bins_csv(const std::vector<BinPoint>& bins);

}  // namespace osn
