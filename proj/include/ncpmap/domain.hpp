#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "ncpmap/channels.hpp"

namespace ncpmap {

struct GridMode {
    // Lattice points per axis over the cube [-1, 1]^3; points outside the ball are dropped.
    int resolution = 64;
};

struct MonteCarloMode {
    std::size_t n = 100000;
    std::uint64_t seed = 0;
};

using ScanMode = std::variant<GridMode, MonteCarloMode>;

struct DomainPoint {
    BlochVector p;
    double lambda_min = 0.0;  // -inf when the map diverges at p
    bool in_domain = false;
    bool divergent = false;
};

struct DomainReport {
    std::string descriptor;
    std::vector<DomainPoint> points;
    std::size_t in_domain_count = 0;
    double fraction = 0.0;
    // Extent of the in-domain set; meaningful only when in_domain_count > 0.
    BlochVector lower{};
    BlochVector upper{};
    double max_radius = 0.0;
};

// Evaluate every ball point of the scan through apply + is_physical.
// Divergent evaluations are recorded as out-of-domain points.
DomainReport scan_domain(const AnyMap &map, const ScanMode &mode, std::string descriptor = {},
                         double physical_tol = kPhysicalTol);

// Fixed lines of the map found from its normal Kraus operators, each verified
// pointwise invariant at 16 points.  A map that fixes every state yields a
// single whole-ball sentinel.  A singular map reports its invariant set.
std::vector<FixedLine> detect_fixed_lines(const AnyMap &map);

// CSV: header "a1,a2,a3,lambda_min,in_domain", one row per point in scan order.
void write_domain_csv(const DomainReport &report, std::ostream &out);
void export_domain(const DomainReport &report, const std::filesystem::path &path);
std::vector<DomainPoint> read_domain_csv(std::istream &in);
std::vector<DomainPoint> import_domain(const std::filesystem::path &path);

}  // namespace ncpmap
