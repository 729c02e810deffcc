#include "ncpmap/domain.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "ncpmap/errors.hpp"

namespace ncpmap {

namespace {

std::vector<BlochVector> grid_points(int resolution) {
    const int r = resolution;
    const double den = static_cast<double>(r - 1);
    std::vector<BlochVector> pts;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            for (int k = 0; k < r; ++k) {
                // Integer numerators keep the lattice exactly symmetric under a -> -a.
                const BlochVector p{(2.0 * i - den) / den, (2.0 * j - den) / den, (2.0 * k - den) / den};
                if (in_ball(p)) pts.push_back(p);
            }
    return pts;
}

DomainPoint evaluate(const AnyMap &map, const BlochVector &p, double tol) {
    DomainPoint dp{p};
    try {
        const auto phys = is_physical(apply(map, p), tol);
        dp.lambda_min = phys.min_eigenvalue;
        dp.in_domain = phys.physical;
    } catch (const DivergentMap &) {
        dp.lambda_min = -std::numeric_limits<double>::infinity();
        dp.divergent = true;
    }
    return dp;
}

BlochVector canonical_axis(BlochVector a) {
    for (double c : {a.a1, a.a2, a.a3}) {
        if (std::abs(c) > 1e-12) {
            if (c < 0.0) a = -a;
            break;
        }
    }
    return a;
}

}  // namespace

DomainReport scan_domain(const AnyMap &map, const ScanMode &mode, std::string descriptor, double physical_tol) {
    std::vector<BlochVector> pts;
    if (const auto *grid = std::get_if<GridMode>(&mode)) {
        if (grid->resolution < 8) throw OutOfRange("grid resolution must be at least 8");
        pts = grid_points(grid->resolution);
    } else {
        const auto &mc = std::get<MonteCarloMode>(mode);
        pts = sample_ball(mc.seed, mc.n);
    }

    DomainReport report;
    report.descriptor = std::move(descriptor);
    report.points.reserve(pts.size());
    constexpr double inf = std::numeric_limits<double>::infinity();
    report.lower = {inf, inf, inf};
    report.upper = {-inf, -inf, -inf};
    for (const auto &p : pts) {
        auto dp = evaluate(map, p, physical_tol);
        if (dp.in_domain) {
            ++report.in_domain_count;
            report.lower = {std::min(report.lower.a1, p.a1), std::min(report.lower.a2, p.a2),
                            std::min(report.lower.a3, p.a3)};
            report.upper = {std::max(report.upper.a1, p.a1), std::max(report.upper.a2, p.a2),
                            std::max(report.upper.a3, p.a3)};
            report.max_radius = std::max(report.max_radius, p.norm());
        }
        report.points.push_back(dp);
    }
    if (report.in_domain_count == 0) report.lower = report.upper = {};
    report.fraction = static_cast<double>(report.in_domain_count) / static_cast<double>(report.points.size());
    return report;
}

std::vector<FixedLine> detect_fixed_lines(const AnyMap &map) {
    if (const auto *singular = std::get_if<SingularMap>(&map)) return {singular->invariant_set};

    const auto &op = std::get<SuperOp>(map);
    SignedKrausSet kraus;
    try {
        kraus = kraus_from_choi(choi_from_superop(op));
    } catch (const NotHermitian &) {
        return {};
    }
    const double tol = 1e-10 * std::max(1.0, op.A.max_abs());
    auto invariant_at = [&](const BlochVector &p) {
        return max_abs_diff(apply(op, p).rho, bloch_to_state(p).rho) <= tol;
    };

    std::vector<FixedLine> lines;
    bool whole_ball_candidate = kraus.terms.empty();
    for (const auto &term : kraus.terms) {
        const auto axis = kraus_axis(term.K);
        if (!axis) continue;
        if (axis->whole_ball) {
            whole_ball_candidate = true;
            continue;
        }
        const FixedLine line{canonical_axis(axis->axis), false};
        bool ok = true;
        for (int i = 0; i < 16 && ok; ++i) ok = invariant_at(line.at(-1.0 + 2.0 * i / 15.0));
        if (ok && std::none_of(lines.begin(), lines.end(), [&](const FixedLine &l) {
                return (l.axis - line.axis).norm() < 1e-9;
            }))
            lines.push_back(line);
    }

    if (whole_ball_candidate) {
        const auto probes = sample_ball(0x5eed, 16);
        if (std::all_of(probes.begin(), probes.end(), invariant_at)) return {FixedLine{{}, true}};
    }
    std::sort(lines.begin(), lines.end(), [](const FixedLine &a, const FixedLine &b) { return a.axis < b.axis; });
    return lines;
}

void write_domain_csv(const DomainReport &report, std::ostream &out) {
    out << "a1,a2,a3,lambda_min,in_domain\n";
    char buf[64];
    for (const auto &dp : report.points) {
        std::snprintf(buf, sizeof buf, "%.12g", dp.lambda_min);
        out << to_csv(dp.p) << ',' << buf << ',' << (dp.in_domain ? 1 : 0) << '\n';
    }
}

void export_domain(const DomainReport &report, const std::filesystem::path &path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    write_domain_csv(report, out);
    out.flush();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::vector<DomainPoint> read_domain_csv(std::istream &in) {
    std::string line;
    if (!std::getline(in, line) || line != "a1,a2,a3,lambda_min,in_domain")
        throw IoError("missing domain CSV header");
    std::vector<DomainPoint> pts;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string f[5];
        for (auto &field : f)
            if (!std::getline(row, field, ',')) throw IoError("malformed domain CSV row: '" + line + "'");
        DomainPoint dp;
        try {
            dp.p = {std::stod(f[0]), std::stod(f[1]), std::stod(f[2])};
            dp.lambda_min = std::stod(f[3]);
        } catch (const std::exception &) {
            throw IoError("malformed domain CSV row: '" + line + "'");
        }
        dp.in_domain = f[4] == "1";
        dp.divergent = std::isinf(dp.lambda_min);
        pts.push_back(dp);
    }
    return pts;
}

std::vector<DomainPoint> import_domain(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    return read_domain_csv(in);
}

}  // namespace ncpmap
