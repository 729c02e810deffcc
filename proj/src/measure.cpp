#include "ncpmap/measure.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>

#include "ncpmap/errors.hpp"

namespace ncpmap {

std::mt19937_64 shard_stream(std::uint64_t seed, std::uint64_t shard) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(shard), static_cast<std::uint32_t>(shard >> 32)};
    return std::mt19937_64(seq);
}

namespace {

PauliPoint cube_point(std::mt19937_64 &rng) {
    const double e1 = 2.0 * uniform01(rng) - 1.0;
    const double e2 = 2.0 * uniform01(rng) - 1.0;
    const double e3 = 2.0 * uniform01(rng) - 1.0;
    return {e1, e2, e3};
}

std::size_t shard_count(std::size_t n) { return (n + kShardSize - 1) / kShardSize; }

std::size_t shard_length(std::size_t n, std::size_t shard) {
    return std::min(kShardSize, n - shard * kShardSize);
}

// Sum of is_cp over all samples; shards are dealt round-robin to workers.
std::size_t count_cp(std::size_t n, std::uint64_t seed, unsigned workers,
                     const std::function<bool(const PauliPoint &)> &is_cp) {
    const std::size_t shards = shard_count(n);
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(shards, 1))));
    std::vector<std::size_t> counts(workers, 0);
    auto work = [&](unsigned w) {
        for (std::size_t s = w; s < shards; s += workers) {
            auto rng = shard_stream(seed, s);
            const std::size_t len = shard_length(n, s);
            for (std::size_t i = 0; i < len; ++i)
                if (is_cp(cube_point(rng))) ++counts[w];
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> threads;
        threads.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) threads.emplace_back(work, w);
    }
    std::size_t total = 0;
    for (auto c : counts) total += c;
    return total;
}

MeasureEstimate finish(std::string family, std::size_t n, std::uint64_t seed, unsigned workers,
                       std::size_t cp_count) {
    MeasureEstimate e;
    e.family = std::move(family);
    e.n = n;
    e.seed = seed;
    e.workers = workers;
    e.cp_count = cp_count;
    const double p = static_cast<double>(cp_count) / static_cast<double>(n);
    e.cp_fraction = p;
    e.ncp_fraction = 1.0 - p;
    e.ratio = cp_count > 0 ? (1.0 - p) / p : std::numeric_limits<double>::infinity();
    e.stderr_cp = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
    e.stderr_ratio = cp_count > 0 ? e.stderr_cp / (p * p) : std::numeric_limits<double>::infinity();
    return e;
}

void check_n(std::size_t n) {
    if (n < 1000) throw OutOfRange("measure estimation needs n >= 1000");
}

}  // namespace

std::vector<PauliPoint> sample_cube(std::uint64_t seed, std::size_t n) {
    std::vector<PauliPoint> pts;
    pts.reserve(n);
    for (std::size_t s = 0; s < shard_count(n); ++s) {
        auto rng = shard_stream(seed, s);
        for (std::size_t i = 0; i < shard_length(n, s); ++i) pts.push_back(cube_point(rng));
    }
    return pts;
}

MeasureEstimate estimate_pauli_measure(std::size_t n, std::uint64_t seed, unsigned workers) {
    check_n(n);
    const auto cp = count_cp(n, seed, workers, [](const PauliPoint &pt) {
        return classify(pauli_choi(pt)).classification == Classification::CP;
    });
    return finish("pauli", n, seed, workers, cp);
}

MeasureEstimate estimate_rotated_measure(const CMat2 &u, std::size_t n, std::uint64_t seed, unsigned workers) {
    check_n(n);
    if (!is_unitary(u, 1e-10)) throw NotUnitary("rotation matrix is not unitary");
    const auto cp = count_cp(n, seed, workers, [&u](const PauliPoint &pt) {
        return classify(rotated_pauli_choi(pt, u)).classification == Classification::CP;
    });
    return finish("rotated", n, seed, workers, cp);
}

std::string unrestricted_measure_explanation() {
    return "no volume measure exists for the unrestricted set of qubit maps: valid NCP maps have Choi "
           "eigenvalues that are unbounded (the double-CNOT intermediate map diverges at theta = pi/4), "
           "so the set is neither closed nor bounded; restrict to the Pauli cube (--family pauli) or a "
           "rotated Pauli cube (--family rotated)";
}

MeasureEstimate estimate_measure(MeasureFamily family, const CMat2 &u, std::size_t n, std::uint64_t seed,
                                 unsigned workers) {
    switch (family) {
        case MeasureFamily::Pauli: return estimate_pauli_measure(n, seed, workers);
        case MeasureFamily::Rotated: return estimate_rotated_measure(u, n, seed, workers);
        case MeasureFamily::Unrestricted: break;
    }
    throw RejectedByTheory(unrestricted_measure_explanation());
}

// ---------------------------------------------------------------------------

std::string to_string(DivergenceFamily f) {
    switch (f) {
        case DivergenceFamily::Cnot: return "cnot";
        case DivergenceFamily::ControlledQ: return "controlled-q";
        case DivergenceFamily::Identity: return "identity";
    }
    return "?";
}

DivergenceScan divergence_scan(const DivergenceFamilySpec &family, const std::vector<double> &grid, double bound) {
    DivergenceScan scan;
    scan.family = to_string(family.kind);
    scan.bound = bound;
    for (double x : grid) {
        AnyMap map = SuperOp{CMat4::identity()};
        switch (family.kind) {
            case DivergenceFamily::Cnot: map = cnot_intermediate_map(x); break;
            case DivergenceFamily::ControlledQ:
                map = controlled_q_intermediate_map({family.q_theta, family.q_phi, family.q_xi, x});
                break;
            case DivergenceFamily::Identity: break;
        }
        const auto *op = std::get_if<SuperOp>(&map);
        if (!op) throw OutOfRange("divergence scan grid contains a singular point (parameter " + std::to_string(x) + ")");
        const auto eig = eig_hermitian(choi_from_superop(*op).B, std::numeric_limits<double>::infinity());
        DivergencePoint pt{x};
        for (double v : eig.eigenvalues) {
            pt.max_abs_eigenvalue = std::max(pt.max_abs_eigenvalue, std::abs(v));
            pt.eigenvalue_sum += v;
        }
        pt.exceeds = pt.max_abs_eigenvalue > bound;
        scan.sup = std::max(scan.sup, pt.max_abs_eigenvalue);
        scan.bound_exceeded = scan.bound_exceeded || pt.exceeds;
        scan.points.push_back(pt);
    }
    return scan;
}

// ---------------------------------------------------------------------------

SignedKrausSet random_cp_kraus(std::mt19937_64 &rng, std::size_t count) {
    if (count > 4) throw OutOfRange("a qubit map needs at most 4 Kraus operators");
    std::normal_distribution<double> normal;
    if (count == 0) count = 1 + static_cast<std::size_t>(rng() % 4);
    std::vector<CMat2> g(count);
    CMat2 s;
    for (auto &m : g) {
        for (auto &e : m.entries()) e = cplx{normal(rng), normal(rng)};
        s += m.adjoint() * m;
    }
    // s^{-1/2} from the eigendecomposition of the positive matrix s.
    const auto eig = eig_hermitian(s, 1e-9);
    CMat2 inv_sqrt;
    for (std::size_t k = 0; k < 2; ++k)
        inv_sqrt += outer(eig.eigenvectors[k], eig.eigenvectors[k]) * (1.0 / std::sqrt(eig.eigenvalues[k]));
    SignedKrausSet out;
    for (const auto &m : g) out.terms.push_back({m * inv_sqrt, 1});
    return out;
}

CpBoundednessReport boundedness_check_cp(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    CpBoundednessReport report;
    report.n = n;
    report.min_eigenvalue = std::numeric_limits<double>::infinity();
    report.max_eigenvalue = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const auto verdict = classify(choi_from_superop(superop_from_kraus(random_cp_kraus(rng, 4))));
        const double hi = verdict.choi_eigenvalues.front();
        const double lo = verdict.choi_eigenvalues.back();
        report.min_eigenvalue = std::min(report.min_eigenvalue, lo);
        report.max_eigenvalue = std::max(report.max_eigenvalue, hi);
        if (lo < 0.0 || hi > 2.0 + kCpTol) ++report.violations;
    }
    return report;
}

}  // namespace ncpmap
