#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ncpmap/families.hpp"

namespace ncpmap {

// ---------------------------------------------------------------------------
// Volume measure of CP vs NCP maps inside the cube of positive Pauli maps.
//
// Samples are drawn in fixed-size shards.  Shard s uses its own engine seeded
// from (seed, s), so the i-th sample never depends on how shards are assigned
// to workers and the estimate is identical for any worker count.

inline constexpr std::size_t kShardSize = 8192;

std::mt19937_64 shard_stream(std::uint64_t seed, std::uint64_t shard);

// The first n cube points in the order the estimators classify them.
std::vector<PauliPoint> sample_cube(std::uint64_t seed, std::size_t n);

enum class MeasureFamily { Pauli, Rotated, Unrestricted };

struct MeasureEstimate {
    std::string family;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    std::size_t cp_count = 0;
    double cp_fraction = 0.0;
    double ncp_fraction = 0.0;
    double ratio = 0.0;         // ncp / cp
    double stderr_cp = 0.0;     // sqrt(p (1 - p) / n) for the CP indicator
    double stderr_ratio = 0.0;  // first-order propagation, stderr_cp / p^2
};

// Requires n >= 1000.
MeasureEstimate estimate_pauli_measure(std::size_t n, std::uint64_t seed, unsigned workers = 1);

// Same sample stream with every Choi matrix rotated by u.  Throws NotUnitary.
MeasureEstimate estimate_rotated_measure(const CMat2 &u, std::size_t n, std::uint64_t seed, unsigned workers = 1);

// Throws RejectedByTheory for MeasureFamily::Unrestricted: the NCP maps are
// unbounded, so there is no finite volume to normalize against.
MeasureEstimate estimate_measure(MeasureFamily family, const CMat2 &u, std::size_t n, std::uint64_t seed,
                                 unsigned workers = 1);

std::string unrestricted_measure_explanation();

// ---------------------------------------------------------------------------
// Divergence of intermediate-map Choi spectra.

enum class DivergenceFamily { Cnot, ControlledQ, Identity };

struct DivergenceFamilySpec {
    DivergenceFamily kind = DivergenceFamily::Cnot;
    // Q(theta, phi, xi) for ControlledQ; the control angle is the scanned parameter.
    double q_theta = 0.0;
    double q_phi = 0.0;
    double q_xi = 0.0;
};

std::string to_string(DivergenceFamily f);

struct DivergencePoint {
    double parameter = 0.0;
    double max_abs_eigenvalue = 0.0;
    double eigenvalue_sum = 0.0;
    bool exceeds = false;
};

struct DivergenceScan {
    std::string family;
    double bound = 0.0;
    std::vector<DivergencePoint> points;
    double sup = 0.0;
    bool bound_exceeded = false;
};

// Throws OutOfRange if a grid point is an exact singularity.
DivergenceScan divergence_scan(const DivergenceFamilySpec &family, const std::vector<double> &grid, double bound);

// ---------------------------------------------------------------------------

struct CpBoundednessReport {
    std::size_t n = 0;
    std::size_t violations = 0;
    double min_eigenvalue = 0.0;
    double max_eigenvalue = 0.0;
};

// Random trace-preserving Kraus set of `count` normalized Ginibre operators;
// count = 0 draws the count uniformly from 1..4.
SignedKrausSet random_cp_kraus(std::mt19937_64 &rng, std::size_t count = 0);

// Choi spectra of n random CP maps with four Kraus operators (full Kraus rank
// almost surely); a violation is any eigenvalue outside [0, 2 + kCpTol].
CpBoundednessReport boundedness_check_cp(std::size_t n, std::uint64_t seed);

}  // namespace ncpmap
