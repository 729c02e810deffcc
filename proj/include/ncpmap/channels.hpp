#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ncpmap/matops.hpp"
#include "ncpmap/states.hpp"

namespace ncpmap {

// Matrix acting on row-major vectorized density matrices.
struct SuperOp {
    CMat4 A;
};

// Dynamical (Choi) matrix, the reshuffle of the superoperator.
struct ChoiMatrix {
    CMat4 B;
};

struct SignedKraus {
    CMat2 K;
    int sign = 1;
};

// rho -> sum_i sign_i K_i rho K_i^dag.  At most four terms.
struct SignedKrausSet {
    std::vector<SignedKraus> terms;
};

// Segment {t * axis : t in [-1, 1]} of the Bloch ball, or the whole ball.
struct FixedLine {
    BlochVector axis{};
    bool whole_ball = false;

    bool contains(const BlochVector &p, double tol = 1e-10) const;
    // Point at parameter t in [-1, 1].
    BlochVector at(double t) const;
    friend bool operator==(const FixedLine &, const FixedLine &) = default;
};

// An intermediate map at a parameter where it diverges.  It acts as the
// identity on its invariant line and is undefined everywhere else.
struct SingularMap {
    std::string family;
    double parameter = 0.0;
    FixedLine invariant_set;
};

using AnyMap = std::variant<SuperOp, SingularMap>;

inline constexpr double kTpTol = 1e-10;
inline constexpr double kCpTol = 1e-9;
inline constexpr double kKrausCutoff = 1e-12;

bool is_trace_preserving(const SuperOp &m, double tol = kTpTol);
bool is_unital(const SuperOp &m, double tol = kTpTol);

// Throws NotHermitian when the map does not preserve Hermiticity.
ChoiMatrix choi_from_superop(const SuperOp &a);
SuperOp superop_from_choi(const ChoiMatrix &b);

// One signed term per Choi eigenpair with |mu| > kKrausCutoff:
// K = sqrt(|mu|) unvec(v), sign = sign(mu).
SignedKrausSet kraus_from_choi(const ChoiMatrix &b);
SuperOp superop_from_kraus(const SignedKrausSet &k);

// Superoperator of rho -> K rho K^dag.
SuperOp conjugation(const CMat2 &k);

QubitState apply(const SuperOp &m, const QubitState &rho);
QubitState apply(const SuperOp &m, const BlochVector &p);
// Throws DivergentMap off the invariant set.
QubitState apply(const SingularMap &m, const BlochVector &p);
QubitState apply(const AnyMap &m, const BlochVector &p);

enum class Classification { CP, NCP };

struct CPVerdict {
    Classification classification = Classification::CP;
    std::array<double, 4> choi_eigenvalues{};
    double min_eigenvalue = 0.0;
};

CPVerdict classify(const ChoiMatrix &b, double cp_tol = kCpTol);

// Unital trace-preserving Choi matrix in the (a, x, y, z, w) parametrization.
ChoiMatrix unital_choi(double a, cplx x, cplx y, cplx z, cplx w);

// Closed-form output spectrum (lambda_plus, lambda_minus) of the real unital
// map unital_choi(a, x, y, z, w) applied to the Bloch point p.
std::pair<double, double> output_spectrum_unital(double a, double x, double y, double z, double w,
                                                 const BlochVector &p);

// Eigenbasis axis of a normal 2x2 operator (unitaries, Hermitian operators,
// projectors).  Returns std::nullopt if k is not normal; a FixedLine with
// whole_ball set if k is proportional to the identity.
std::optional<FixedLine> kraus_axis(const CMat2 &k, double tol = 1e-9);

struct ProbeConfig {
    std::size_t ball_samples = 10000;
    std::size_t line_points = 64;
    std::uint64_t seed = 0;
    // Additional user supplied canonical probes.
    std::vector<BlochVector> extra_points;
    std::size_t max_sampled_witnesses = 16;
    double physical_tol = kPhysicalTol;
};

enum class ValidityStatus { FullDomain, PartialDomain, MeasureZeroDomain, NoWitnessFound };

std::string to_string(ValidityStatus s);
std::string to_string(Classification c);

struct ValidityVerdict {
    ValidityStatus status = ValidityStatus::NoWitnessFound;
    // Sorted lexicographically by Bloch coordinates.
    std::vector<BlochVector> witnesses;
    double sampled_fraction = 0.0;
    std::size_t canonical_probes = 0;
    std::size_t canonical_passed = 0;
    std::size_t sampled_probes = 0;
    std::size_t local_probes = 0;
    std::size_t local_passed = 0;
};

// Search for points of the positivity domain.  Probes, in order:
//  1. canonical: maximally mixed state, eigenstates of every normal Kraus
//     operator, points along the eigen-axis of each such operator, extra points;
//  2. a uniform ball sample;
//  3. local probes in shrinking neighbourhoods of every canonical witness,
//     which detect thin positive-volume domains around a fixed line.
// Sampling cannot prove emptiness, so there is no "invalid" outcome.
ValidityVerdict check_validity(const AnyMap &m, const ProbeConfig &probes = {});

}  // namespace ncpmap
