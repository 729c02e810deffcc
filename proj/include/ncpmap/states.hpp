#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ncpmap/matops.hpp"

namespace ncpmap {

// Bloch coordinates.  Points outside the unit ball are representable so that
// the image of a state under a non-positive map can still be described.
struct BlochVector {
    double a1 = 0.0;
    double a2 = 0.0;
    double a3 = 0.0;

    double norm() const;
    BlochVector operator-() const { return {-a1, -a2, -a3}; }
    friend BlochVector operator+(const BlochVector &x, const BlochVector &y) {
        return {x.a1 + y.a1, x.a2 + y.a2, x.a3 + y.a3};
    }
    friend BlochVector operator-(const BlochVector &x, const BlochVector &y) {
        return {x.a1 - y.a1, x.a2 - y.a2, x.a3 - y.a3};
    }
    friend BlochVector operator*(double s, const BlochVector &x) { return {s * x.a1, s * x.a2, s * x.a3}; }
    friend bool operator==(const BlochVector &, const BlochVector &) = default;
    friend auto operator<=>(const BlochVector &, const BlochVector &) = default;
};

inline constexpr double kBallTol = 1e-12;
inline constexpr double kPhysicalTol = 1e-10;

bool in_ball(const BlochVector &a, double tol = kBallTol);

struct QubitState {
    CMat2 rho;
};

// rho = (1 + a.sigma) / 2
QubitState bloch_to_state(const BlochVector &a);

// a_i = tr(rho sigma_i)
BlochVector state_to_bloch(const QubitState &s);

struct Physicality {
    bool physical = false;
    double min_eigenvalue = 0.0;
};

// Eigenvalues of the Hermitian part of rho, ascending.
std::array<double, 2> eigenvalues2(const CMat2 &rho);

// Both eigenvalues of rho >= -tol.
Physicality is_physical(const QubitState &s, double tol = kPhysicalTol);

// n points uniformly distributed in the unit ball.  The stream is a prefix
// sequence: sample_ball(seed, n) is the first n points of sample_ball(seed, m) for m > n.
std::vector<BlochVector> sample_ball(std::uint64_t seed, std::size_t n);

// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw.
template <typename Rng>
double uniform01(Rng &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Draw a single ball point from an arbitrary 64-bit engine.
BlochVector sample_ball_point(std::mt19937_64 &rng);

// "a1,a2,a3" with 12 significant digits.
std::string to_csv(const BlochVector &a);
BlochVector bloch_from_csv(const std::string &row);

}  // namespace ncpmap
