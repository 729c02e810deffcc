#include "ncpmap/states.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "ncpmap/errors.hpp"

namespace ncpmap {

double BlochVector::norm() const { return std::sqrt(a1 * a1 + a2 * a2 + a3 * a3); }

bool in_ball(const BlochVector &a, double tol) { return a.a1 * a.a1 + a.a2 * a.a2 + a.a3 * a.a3 <= 1.0 + tol; }

QubitState bloch_to_state(const BlochVector &a) {
    return {CMat2{0.5 * (1.0 + a.a3), cplx{0.5 * a.a1, -0.5 * a.a2}, cplx{0.5 * a.a1, 0.5 * a.a2},
                  0.5 * (1.0 - a.a3)}};
}

BlochVector state_to_bloch(const QubitState &s) {
    const auto &r = s.rho;
    return {(r(0, 1) + r(1, 0)).real(), (cplx{0.0, 1.0} * (r(0, 1) - r(1, 0))).real(), (r(0, 0) - r(1, 1)).real()};
}

std::array<double, 2> eigenvalues2(const CMat2 &rho) {
    const double a = rho(0, 0).real();
    const double d = rho(1, 1).real();
    const cplx b = 0.5 * (rho(0, 1) + std::conj(rho(1, 0)));
    const double mean = 0.5 * (a + d);
    const double half_gap = std::hypot(0.5 * (a - d), std::abs(b));
    return {mean - half_gap, mean + half_gap};
}

Physicality is_physical(const QubitState &s, double tol) {
    const double lo = eigenvalues2(s.rho)[0];
    return {lo >= -tol, lo};
}

BlochVector sample_ball_point(std::mt19937_64 &rng) {
    const double z = 2.0 * uniform01(rng) - 1.0;
    const double phi = 2.0 * std::numbers::pi * uniform01(rng);
    const double r = std::cbrt(uniform01(rng));
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {r * rho * std::cos(phi), r * rho * std::sin(phi), r * z};
}

std::vector<BlochVector> sample_ball(std::uint64_t seed, std::size_t n) {
    if (n == 0) throw OutOfRange("sample_ball needs n >= 1");
    std::mt19937_64 rng(seed);
    std::vector<BlochVector> pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) pts.push_back(sample_ball_point(rng));
    return pts;
}

std::string to_csv(const BlochVector &a) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g", a.a1, a.a2, a.a3);
    return buf;
}

BlochVector bloch_from_csv(const std::string &row) {
    std::istringstream in(row);
    std::string f1, f2, f3;
    if (!std::getline(in, f1, ',') || !std::getline(in, f2, ',') || !std::getline(in, f3, ','))
        throw IoError("malformed Bloch CSV row: '" + row + "'");
    try {
        return {std::stod(f1), std::stod(f2), std::stod(f3)};
    } catch (const std::exception &) {
        throw IoError("malformed Bloch CSV row: '" + row + "'");
    }
}

}  // namespace ncpmap
