#include "ncpmap/families.hpp"

#include <algorithm>
#include <cmath>

#include "ncpmap/errors.hpp"

namespace ncpmap {

ChoiMatrix bncp_example() {
    return {CMat4{0.20, 0.95, 0.70, 0.10,   //
                  0.95, 0.80, 0.30, -0.70,  //
                  0.70, 0.30, 0.80, -0.95,  //
                  0.10, -0.70, -0.95, 0.20}};
}

// ---------------------------------------------------------------------------

CnotIntermediate CnotIntermediate::at(double theta) {
    return {theta, std::abs(std::cos(2.0 * theta)) < kCnotSingularTol};
}

SuperOp cnot_first_map(double theta) {
    const double c2 = std::cos(theta) * std::cos(theta);
    const double s2 = std::sin(theta) * std::sin(theta);
    return {CMat4::identity() * c2 + kron(pauli::x(), pauli::x()) * s2};
}

AnyMap cnot_intermediate_map(double theta) {
    const SingularMap singular{"cnot", theta, FixedLine{{1.0, 0.0, 0.0}, false}};
    if (CnotIntermediate::at(theta).singular) return singular;
    try {
        return SuperOp{inverse4(cnot_first_map(theta).A)};
    } catch (const SingularMatrix &) {
        return singular;
    }
}

QubitState fixed_point_line(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw OutOfRange("fixed_point_line needs p in [0, 1]");
    const double off = 0.5 * (2.0 * p - 1.0);
    return {CMat2{0.5, off, off, 0.5}};
}

// ---------------------------------------------------------------------------

DephasingModel::DephasingModel(double nu) : nu_(nu) {
    if (!(nu > 0.0 && nu <= 1.0)) throw OutOfRange("dephasing nu must lie in (0, 1]");
    const double root = std::sqrt(nu * nu + 1.0);
    alpha_minus_ = (nu + 1.0 - root) / (2.0 * nu);
    alpha_plus_ = (nu + 1.0 + root) / (2.0 * nu);
}

double dephasing_rate(const DephasingModel &model, double q) {
    if (!(q >= 0.0 && q <= 0.5)) throw OutOfRange("dephasing rate needs q in [0, 1/2]");
    const double am = model.alpha_minus();
    const double ap = model.alpha_plus();
    if (std::abs(q - am) < kRateSingularTol)
        throw RateSingularity("dephasing rate diverges at q = alpha_minus = " + std::to_string(am));
    return (0.5 * (am + ap) - q) / ((q - ap) * (q - am));
}

double dephasing_beta(const DephasingModel &model, double q) {
    if (!(q >= 0.0 && q <= 1.0)) throw OutOfRange("dephasing beta needs q in [0, 1]");
    return (1.0 + model.nu() * (1.0 - q)) * q;
}

double dephasing_multiplier(const DephasingModel &model, double q) { return 1.0 - 2.0 * dephasing_beta(model, q); }

SuperOp dephasing_map(const DephasingModel &model, double q) {
    const double beta = dephasing_beta(model, q);
    SignedKrausSet k;
    k.terms.push_back({pauli::id() * std::sqrt(std::abs(1.0 - beta)), 1.0 - beta >= 0.0 ? 1 : -1});
    k.terms.push_back({pauli::z() * std::sqrt(std::abs(beta)), beta >= 0.0 ? 1 : -1});
    return superop_from_kraus(k);
}

AnyMap dephasing_intermediate(const DephasingModel &model, double q1, double q2) {
    if (!(q1 >= 0.0 && q1 <= q2 && q2 <= 0.5))
        throw OutOfRange("dephasing intermediate map needs 0 <= q1 <= q2 <= 1/2");
    const SingularMap singular{"dephasing", q1, FixedLine{{0.0, 0.0, 1.0}, false}};
    if (std::abs(q1 - model.alpha_minus()) < kRateSingularTol) return singular;
    try {
        return SuperOp{dephasing_map(model, q2).A * inverse4(dephasing_map(model, q1).A)};
    } catch (const SingularMatrix &) {
        return singular;
    }
}

// ---------------------------------------------------------------------------

CMat2 rz(double angle) {
    return CMat2{std::polar(1.0, -0.5 * angle), 0.0, 0.0, std::polar(1.0, 0.5 * angle)};
}

CMat2 ry(double angle) {
    const double c = std::cos(0.5 * angle);
    const double s = std::sin(0.5 * angle);
    return CMat2{c, -s, s, c};
}

CMat2 zyz_unitary(double theta, double phi, double xi) { return rz(phi) * ry(theta) * rz(xi); }

SuperOp controlled_q_first_map(const ControlledUnitaryFamily &fam) {
    const double c = std::cos(fam.control_angle);
    const double s = std::sin(fam.control_angle);
    const CMat2 q = zyz_unitary(fam.theta, fam.phi, fam.xi);
    return {CMat4::identity() * (c * c) + conjugation(q).A * (s * s)};
}

AnyMap controlled_q_intermediate_map(const ControlledUnitaryFamily &fam) {
    const SuperOp first = controlled_q_first_map(fam);
    const auto make_singular = [&fam] {
        const auto axis = kraus_axis(zyz_unitary(fam.theta, fam.phi, fam.xi));
        return SingularMap{"controlled-q", fam.control_angle, axis.value_or(FixedLine{{}, true})};
    };
    // det = |cos^2 c + sin^2 c e^{i delta}|^2; compare the modulus itself, as for the CNOT.
    if (std::sqrt(std::abs(det4(first.A))) < kCnotSingularTol) return make_singular();
    try {
        return SuperOp{inverse4(first.A)};
    } catch (const SingularMatrix &) {
        return make_singular();
    }
}

std::vector<ControlledUnitaryFamily> controlled_q_singular_locus(const ControlledQGrid &grid) {
    std::vector<ControlledUnitaryFamily> locus;
    for (double th : grid.thetas)
        for (double ph : grid.phis)
            for (double xi : grid.xis)
                for (double ca : grid.control_angles) {
                    const ControlledUnitaryFamily fam{th, ph, xi, ca};
                    if (std::abs(det4(controlled_q_first_map(fam).A)) < kLocusDetTol) locus.push_back(fam);
                }
    std::sort(locus.begin(), locus.end());
    return locus;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    if (n == 0) return {};
    if (n == 1) return {lo};
    std::vector<double> out(n);
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) out[i] = lo + step * static_cast<double>(i);
    out.back() = hi;
    return out;
}

// ---------------------------------------------------------------------------

std::array<double, 4> pauli_weights(const PauliPoint &pt) {
    return {0.25 * (1.0 + pt.eta1 + pt.eta2 + pt.eta3), 0.25 * (1.0 + pt.eta1 - pt.eta2 - pt.eta3),
            0.25 * (1.0 - pt.eta1 + pt.eta2 - pt.eta3), 0.25 * (1.0 - pt.eta1 - pt.eta2 + pt.eta3)};
}

namespace {

void check_cube(const PauliPoint &pt) {
    constexpr double tol = 1e-12;
    if (std::abs(pt.eta1) > 1.0 + tol || std::abs(pt.eta2) > 1.0 + tol || std::abs(pt.eta3) > 1.0 + tol)
        throw OutOfCube("Pauli transfer eigenvalues must lie in [-1, 1]");
}

}  // namespace

ChoiMatrix pauli_choi(const PauliPoint &point) {
    check_cube(point);
    const auto w = pauli_weights(point);
    ChoiMatrix out;
    for (int i = 0; i < 4; ++i) {
        const CVec4 v = vec(pauli::by_index(i));
        out.B += outer(v, v) * w[i];
    }
    return out;
}

ChoiMatrix rotated_pauli_choi(const PauliPoint &point, const CMat2 &u) {
    check_cube(point);
    if (!is_unitary(u, 1e-10)) throw NotUnitary("rotation matrix is not unitary");
    const auto w = pauli_weights(point);
    const CMat2 ud = u.adjoint();
    ChoiMatrix out;
    for (int i = 0; i < 4; ++i) {
        const CVec4 v = vec(u * pauli::by_index(i) * ud);
        out.B += outer(v, v) * w[i];
    }
    return out;
}

}  // namespace ncpmap
