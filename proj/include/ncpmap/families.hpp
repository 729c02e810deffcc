#pragma once

#include <vector>

#include "ncpmap/channels.hpp"

namespace ncpmap {

// Numeric NCP example: unital, trace preserving, one Choi eigenvalue above 2.
ChoiMatrix bncp_example();

// ---------------------------------------------------------------------------
// Double CNOT.  The control qubit is cos(theta)|0> + sin(theta)|1>, the target
// is the system.  The first CNOT induces a bit-flip channel on the target; the
// intermediate map for the second CNOT is its inverse.

inline constexpr double kCnotSingularTol = 1e-8;

struct CnotIntermediate {
    double theta = 0.0;
    bool singular = false;  // |cos 2 theta| < kCnotSingularTol

    static CnotIntermediate at(double theta);
};

SuperOp cnot_first_map(double theta);

// inverse4(cnot_first_map(theta)), or a SingularMap on the sigma_x fixed line.
AnyMap cnot_intermediate_map(double theta);

// The sigma_x fixed-point line, p|+><+| + (1-p)|-><-|, normalized to unit trace.
QubitState fixed_point_line(double p);

// ---------------------------------------------------------------------------
// Non-Markovian dephasing.  Full map rho -> (1 - beta) rho + beta Z rho Z with
// beta(q) = [1 + nu (1 - q)] q; the off-diagonal multiplier 1 - 2 beta(q)
// vanishes at q = alpha_minus.

inline constexpr double kRateSingularTol = 1e-12;

class DephasingModel {
  public:
    // nu in (0, 1].  Throws OutOfRange otherwise.
    explicit DephasingModel(double nu);

    double nu() const { return nu_; }
    double alpha_minus() const { return alpha_minus_; }
    double alpha_plus() const { return alpha_plus_; }

  private:
    double nu_;
    double alpha_minus_;
    double alpha_plus_;
};

// lambda(q) = (mean(alpha) - q) / ((q - alpha_plus)(q - alpha_minus)).
// Requires q in [0, 1/2]; throws RateSingularity within kRateSingularTol of alpha_minus.
double dephasing_rate(const DephasingModel &model, double q);

// Requires q in [0, 1].
double dephasing_beta(const DephasingModel &model, double q);

// 1 - 2 beta(q).
double dephasing_multiplier(const DephasingModel &model, double q);

SuperOp dephasing_map(const DephasingModel &model, double q);

// Lambda(q2) o Lambda(q1)^-1, or a SingularMap on the a3 axis when q1 hits alpha_minus.
AnyMap dephasing_intermediate(const DephasingModel &model, double q1, double q2);

// ---------------------------------------------------------------------------
// Controlled-Q generalization: control-Q = |0><0| x 1 + |1><1| x Q with
// Q(theta, phi, xi) = Rz(phi) Ry(theta) Rz(xi).

struct ControlledUnitaryFamily {
    double theta = 0.0;
    double phi = 0.0;
    double xi = 0.0;
    double control_angle = 0.0;

    friend auto operator<=>(const ControlledUnitaryFamily &, const ControlledUnitaryFamily &) = default;
};

CMat2 rz(double angle);
CMat2 ry(double angle);
CMat2 zyz_unitary(double theta, double phi, double xi);

// Reduced map on the target: cos^2(c) rho + sin^2(c) Q rho Q^dag.
SuperOp controlled_q_first_map(const ControlledUnitaryFamily &fam);

// Inverse of the first map, or a SingularMap when the first map is singular.
AnyMap controlled_q_intermediate_map(const ControlledUnitaryFamily &fam);

struct ControlledQGrid {
    std::vector<double> thetas;
    std::vector<double> phis;
    std::vector<double> xis;
    std::vector<double> control_angles;
};

inline constexpr double kLocusDetTol = 1e-8;

// Grid points with |det(first map)| < kLocusDetTol, sorted.
std::vector<ControlledUnitaryFamily> controlled_q_singular_locus(const ControlledQGrid &grid);

// n evenly spaced values from lo to hi inclusive.
std::vector<double> linspace(double lo, double hi, std::size_t n);

// ---------------------------------------------------------------------------
// Pauli maps: unital maps with Bloch action diag(eta1, eta2, eta3).

struct PauliPoint {
    double eta1 = 0.0;
    double eta2 = 0.0;
    double eta3 = 0.0;
};

// Weights p_0..p_3 of the I, X, Y, Z conjugations.
std::array<double, 4> pauli_weights(const PauliPoint &point);

// Throws OutOfCube if any |eta_i| > 1.
ChoiMatrix pauli_choi(const PauliPoint &point);

// Pauli map with every Pauli replaced by U sigma U^dag.  Throws NotUnitary.
ChoiMatrix rotated_pauli_choi(const PauliPoint &point, const CMat2 &u);

}  // namespace ncpmap
