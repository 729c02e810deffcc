#include "ncpmap/channels.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "ncpmap/errors.hpp"

namespace ncpmap {

namespace {

// Hermiticity tolerance scaled to the matrix magnitude; divergent maps near a
// singularity have entries of order 1e7.
double scaled_hermitian_tol(const CMat4 &m) { return kHermitianTol * std::max(1.0, m.max_abs()); }

}  // namespace

bool FixedLine::contains(const BlochVector &p, double tol) const {
    if (whole_ball) return in_ball(p);
    const double t = p.a1 * axis.a1 + p.a2 * axis.a2 + p.a3 * axis.a3;
    const BlochVector perp{p.a1 - t * axis.a1, p.a2 - t * axis.a2, p.a3 - t * axis.a3};
    return perp.norm() <= tol && std::abs(t) <= 1.0 + tol;
}

BlochVector FixedLine::at(double t) const {
    if (whole_ball) return {0.0, 0.0, t};
    return {t * axis.a1, t * axis.a2, t * axis.a3};
}

bool is_trace_preserving(const SuperOp &m, double tol) {
    for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) {
            const cplx s = m.A(0, 2 * k + l) + m.A(3, 2 * k + l);
            if (std::abs(s - (k == l ? 1.0 : 0.0)) > tol) return false;
        }
    return true;
}

bool is_unital(const SuperOp &m, double tol) {
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            const cplx s = m.A(2 * i + j, 0) + m.A(2 * i + j, 3);
            if (std::abs(s - (i == j ? 1.0 : 0.0)) > tol) return false;
        }
    return true;
}

ChoiMatrix choi_from_superop(const SuperOp &a) {
    CMat4 b = reshuffle(a.A);
    const double dev = hermiticity_deviation(b);
    if (dev > scaled_hermitian_tol(b)) throw NotHermitian(dev);
    return {b};
}

SuperOp superop_from_choi(const ChoiMatrix &b) { return {reshuffle(b.B)}; }

SignedKrausSet kraus_from_choi(const ChoiMatrix &b) {
    const auto eig = eig_hermitian(b.B, scaled_hermitian_tol(b.B));
    SignedKrausSet out;
    for (std::size_t i = 0; i < 4; ++i) {
        const double mu = eig.eigenvalues[i];
        if (std::abs(mu) <= kKrausCutoff) continue;
        out.terms.push_back({unvec(eig.eigenvectors[i]) * std::sqrt(std::abs(mu)), mu > 0.0 ? 1 : -1});
    }
    return out;
}

SuperOp conjugation(const CMat2 &k) { return {kron(k, k.conj())}; }

SuperOp superop_from_kraus(const SignedKrausSet &k) {
    SuperOp out;
    for (const auto &term : k.terms) out.A += conjugation(term.K).A * static_cast<double>(term.sign);
    return out;
}

QubitState apply(const SuperOp &m, const QubitState &rho) { return {unvec(m.A * vec(rho.rho))}; }

QubitState apply(const SuperOp &m, const BlochVector &p) { return apply(m, bloch_to_state(p)); }

QubitState apply(const SingularMap &m, const BlochVector &p) {
    if (!m.invariant_set.contains(p))
        throw DivergentMap("singular " + m.family + " map diverges at Bloch point (" + to_csv(p) + ")");
    return bloch_to_state(p);
}

QubitState apply(const AnyMap &m, const BlochVector &p) {
    return std::visit([&p](const auto &map) { return apply(map, p); }, m);
}

CPVerdict classify(const ChoiMatrix &b, double cp_tol) {
    const auto eig = eig_hermitian(b.B, scaled_hermitian_tol(b.B));
    CPVerdict v;
    v.choi_eigenvalues = eig.eigenvalues;
    v.min_eigenvalue = eig.eigenvalues[3];
    v.classification = v.min_eigenvalue >= -cp_tol ? Classification::CP : Classification::NCP;
    return v;
}

ChoiMatrix unital_choi(double a, cplx x, cplx y, cplx z, cplx w) {
    using std::conj;
    return {CMat4{a,       x,        y,        z,       //
                  conj(x), 1.0 - a,  w,        -y,      //
                  conj(y), conj(w),  1.0 - a,  -x,      //
                  conj(z), -conj(y), -conj(x), a}};
}

std::pair<double, double> output_spectrum_unital(double a, double x, double y, double z, double w,
                                                 const BlochVector &p) {
    const double a1 = p.a1, a2 = p.a2, a3 = p.a3;
    const double radicand = a1 * a1 * ((w + z) * (w + z) + 4.0 * x * x) +
                            4.0 * a1 * a3 * ((2.0 * a - 1.0) * x + y * (w + z)) + a2 * a2 * (w - z) * (w - z) +
                            a3 * a3 * ((1.0 - 2.0 * a) * (1.0 - 2.0 * a) + 4.0 * y * y);
    const double root = std::sqrt(std::max(0.0, radicand));
    return {0.5 * (1.0 + root), 0.5 * (1.0 - root)};
}

std::optional<FixedLine> kraus_axis(const CMat2 &k, double tol) {
    std::array<cplx, 3> c{};
    for (int j = 1; j <= 3; ++j) c[j - 1] = 0.5 * (k * pauli::by_index(j)).trace();
    const double cnorm = std::sqrt(std::norm(c[0]) + std::norm(c[1]) + std::norm(c[2]));
    const double scale = std::max(k.max_abs(), 1e-300);
    if (cnorm <= tol * scale) return FixedLine{{}, true};

    std::size_t m = 0;
    for (std::size_t j = 1; j < 3; ++j)
        if (std::abs(c[j]) > std::abs(c[m])) m = j;
    const cplx phase = std::conj(c[m]) / std::abs(c[m]);
    std::array<double, 3> n{};
    double im = 0.0;
    for (std::size_t j = 0; j < 3; ++j) {
        const cplx r = c[j] * phase;
        n[j] = r.real();
        im = std::max(im, std::abs(r.imag()));
    }
    if (im > tol * cnorm) return std::nullopt;
    const double nn = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
    return FixedLine{{n[0] / nn, n[1] / nn, n[2] / nn}, false};
}

std::string to_string(ValidityStatus s) {
    switch (s) {
        case ValidityStatus::FullDomain: return "FullDomain";
        case ValidityStatus::PartialDomain: return "PartialDomain";
        case ValidityStatus::MeasureZeroDomain: return "MeasureZeroDomain";
        case ValidityStatus::NoWitnessFound: return "NoWitnessFound";
    }
    return "?";
}

std::string to_string(Classification c) { return c == Classification::CP ? "CP" : "NCP"; }

namespace {

bool passes(const AnyMap &m, const BlochVector &p, double tol) {
    if (!in_ball(p)) return false;
    try {
        return is_physical(apply(m, p), tol).physical;
    } catch (const DivergentMap &) {
        return false;
    }
}

std::vector<FixedLine> candidate_lines(const AnyMap &m) {
    std::vector<FixedLine> lines;
    if (const auto *singular = std::get_if<SingularMap>(&m)) {
        lines.push_back(singular->invariant_set);
        return lines;
    }
    const auto &op = std::get<SuperOp>(m);
    SignedKrausSet kraus;
    try {
        kraus = kraus_from_choi(choi_from_superop(op));
    } catch (const NotHermitian &) {
        return lines;
    }
    for (const auto &term : kraus.terms) {
        auto axis = kraus_axis(term.K);
        if (axis && !axis->whole_ball) lines.push_back(*axis);
    }
    return lines;
}

}  // namespace

ValidityVerdict check_validity(const AnyMap &m, const ProbeConfig &probes) {
    ValidityVerdict verdict;

    std::set<BlochVector> canonical;
    canonical.insert({0.0, 0.0, 0.0});
    const auto lines = candidate_lines(m);
    for (const auto &line : lines) {
        canonical.insert(line.at(1.0));
        canonical.insert(line.at(-1.0));
        const std::size_t n = std::max<std::size_t>(probes.line_points, 2);
        for (std::size_t i = 0; i < n; ++i)
            canonical.insert(line.at(-1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(n - 1)));
    }
    canonical.insert(probes.extra_points.begin(), probes.extra_points.end());

    std::set<BlochVector> canonical_witnesses;
    for (const auto &p : canonical)
        if (passes(m, p, probes.physical_tol)) canonical_witnesses.insert(p);
    verdict.canonical_probes = canonical.size();
    verdict.canonical_passed = canonical_witnesses.size();

    std::set<BlochVector> sampled_witnesses;
    std::size_t sampled_pass = 0;
    if (probes.ball_samples > 0) {
        for (const auto &p : sample_ball(probes.seed, probes.ball_samples)) {
            if (passes(m, p, probes.physical_tol)) {
                ++sampled_pass;
                sampled_witnesses.insert(p);
            }
        }
    }
    verdict.sampled_probes = probes.ball_samples;
    verdict.sampled_fraction =
        probes.ball_samples > 0 ? static_cast<double>(sampled_pass) / static_cast<double>(probes.ball_samples) : 0.0;

    const std::array<BlochVector, 6> dirs{{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}}};
    for (const auto &w : canonical_witnesses) {
        for (int k = 1; k <= 9; ++k) {
            const double r = std::pow(10.0, -k);
            for (const auto &d : dirs) {
                const BlochVector p{(1.0 - r) * w.a1 + 0.5 * r * d.a1, (1.0 - r) * w.a2 + 0.5 * r * d.a2,
                                    (1.0 - r) * w.a3 + 0.5 * r * d.a3};
                // Probes that stay on a candidate line say nothing about volume.
                if (canonical.contains(p) ||
                    std::any_of(lines.begin(), lines.end(), [&](const FixedLine &l) { return l.contains(p); }))
                    continue;
                ++verdict.local_probes;
                if (passes(m, p, probes.physical_tol)) {
                    ++verdict.local_passed;
                    sampled_witnesses.insert(p);
                }
            }
        }
    }

    const bool all_canonical = verdict.canonical_passed == verdict.canonical_probes;
    const bool all_sampled = probes.ball_samples > 0 && sampled_pass == probes.ball_samples;
    if (all_canonical && all_sampled && verdict.local_passed == verdict.local_probes)
        verdict.status = ValidityStatus::FullDomain;
    else if (sampled_pass > 0 || verdict.local_passed > 0)
        verdict.status = ValidityStatus::PartialDomain;
    else if (!canonical_witnesses.empty())
        verdict.status = ValidityStatus::MeasureZeroDomain;
    else
        verdict.status = ValidityStatus::NoWitnessFound;

    std::set<BlochVector> all(canonical_witnesses.begin(), canonical_witnesses.end());
    std::size_t taken = 0;
    for (const auto &p : sampled_witnesses) {
        if (taken++ >= probes.max_sampled_witnesses) break;
        all.insert(p);
    }
    verdict.witnesses.assign(all.begin(), all.end());
    return verdict;
}

}  // namespace ncpmap
