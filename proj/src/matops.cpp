#include "ncpmap/matops.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ncpmap/errors.hpp"

namespace ncpmap {

namespace pauli {
CMat2 id() { return CMat2::identity(); }
CMat2 x() { return CMat2{0.0, 1.0, 1.0, 0.0}; }
CMat2 y() { return CMat2{0.0, cplx{0.0, -1.0}, cplx{0.0, 1.0}, 0.0}; }
CMat2 z() { return CMat2{1.0, 0.0, 0.0, -1.0}; }
CMat2 by_index(int i) {
    switch (i) {
        case 0: return id();
        case 1: return x();
        case 2: return y();
        case 3: return z();
        default: throw OutOfRange("Pauli index must be 0..3");
    }
}
}  // namespace pauli

namespace {

template <std::size_t N>
void canonicalize_phase(std::array<cplx, N> &v) {
    for (const auto &c : v) {
        if (std::abs(c) > 1e-8) {
            const cplx phase = std::conj(c) / std::abs(c);
            for (auto &e : v) e *= phase;
            return;
        }
    }
}

template <std::size_t N>
bool lex_greater(const std::array<cplx, N> &a, const std::array<cplx, N> &b) {
    for (std::size_t i = 0; i < N; ++i) {
        if (a[i].real() != b[i].real()) return a[i].real() > b[i].real();
        if (a[i].imag() != b[i].imag()) return a[i].imag() > b[i].imag();
    }
    return false;
}

}  // namespace

template <std::size_t N>
EigenDecomp<N> eig_hermitian(const CMat<N> &m, double hermitian_tol, const JacobiOptions &opts) {
    const double dev = hermiticity_deviation(m);
    if (!(dev <= hermitian_tol)) throw NotHermitian(dev);

    // Work on the exactly Hermitian part.
    CMat<N> h = (m + m.adjoint()) * 0.5;
    CMat<N> v = CMat<N>::identity();
    const double tol = opts.off_diagonal_tol * std::max(1.0, h.max_abs());

    auto max_off = [&h] {
        double off = 0.0;
        for (std::size_t p = 0; p < N; ++p)
            for (std::size_t q = p + 1; q < N; ++q) off = std::max(off, std::abs(h(p, q)));
        return off;
    };

    for (int sweep = 0; sweep < opts.max_sweeps && max_off() >= tol; ++sweep) {
        for (std::size_t p = 0; p + 1 < N; ++p) {
            for (std::size_t q = p + 1; q < N; ++q) {
                const cplx hpq = h(p, q);
                const double g = std::abs(hpq);
                if (g == 0.0) continue;

                // Rotate the phase of basis vector q so that h(p,q) becomes real positive.
                const cplx d = std::conj(hpq) / g;
                for (std::size_t r = 0; r < N; ++r) {
                    h(r, q) *= d;
                    h(q, r) *= std::conj(d);
                    v(r, q) *= d;
                }
                h(q, q) = h(q, q).real();

                const double hpp = h(p, p).real();
                const double hqq = h(q, q).real();
                const double theta = (hqq - hpp) / (2.0 * g);
                double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                if (theta < 0.0) t = -t;
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (std::size_t r = 0; r < N; ++r) {
                    if (r == p || r == q) continue;
                    const cplx hrp = h(r, p);
                    const cplx hrq = h(r, q);
                    h(r, p) = c * hrp - s * hrq;
                    h(r, q) = s * hrp + c * hrq;
                    h(p, r) = std::conj(h(r, p));
                    h(q, r) = std::conj(h(r, q));
                }
                h(p, p) = hpp - t * g;
                h(q, q) = hqq + t * g;
                h(p, q) = 0.0;
                h(q, p) = 0.0;

                for (std::size_t r = 0; r < N; ++r) {
                    const cplx vrp = v(r, p);
                    const cplx vrq = v(r, q);
                    v(r, p) = c * vrp - s * vrq;
                    v(r, q) = s * vrp + c * vrq;
                }
            }
        }
    }

    std::array<std::size_t, N> order{};
    std::iota(order.begin(), order.end(), 0);
    EigenDecomp<N> out;
    std::array<double, N> vals{};
    std::array<std::array<cplx, N>, N> vecs{};
    for (std::size_t k = 0; k < N; ++k) {
        vals[k] = h(k, k).real();
        for (std::size_t r = 0; r < N; ++r) vecs[k][r] = v(r, k);
        canonicalize_phase(vecs[k]);
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] > vals[b]; });

    // Within runs of (numerically) equal eigenvalues, order by eigenvector.
    const double tie_tol = 1e-12 * std::max(1.0, h.max_abs());
    for (std::size_t begin = 0; begin < N;) {
        std::size_t end = begin + 1;
        while (end < N && vals[order[end - 1]] - vals[order[end]] <= tie_tol) ++end;
        std::sort(order.begin() + begin, order.begin() + end,
                  [&](std::size_t a, std::size_t b) { return lex_greater(vecs[a], vecs[b]); });
        begin = end;
    }
    for (std::size_t k = 0; k < N; ++k) {
        out.eigenvalues[k] = vals[order[k]];
        out.eigenvectors[k] = vecs[order[k]];
    }
    return out;
}

template EigenDecomp<2> eig_hermitian<2>(const CMat<2> &, double, const JacobiOptions &);
template EigenDecomp<3> eig_hermitian<3>(const CMat<3> &, double, const JacobiOptions &);
template EigenDecomp<4> eig_hermitian<4>(const CMat<4> &, double, const JacobiOptions &);

cplx det2(const CMat2 &m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

cplx det4(const CMat4 &m) {
    CMat4 a = m;
    cplx det = 1.0;
    for (std::size_t col = 0; col < 4; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < 4; ++r)
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
        if (a(pivot, col) == cplx{}) return 0.0;
        if (pivot != col) {
            for (std::size_t c = 0; c < 4; ++c) std::swap(a(pivot, c), a(col, c));
            det = -det;
        }
        det *= a(col, col);
        for (std::size_t r = col + 1; r < 4; ++r) {
            const cplx f = a(r, col) / a(col, col);
            for (std::size_t c = col; c < 4; ++c) a(r, c) -= f * a(col, c);
        }
    }
    return det;
}

CMat4 inverse4(const CMat4 &m, double rel_tol) {
    const double scale = m.max_abs();
    const double abs_det = std::abs(det4(m));
    if (scale == 0.0 || abs_det < rel_tol * std::pow(scale, 4)) throw SingularMatrix(abs_det);

    CMat4 a = m;
    CMat4 inv = CMat4::identity();
    for (std::size_t col = 0; col < 4; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < 4; ++r)
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
        if (pivot != col) {
            for (std::size_t c = 0; c < 4; ++c) {
                std::swap(a(pivot, c), a(col, c));
                std::swap(inv(pivot, c), inv(col, c));
            }
        }
        const cplx diag = a(col, col);
        for (std::size_t c = 0; c < 4; ++c) {
            a(col, c) /= diag;
            inv(col, c) /= diag;
        }
        for (std::size_t r = 0; r < 4; ++r) {
            if (r == col) continue;
            const cplx f = a(r, col);
            if (f == cplx{}) continue;
            for (std::size_t c = 0; c < 4; ++c) {
                a(r, c) -= f * a(col, c);
                inv(r, c) -= f * inv(col, c);
            }
        }
    }
    return inv;
}

CMat2 inverse2(const CMat2 &m) {
    const cplx d = det2(m);
    if (std::abs(d) == 0.0) throw SingularMatrix(0.0);
    return CMat2{m(1, 1) / d, -m(0, 1) / d, -m(1, 0) / d, m(0, 0) / d};
}

CMat4 kron(const CMat2 &p, const CMat2 &q) {
    CMat4 out;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = p(i, j) * q(k, l);
    return out;
}

CMat4 reshuffle(const CMat4 &a) {
    CMat4 b;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t l = 0; l < 2; ++l) b(2 * i + k, 2 * j + l) = a(2 * i + j, 2 * k + l);
    return b;
}

CMat2 partial_trace(const CMat4 &m, int subsystem) {
    if (subsystem != 1 && subsystem != 2) throw OutOfRange("partial_trace subsystem must be 1 or 2");
    CMat2 out;
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b)
            for (std::size_t s = 0; s < 2; ++s)
                out(a, b) += subsystem == 1 ? m(2 * s + a, 2 * s + b) : m(2 * a + s, 2 * b + s);
    return out;
}

CVec4 vec(const CMat2 &m) { return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)}; }

CMat2 unvec(const CVec4 &v) { return CMat2{v[0], v[1], v[2], v[3]}; }

CMat2 haar_unitary2(std::mt19937_64 &rng) {
    std::normal_distribution<double> normal;
    CVec2 c0{cplx{normal(rng), normal(rng)}, cplx{normal(rng), normal(rng)}};
    CVec2 c1{cplx{normal(rng), normal(rng)}, cplx{normal(rng), normal(rng)}};
    const double n0 = std::sqrt(std::norm(c0[0]) + std::norm(c0[1]));
    for (auto &e : c0) e /= n0;
    const cplx proj = std::conj(c0[0]) * c1[0] + std::conj(c0[1]) * c1[1];
    for (std::size_t i = 0; i < 2; ++i) c1[i] -= proj * c0[i];
    const double n1 = std::sqrt(std::norm(c1[0]) + std::norm(c1[1]));
    for (auto &e : c1) e /= n1;
    return CMat2{c0[0], c1[0], c0[1], c1[1]};
}

}  // namespace ncpmap
