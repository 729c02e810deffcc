#pragma once

// Fixed-size complex linear algebra for single-qubit (2x2) and two-qubit /
// superoperator (4x4) matrices.
//
// Index convention: a 4x4 matrix indexed by pairs uses row-major pair
// indexing, (i, k) -> 2*i + k.  Superoperators act on row-major vectorized
// density matrices, rho'_{ij} = sum A[(i,j),(k,l)] rho_{kl}, and the Choi
// (dynamical) matrix is the reshuffle B[(i,k),(j,l)] = A[(i,j),(k,l)].

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <random>

namespace ncpmap {

using cplx = std::complex<double>;

template <std::size_t N>
class CMat {
  public:
    static constexpr std::size_t dim = N;

    constexpr CMat() : data_{} {}

    // Row-major entries; missing trailing entries are zero.
    CMat(std::initializer_list<cplx> entries) : data_{} {
        std::size_t i = 0;
        for (const auto &e : entries) {
            if (i == N * N) break;
            data_[i++] = e;
        }
    }

    static CMat identity() {
        CMat m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
        return m;
    }

    static CMat diagonal(const std::array<double, N> &d) {
        CMat m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
        return m;
    }

    cplx &operator()(std::size_t r, std::size_t c) { return data_[r * N + c]; }
    const cplx &operator()(std::size_t r, std::size_t c) const { return data_[r * N + c]; }

    const std::array<cplx, N * N> &entries() const { return data_; }
    std::array<cplx, N * N> &entries() { return data_; }

    CMat adjoint() const {
        CMat out;
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t c = 0; c < N; ++c) out(c, r) = std::conj((*this)(r, c));
        return out;
    }

    CMat transpose() const {
        CMat out;
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t c = 0; c < N; ++c) out(c, r) = (*this)(r, c);
        return out;
    }

    CMat conj() const {
        CMat out;
        for (std::size_t i = 0; i < N * N; ++i) out.data_[i] = std::conj(data_[i]);
        return out;
    }

    cplx trace() const {
        cplx t = 0.0;
        for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
        return t;
    }

    // Largest entry magnitude.
    double max_abs() const {
        double m = 0.0;
        for (const auto &e : data_) m = std::max(m, std::abs(e));
        return m;
    }

    CMat &operator+=(const CMat &o) {
        for (std::size_t i = 0; i < N * N; ++i) data_[i] += o.data_[i];
        return *this;
    }
    CMat &operator-=(const CMat &o) {
        for (std::size_t i = 0; i < N * N; ++i) data_[i] -= o.data_[i];
        return *this;
    }
    CMat &operator*=(cplx s) {
        for (auto &e : data_) e *= s;
        return *this;
    }

    friend CMat operator+(CMat a, const CMat &b) { return a += b; }
    friend CMat operator-(CMat a, const CMat &b) { return a -= b; }
    friend CMat operator*(CMat a, cplx s) { return a *= s; }
    friend CMat operator*(cplx s, CMat a) { return a *= s; }

    friend CMat operator*(const CMat &a, const CMat &b) {
        CMat out;
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t k = 0; k < N; ++k) {
                const cplx ark = a(r, k);
                if (ark == cplx{}) continue;
                for (std::size_t c = 0; c < N; ++c) out(r, c) += ark * b(k, c);
            }
        return out;
    }

    friend std::array<cplx, N> operator*(const CMat &a, const std::array<cplx, N> &v) {
        std::array<cplx, N> out{};
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t c = 0; c < N; ++c) out[r] += a(r, c) * v[c];
        return out;
    }

    friend bool operator==(const CMat &, const CMat &) = default;

  private:
    std::array<cplx, N * N> data_;
};

using CMat2 = CMat<2>;
using CMat4 = CMat<4>;
using CVec2 = std::array<cplx, 2>;
using CVec4 = std::array<cplx, 4>;

template <std::size_t N>
double max_abs_diff(const CMat<N> &a, const CMat<N> &b) {
    return (a - b).max_abs();
}

template <std::size_t N>
double hermiticity_deviation(const CMat<N> &m) {
    return max_abs_diff(m, m.adjoint());
}

inline constexpr double kHermitianTol = 1e-12;

template <std::size_t N>
bool is_hermitian(const CMat<N> &m, double tol = kHermitianTol) {
    return hermiticity_deviation(m) <= tol;
}

namespace pauli {
CMat2 id();
CMat2 x();
CMat2 y();
CMat2 z();
// Index 0..3 -> I, X, Y, Z.
CMat2 by_index(int i);
}  // namespace pauli

// Eigen-decomposition of a Hermitian matrix: eigenvalues sorted descending,
// eigenvectors[i] belongs to eigenvalues[i].  Each eigenvector carries a
// canonical phase (first non-negligible component real and positive).
template <std::size_t N>
struct EigenDecomp {
    std::array<double, N> eigenvalues{};
    std::array<std::array<cplx, N>, N> eigenvectors{};

    CMat<N> reconstruct() const {
        CMat<N> m;
        for (std::size_t k = 0; k < N; ++k)
            for (std::size_t r = 0; r < N; ++r)
                for (std::size_t c = 0; c < N; ++c)
                    m(r, c) += eigenvalues[k] * eigenvectors[k][r] * std::conj(eigenvectors[k][c]);
        return m;
    }
};

struct JacobiOptions {
    // Sweeps stop once every off-diagonal magnitude is below
    // off_diagonal_tol * max(1, max|M_ij|).
    double off_diagonal_tol = 1e-13;
    int max_sweeps = 64;
};

// Cyclic Jacobi eigensolver.  Throws NotHermitian if hermiticity_deviation(m)
// exceeds hermitian_tol.
template <std::size_t N>
EigenDecomp<N> eig_hermitian(const CMat<N> &m, double hermitian_tol = kHermitianTol,
                             const JacobiOptions &opts = {});

extern template EigenDecomp<2> eig_hermitian<2>(const CMat<2> &, double, const JacobiOptions &);
extern template EigenDecomp<3> eig_hermitian<3>(const CMat<3> &, double, const JacobiOptions &);
extern template EigenDecomp<4> eig_hermitian<4>(const CMat<4> &, double, const JacobiOptions &);

// Determinant by Gaussian elimination with partial pivoting.
cplx det4(const CMat4 &m);
cplx det2(const CMat2 &m);

// Relative singularity threshold used by inverse4: |det| < kSingularRelTol * max|M_ij|^4.
inline constexpr double kSingularRelTol = 1e-18;

// Gauss-Jordan inverse.  Throws SingularMatrix carrying |det M|.
CMat4 inverse4(const CMat4 &m, double rel_tol = kSingularRelTol);

CMat2 inverse2(const CMat2 &m);

CMat4 kron(const CMat2 &p, const CMat2 &q);

// B[(i,k),(j,l)] = A[(i,j),(k,l)].  An involution.
CMat4 reshuffle(const CMat4 &a);

// subsystem 1 traces out the first factor (i == j), subsystem 2 the second (k == l).
CMat2 partial_trace(const CMat4 &m, int subsystem);

// Row-major vectorization, vec(M)[2i + j] = M_ij.
CVec4 vec(const CMat2 &m);
CMat2 unvec(const CVec4 &v);

// |v><w|
template <std::size_t N>
CMat<N> outer(const std::array<cplx, N> &v, const std::array<cplx, N> &w) {
    CMat<N> m;
    for (std::size_t r = 0; r < N; ++r)
        for (std::size_t c = 0; c < N; ++c) m(r, c) = v[r] * std::conj(w[c]);
    return m;
}

template <std::size_t N>
bool is_unitary(const CMat<N> &u, double tol = 1e-12) {
    return max_abs_diff(u.adjoint() * u, CMat<N>::identity()) <= tol;
}

// Haar-distributed 2x2 unitary (Gram-Schmidt on a complex Ginibre matrix).
CMat2 haar_unitary2(std::mt19937_64 &rng);

}  // namespace ncpmap
