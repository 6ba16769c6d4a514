#pragma once

#include <cmath>
#include <cstdint>

#include "hrg/types.hpp"

namespace hrg {

// Splittable 64-bit generator (splitmix64). Passed explicitly everywhere;
// nothing in the library touches global state.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    SplitMix64 split() { return SplitMix64(next_u64() ^ 0x5851f42d4c957f2dULL); }

    // uniform in [0,1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double gaussian() {
        double u = 0.0;
        while (u <= 1e-300) u = uniform();
        const double v = uniform();
        return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * M_PI * v);
    }

    Complex cgaussian() { return Complex(gaussian(), gaussian()) / std::sqrt(2.0); }

private:
    std::uint64_t state_;
};

inline Matrix random_matrix(SplitMix64& rng, Eigen::Index rows, Eigen::Index cols) {
    Matrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = rng.cgaussian();
    return m;
}

inline Matrix random_hermitian(SplitMix64& rng, Eigen::Index n) {
    Matrix m = random_matrix(rng, n, n);
    return (m + m.adjoint()) / 2.0;
}

inline Matrix random_unitary(SplitMix64& rng, Eigen::Index n) {
    Matrix m = random_matrix(rng, n, n);
    Eigen::HouseholderQR<Matrix> qr(m);
    Matrix q = qr.householderQ();
    // fix the phase so the result is a deterministic function of the input
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < n; ++j) {
        Complex d = r(j, j);
        if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
    }
    return q;
}

} // namespace hrg
