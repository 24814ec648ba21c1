#ifndef WPS_SPECTRUM_HPP
#define WPS_SPECTRUM_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "wps/core.hpp"

namespace wps {

/// One eigenvalue mu = 2 pi k / q_j of the constrained linear problem
/// L u = mu grad K_q(u), carried by the eigenvector e^{2 pi i k t} eps_j.
/// Kept as the exact pair (k, q_j); mu is realized on demand.
struct SpectralLine {
    std::int64_t k;    // Fourier mode
    int j;             // coordinate index, 1-based
    std::int64_t q_j;  // weight of that coordinate

    double mu() const;
};

/// Exact comparison of 2 pi k1/q1 vs 2 pi k2/q2 (sign of k1 q2 - k2 q1).
int compare_lines(const SpectralLine& a, const SpectralLine& b);

/// All lines with mu in (lo, hi] (half_open) or [lo, hi], sorted ascending,
/// ties ordered by (j, k). mu = 0 enters as n+1 lines (k = 0, j = 1..n+1).
/// Endpoint membership snaps within 1e-12 relative so that float bounds that
/// are meant to be multiples of 2 pi behave exactly.
std::vector<SpectralLine> eigenvalues_in(const WeightVector& q, double lo, double hi,
                                         bool half_open = true);

/// Same enumeration with exact bounds lo = 2 pi a, hi = 2 pi b for integers.
std::vector<SpectralLine> eigenvalues_in_2pi(const WeightVector& q, std::int64_t a,
                                             std::int64_t b);

/// The m-th positive eigenvalue (m >= 1) counted with multiplicity.
double mu(const WeightVector& q, std::int64_t m);
SpectralLine mu_line(const WeightVector& q, std::int64_t m);

/// Certified bracket (mu_m - M, mu_m) for the minimax value c_m, m >= 2.
/// m = 1 is refused: the d_1 = mu_1 identity is not established.
std::pair<double, double> minimax_bounds(const WeightVector& q, double M, std::int64_t m);

struct Rational {
    std::int64_t num;
    std::int64_t den;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Arithmetic certificate that the number of multiplier classes mod 2 pi is
/// at least n+1: t0 bounds the Hamiltonian, the interval (2(1+t0)pi, 2 s pi]
/// packs at least (s-t0-1)(n+1) eigenvalues, and N_s > n follows.
struct CountingCertificate {
    double M;                     // Hamiltonian bound
    std::int64_t t0;              // smallest integer >= 1 with M <= 2 t0 pi
    std::int64_t s;               // interval end, minimal unless overridden
    std::int64_t interval_count;  // |eigenvalues in (2(1+t0)pi, 2 s pi]|, exact
    Rational ns_lower_bound;      // (n+1) - t0(n+1)/(s-1), exact
    int conclusion;               // certified class count, n+1
    bool standing_assumption_met; // max q >= 2
};

CountingCertificate counting_certificate(const WeightVector& q, double M,
                                         std::optional<std::int64_t> s_override = {});

}  // namespace wps

#endif
