#include "wps/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace wps {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool line_less(const SpectralLine& a, const SpectralLine& b) {
    int c = compare_lines(a, b);
    if (c != 0) return c < 0;
    if (a.j != b.j) return a.j < b.j;
    return a.k < b.k;
}

void sort_lines(std::vector<SpectralLine>& lines) {
    std::sort(lines.begin(), lines.end(), line_less);
}

}  // namespace

double SpectralLine::mu() const {
    return kTwoPi * static_cast<double>(k) / static_cast<double>(q_j);
}

int compare_lines(const SpectralLine& a, const SpectralLine& b) {
    // sign of k_a/q_a - k_b/q_b with positive denominators
    __int128 lhs = static_cast<__int128>(a.k) * b.q_j;
    __int128 rhs = static_cast<__int128>(b.k) * a.q_j;
    if (lhs < rhs) return -1;
    if (lhs > rhs) return 1;
    return 0;
}

std::vector<SpectralLine> eigenvalues_in(const WeightVector& q, double lo, double hi,
                                         bool half_open) {
    if (lo >= hi) throw std::invalid_argument("eigenvalues_in: need lo < hi");
    // Work in units of 2 pi; snap endpoint comparisons.
    double a = lo / kTwoPi, b = hi / kTwoPi;
    auto snap = [](double x, double bound) {
        double tol = 1e-12 * std::max(1.0, std::abs(bound));
        return std::abs(x - bound) <= tol;
    };
    std::vector<SpectralLine> lines;
    for (int j = 0; j <= q.n(); ++j) {
        std::int64_t w = q[static_cast<std::size_t>(j)];
        auto kmin = static_cast<std::int64_t>(std::floor(a * static_cast<double>(w))) - 2;
        auto kmax = static_cast<std::int64_t>(std::ceil(b * static_cast<double>(w))) + 2;
        for (std::int64_t k = kmin; k <= kmax; ++k) {
            double r = static_cast<double>(k) / static_cast<double>(w);
            bool above_lo = snap(r, a) ? !half_open : r > a;
            bool below_hi = snap(r, b) ? true : r < b;
            if (above_lo && below_hi) lines.push_back({k, j + 1, w});
        }
    }
    sort_lines(lines);
    return lines;
}

std::vector<SpectralLine> eigenvalues_in_2pi(const WeightVector& q, std::int64_t a,
                                             std::int64_t b) {
    if (a >= b) throw std::invalid_argument("eigenvalues_in_2pi: need a < b");
    std::vector<SpectralLine> lines;
    for (int j = 0; j <= q.n(); ++j) {
        std::int64_t w = q[static_cast<std::size_t>(j)];
        // k/w in (a, b]  <=>  a w < k <= b w, all integers
        for (std::int64_t k = a * w + 1; k <= b * w; ++k) lines.push_back({k, j + 1, w});
    }
    sort_lines(lines);
    return lines;
}

SpectralLine mu_line(const WeightVector& q, std::int64_t m) {
    if (m < 1) throw std::invalid_argument("mu: m must be >= 1");
    // Lines with 0 < mu <= 2 pi K number at least K (n+1), so K blocks suffice.
    std::int64_t blocks = (m + q.n()) / (q.n() + 1) + 1;
    auto lines = eigenvalues_in_2pi(q, 0, blocks);
    return lines[static_cast<std::size_t>(m - 1)];
}

double mu(const WeightVector& q, std::int64_t m) { return mu_line(q, m).mu(); }

std::pair<double, double> minimax_bounds(const WeightVector& q, double M, std::int64_t m) {
    if (M < 0.0) throw std::invalid_argument("minimax_bounds: M must be >= 0");
    if (m <= 1)
        throw std::invalid_argument(
            "minimax_bounds: m = 1 is excluded (the d_1 = mu_1 identity is unsettled)");
    double top = mu(q, m);
    return {top - M, top};
}

CountingCertificate counting_certificate(const WeightVector& q, double M,
                                         std::optional<std::int64_t> s_override) {
    if (M < 0.0) throw std::invalid_argument("counting_certificate: M must be >= 0");
    std::int64_t n1 = q.n() + 1;

    std::int64_t t0 = std::max<std::int64_t>(
        1, static_cast<std::int64_t>(std::ceil(M / kTwoPi - 1e-15)));
    std::int64_t s = t0 * n1 + 2;  // minimal s with t0 (n+1)/(s-1) < 1
    if (s_override) {
        if (*s_override < t0 + 2)
            throw std::invalid_argument("counting_certificate: s must exceed t0 + 1");
        s = *s_override;
    }

    // Count of 2 pi k / q_j in (2(1+t0) pi, 2 s pi]: per coordinate exactly
    // (s - 1 - t0) q_j integers k, so the total is (s - 1 - t0) sum q_j.
    std::int64_t interval_count = (s - 1 - t0) * q.sum();

    std::int64_t num = n1 * (s - 1) - t0 * n1;
    std::int64_t den = s - 1;
    std::int64_t g = std::gcd(num, den);
    Rational ns{num / g, den / g};

    // ns > n  <=>  num > n den
    int conclusion;
    if (num > q.n() * den) {
        conclusion = static_cast<int>(n1);
    } else {
        conclusion = static_cast<int>((num + den - 1) / den);  // ceil, uncertified remainder
    }

    return {M, t0, s, interval_count, ns, conclusion, q.max_weight() >= 2};
}

}  // namespace wps
