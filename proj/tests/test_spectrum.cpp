#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "wps/spectrum.hpp"

using namespace wps;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Exhaustive (k, j) scan oracle with float comparisons.
std::vector<double> scan_oracle(const WeightVector& q, double lo, double hi) {
    std::vector<double> mus;
    for (int j = 0; j <= q.n(); ++j) {
        auto w = static_cast<double>(q[static_cast<std::size_t>(j)]);
        auto kmax = static_cast<std::int64_t>(std::ceil(std::abs(hi) * w / kTwoPi)) + 2;
        auto kmin = -(static_cast<std::int64_t>(std::ceil(std::abs(lo) * w / kTwoPi)) + 2);
        for (std::int64_t k = kmin; k <= kmax; ++k) {
            double mu = kTwoPi * static_cast<double>(k) / w;
            if (mu > lo + 1e-9 && mu <= hi + 1e-9) mus.push_back(mu);
        }
    }
    std::sort(mus.begin(), mus.end());
    return mus;
}
}  // namespace

TEST_CASE("eigenvalue enumeration on (2,3)") {
    WeightVector q({2, 3});
    auto lines = eigenvalues_in(q, kTwoPi / 3.0, kTwoPi);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0].mu() == doctest::Approx(std::numbers::pi));          // k=1, q=2
    CHECK(lines[1].mu() == doctest::Approx(4.0 * std::numbers::pi / 3));  // k=2, q=3
    CHECK(lines[2].mu() == doctest::Approx(kTwoPi));
    CHECK(lines[3].mu() == doctest::Approx(kTwoPi));
    CHECK(lines[2].j == 1);
    CHECK(lines[2].k == 2);
    CHECK(lines[3].j == 2);
    CHECK(lines[3].k == 3);
    CHECK_THROWS_AS(eigenvalues_in(q, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("unit weights and zero multiplicity") {
    WeightVector q({1, 1, 1});
    auto lines = eigenvalues_in(q, 0.0, kTwoPi);
    CHECK(lines.size() == 3);  // n+1 lines, all at 2 pi
    for (const auto& l : lines) CHECK(l.mu() == doctest::Approx(kTwoPi));

    // closed interval through zero picks up the n+1 kernel lines
    auto sym = eigenvalues_in(q, -kTwoPi, kTwoPi, /*half_open=*/false);
    int zeros = 0;
    for (const auto& l : sym)
        if (l.k == 0) ++zeros;
    CHECK(zeros == 3);
    // symmetric interval is closed under mu -> -mu
    CHECK(sym.size() == 9);  // 3 at -2pi, 3 at 0, 3 at 2pi
}

TEST_CASE("enumeration matches the exhaustive scan oracle") {
    std::mt19937_64 rng(33);
    std::uniform_int_distribution<std::int64_t> wdist(1, 12);
    std::uniform_real_distribution<double> bdist(0.1, 30.0);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<std::int64_t> w(2 + trial % 4);
        for (auto& x : w) x = wdist(rng);
        WeightVector q(w);
        double a = bdist(rng), b = bdist(rng);
        if (a > b) std::swap(a, b);
        if (b - a < 0.2) b += 0.5;
        auto lines = eigenvalues_in(q, a, b);
        auto oracle = scan_oracle(q, a, b);
        REQUIRE(lines.size() == oracle.size());
        for (std::size_t i = 0; i < lines.size(); ++i)
            CHECK(lines[i].mu() == doctest::Approx(oracle[i]));
    }
}

TEST_CASE("mu sequence") {
    WeightVector q11({1, 1});
    CHECK(mu(q11, 1) == doctest::Approx(kTwoPi));
    CHECK(mu(q11, 2) == doctest::Approx(kTwoPi));

    WeightVector q21({2, 1});
    CHECK(mu(q21, 1) == doctest::Approx(std::numbers::pi));

    WeightVector q32({3, 2});
    CHECK(mu(q32, 1) == doctest::Approx(kTwoPi / 3.0));
    CHECK(mu(q32, 2) == doctest::Approx(std::numbers::pi));
    CHECK(mu(q32, 3) == doctest::Approx(4.0 * std::numbers::pi / 3.0));

    // nondecreasing and unbounded
    double prev = 0.0;
    for (std::int64_t m = 1; m <= 50; ++m) {
        double v = mu(q32, m);
        CHECK(v >= prev);
        prev = v;
    }
    CHECK(prev > 10.0 * kTwoPi / 3.0);
}

TEST_CASE("minimax bounds") {
    WeightVector q({2, 2, 3});
    auto [lo, hi] = minimax_bounds(q, 1.0, 2);
    CHECK(hi == doctest::Approx(mu(q, 2)));
    CHECK(hi - lo == doctest::Approx(1.0));
    auto [lo0, hi0] = minimax_bounds(q, 0.0, 5);
    CHECK(lo0 == hi0);
    CHECK_THROWS_AS(minimax_bounds(q, 1.0, 1), std::invalid_argument);
}

TEST_CASE("counting certificate on the worked example") {
    WeightVector q({3, 2});
    auto cert = counting_certificate(q, 5.0);
    CHECK(cert.t0 == 1);
    CHECK(cert.s == 4);
    CHECK(cert.interval_count == 10);
    CHECK(cert.interval_count == static_cast<std::int64_t>(eigenvalues_in_2pi(q, 2, 4).size()));
    CHECK(cert.conclusion == 2);
    CHECK(cert.standing_assumption_met);

    auto cert7 = counting_certificate(q, 7.0);
    CHECK(cert7.t0 == 2);

    auto cert0 = counting_certificate(q, 0.0);
    CHECK(cert0.t0 == 1);
    CHECK(cert0.interval_count >= (cert0.s - cert0.t0 - 1) * 2);
}

TEST_CASE("certificate arithmetic over random inputs") {
    std::mt19937_64 rng(44);
    std::uniform_int_distribution<std::int64_t> wdist(1, 30);
    std::uniform_real_distribution<double> mdist(0.0, 40.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::int64_t> w(2 + trial % 5);
        for (auto& x : w) x = wdist(rng);
        w[0] = std::max<std::int64_t>(w[0], 2);
        WeightVector q(w);
        double M = mdist(rng);
        auto cert = counting_certificate(q, M);
        std::int64_t n1 = q.n() + 1;

        CHECK(2.0 * static_cast<double>(cert.t0) * std::numbers::pi >= M - 1e-12);
        if (cert.t0 > 1)
            CHECK(2.0 * static_cast<double>(cert.t0 - 1) * std::numbers::pi < M);
        CHECK(cert.interval_count >= (cert.s - cert.t0 - 1) * n1);
        // ns > n exactly: num > n * den
        CHECK(cert.ns_lower_bound.num > q.n() * cert.ns_lower_bound.den);
        CHECK(cert.conclusion == n1);
        CHECK(cert.interval_count ==
              static_cast<std::int64_t>(eigenvalues_in_2pi(q, 1 + cert.t0, cert.s).size()));
    }
}

TEST_CASE("interval (2pi/q1, 2pi] holds at least n+1 lines") {
    std::mt19937_64 rng(55);
    std::uniform_int_distribution<std::int64_t> wdist(1, 30);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<std::int64_t> w(2 + trial % 8);
        for (auto& x : w) x = wdist(rng);
        std::sort(w.begin(), w.end(), std::greater<>());
        w[0] = std::max<std::int64_t>(w[0], 2);
        WeightVector q(w);
        auto lines = eigenvalues_in(q, kTwoPi / static_cast<double>(q.max_weight()), kTwoPi);
        CHECK(lines.size() >= static_cast<std::size_t>(q.n() + 1));
    }
}

TEST_CASE("spectrum symmetry lines") {
    WeightVector q({4, 3, 2});
    auto pos = eigenvalues_in(q, 0.0, 3.0 * kTwoPi);
    for (const auto& l : pos) {
        SpectralLine neg{-l.k, l.j, l.q_j};
        CHECK(neg.mu() == doctest::Approx(-l.mu()));
    }
}
