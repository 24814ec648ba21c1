#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "wps/flow.hpp"

using namespace wps;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

CVec random_sphere_point(std::mt19937_64& rng, const WeightVector& q) {
    std::normal_distribution<double> g(0.0, 1.0);
    CVec z(q.size());
    for (auto& c : z) c = Complex(g(rng), g(rng));
    return normalize_to_sphere(z, q).point;
}

InvariantMonomial monomial(std::vector<int> alpha, std::vector<int> beta, double amp) {
    InvariantMonomial m;
    m.alpha = std::move(alpha);
    m.beta = std::move(beta);
    m.time = {TimeTerm{TimeTerm::Kind::Cos, 0, amp}};
    return m;
}
}  // namespace

TEST_CASE("zero hamiltonian flows by the circle action") {
    WeightVector q({2, 3});
    LiftedHamiltonian zero({}, q);
    std::mt19937_64 rng(1);
    CVec z0 = random_sphere_point(rng, q);
    for (double lambda : {0.0, 1.7, -3.2}) {
        auto res = integrate(zero, lambda, z0);
        auto expect = circle_action(lambda, z0, q);
        for (std::size_t j = 0; j < 2; ++j) CHECK(std::abs(res.endpoint[j] - expect[j]) < 1e-10);
        CHECK(res.conservative);
        CHECK(res.kq_drift <= kTolConserve);
    }
}

TEST_CASE("quadratic flow matches the closed form") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> adist(-2.0, 2.0);
    std::uniform_real_distribution<double> ldist(-3.0, 3.0);
    std::uniform_int_distribution<std::int64_t> wdist(1, 5);
    for (int trial = 0; trial < 12; ++trial) {
        std::size_t dim = 2 + trial % 3;
        std::vector<std::int64_t> w(dim);
        for (auto& x : w) x = wdist(rng);
        WeightVector q(w);
        std::vector<double> a(dim);
        for (auto& x : a) x = adist(rng);
        auto H = LiftedHamiltonian::quadratic(a, q);
        CVec z0 = random_sphere_point(rng, q);
        double lambda = ldist(rng);

        auto res = integrate(H, lambda, z0);
        for (std::size_t j = 0; j < dim; ++j) {
            Complex expect =
                std::polar(1.0, 2.0 * a[j] + lambda * static_cast<double>(q[j])) * z0[j];
            CHECK(std::abs(res.endpoint[j] - expect) < 1e-9);
        }
        CHECK(res.conservative);
        REQUIRE(res.h_drift.has_value());
        CHECK(*res.h_drift < 1e-8);
    }
}

TEST_CASE("flow is equivariant for invariant hamiltonians") {
    WeightVector q({2, 3});
    LiftedHamiltonian H({monomial({3, 0}, {0, 2}, 0.15), monomial({0, 2}, {3, 0}, 0.15),
                         monomial({1, 0}, {1, 0}, 0.4)},
                        q);
    std::mt19937_64 rng(3);
    CVec z0 = random_sphere_point(rng, q);
    double s = 0.83;
    auto direct = time_one_map(H, circle_action(s, z0, q));
    auto rotated = circle_action(s, time_one_map(H, z0), q);
    for (std::size_t j = 0; j < 2; ++j) CHECK(std::abs(direct[j] - rotated[j]) < 1e-8);
}

TEST_CASE("trajectory sampling") {
    WeightVector q({1, 1});
    auto H = LiftedHamiltonian::quadratic({0.2, 0.5}, q);
    std::mt19937_64 rng(4);
    CVec z0 = random_sphere_point(rng, q);
    FlowOptions opts;
    opts.trajectory_samples = 10;
    auto res = integrate(H, 0.0, z0, opts);
    REQUIRE(res.trajectory.size() == 10);
    CHECK(res.trajectory.front().first == 0.0);
    CHECK(res.trajectory.back().first == doctest::Approx(1.0));
    for (std::size_t j = 0; j < 2; ++j)
        CHECK(std::abs(res.trajectory.front().second[j] - z0[j]) == 0.0);
    for (const auto& [t, zt] : res.trajectory) CHECK(on_sphere(zt, q));
}

TEST_CASE("quadratic fixed points") {
    WeightVector q({1, 2});
    std::vector<double> a{0.3, 0.7};
    auto recs = quadratic_fixed_points(a, q);
    REQUIRE(recs.size() == 2);
    for (std::size_t j = 0; j < 2; ++j) {
        const auto& r = recs[j];
        CHECK(on_sphere(r.rep, q));
        // representative is the j-th coordinate point
        for (std::size_t l = 0; l < 2; ++l) {
            if (l == j)
                CHECK(std::abs(r.rep[l]) ==
                      doctest::Approx(1.0 / std::sqrt(static_cast<double>(q[l]))));
            else
                CHECK(std::abs(r.rep[l]) == 0.0);
        }
        double expect = std::fmod(-2.0 * a[j] / static_cast<double>(q[j]), kTwoPi);
        if (expect < 0) expect += kTwoPi;
        CHECK(r.lambda_class == doctest::Approx(expect));
        CHECK(r.residual <= kTolFix);

        // the multiplier genuinely closes the lifted loop
        auto H = LiftedHamiltonian::quadratic(a, q);
        auto res = integrate(H, r.lambda, r.rep);
        for (std::size_t l = 0; l < 2; ++l) CHECK(std::abs(res.endpoint[l] - r.rep[l]) < 1e-8);
    }
}

TEST_CASE("resonant quadratic data is rejected") {
    WeightVector q({1, 1});
    CHECK_THROWS_AS(quadratic_fixed_points({0.5, 0.5}, q), std::domain_error);
    CHECK_THROWS_AS(quadratic_fixed_points({std::numbers::pi, 2.0 * std::numbers::pi}, q),
                    std::domain_error);
    // generic data passes
    CHECK(quadratic_fixed_points({0.3, 0.7}, q).size() == 2);
}

TEST_CASE("fixed point detection") {
    WeightVector q({1, 1});
    auto H = LiftedHamiltonian::quadratic({0.4, 1.1}, q);

    // exact coordinate fixed point
    CVec e1{{1, 0}, {0, 0}};
    auto hit = detect_fixed_point(H, e1);
    REQUIRE(hit.has_value());
    CHECK(hit->residual <= kTolFix);
    double expect = std::fmod(-2.0 * 0.4, kTwoPi) + kTwoPi;
    expect = std::fmod(expect, kTwoPi);
    CHECK(hit->lambda_class == doctest::Approx(expect).epsilon(1e-6));
    auto closed = integrate(H, hit->lambda, hit->rep);
    CHECK(orbit_distance(closed.endpoint, hit->rep, q).d < 1e-6);

    // a nearby seed refines back onto the fixed orbit
    CVec nudged{{1.0, 0.0}, {1e-3, 2e-3}};
    auto refined = detect_fixed_point(H, normalize_to_sphere(nudged, q).point);
    REQUIRE(refined.has_value());
    CHECK(std::abs(refined->rep[1]) < 1e-6);
    CHECK(refined->residual <= kTolFix);
}

TEST_CASE("every orbit is fixed under the zero hamiltonian") {
    WeightVector q({2, 2, 3});
    LiftedHamiltonian zero({}, q);
    std::mt19937_64 rng(9);
    auto p = random_sphere_point(rng, q);
    auto hit = detect_fixed_point(zero, p);
    REQUIRE(hit.has_value());
    CHECK(hit->residual <= kTolFix);
    CHECK(orbit_distance(hit->rep, p, q).d < 1e-6);
}
