#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "wps/hamiltonians.hpp"

using namespace wps;

namespace {

CVec random_point(std::mt19937_64& rng, std::size_t dim, double scale = 1.0) {
    std::normal_distribution<double> g(0.0, scale);
    CVec z(dim);
    for (auto& c : z) c = Complex(g(rng), g(rng));
    return z;
}

// Central finite differences of the evaluation, step 1e-6.
CVec fd_gradient(const LiftedHamiltonian& H, const CVec& z, double t) {
    const double h = 1e-6;
    CVec g(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) {
        CVec zp = z, zm = z;
        zp[j] += h;
        zm[j] -= h;
        double dre = (H.evaluate(zp, t) - H.evaluate(zm, t)) / (2 * h);
        zp = z; zm = z;
        zp[j] += Complex(0, h);
        zm[j] -= Complex(0, h);
        double dim_ = (H.evaluate(zp, t) - H.evaluate(zm, t)) / (2 * h);
        g[j] = Complex(dre, dim_);
    }
    return g;
}

InvariantMonomial monomial(std::vector<int> alpha, std::vector<int> beta, double amp) {
    InvariantMonomial m;
    m.alpha = std::move(alpha);
    m.beta = std::move(beta);
    m.time = {TimeTerm{TimeTerm::Kind::Cos, 0, amp}};
    return m;
}

}  // namespace

TEST_CASE("invariance is checked at construction") {
    WeightVector q({2, 3});
    // z_1 conj(z_2): weighted degree 2 - 3 != 0
    CHECK_THROWS_AS(LiftedHamiltonian({monomial({1, 0}, {0, 1}, 1.0)}, q),
                    std::invalid_argument);
    // z_1^3 conj(z_2)^2: 6 - 6 = 0, but needs its conjugate mate
    CHECK_THROWS_AS(LiftedHamiltonian({monomial({3, 0}, {0, 2}, 1.0)}, q),
                    std::invalid_argument);
    LiftedHamiltonian ok({monomial({3, 0}, {0, 2}, 1.0), monomial({0, 2}, {3, 0}, 1.0)}, q);
    CHECK(ok.max_degree() == 5);
}

TEST_CASE("quadratic lift is the identity") {
    WeightVector q({1, 1});
    auto H = LiftedHamiltonian::quadratic({1.0, 2.0}, q);
    CHECK(H.evaluate({{1, 0}, {0, 0}}, 0.3) == doctest::Approx(1.0));
    CHECK(H.evaluate({{0, 0}, {1, 0}}, 0.0) == doctest::Approx(2.0));
    CHECK(H.evaluate({{3, 0}, {0, 0}}, 0.0) == doctest::Approx(9.0));
    CHECK(H.is_quadratic_diagonal());
}

TEST_CASE("constant h lifts to 2c K_q") {
    WeightVector q({2, 3});
    InvariantMonomial c;
    c.alpha = {0, 0};
    c.beta = {0, 0};
    c.time = {TimeTerm{TimeTerm::Kind::Cos, 0, 1.5}};
    LiftedHamiltonian H({c}, q);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 10; ++i) {
        CVec z = random_point(rng, 2);
        CHECK(H.evaluate(z, 0.0) == doctest::Approx(2.0 * 1.5 * moment_map(z, q)));
        auto g = H.gradient(z, 0.0);
        for (std::size_t j = 0; j < 2; ++j) {
            Complex expect = 2.0 * 1.5 * static_cast<double>(q[j]) * z[j];
            CHECK(std::abs(g[j] - expect) < 1e-9 * (1.0 + std::abs(expect)));
        }
    }
}

TEST_CASE("homogeneity, invariance, zero") {
    WeightVector q({2, 2, 3});
    LiftedHamiltonian H({monomial({1, 0, 0}, {0, 1, 0}, 0.7),
                         monomial({0, 1, 0}, {1, 0, 0}, 0.7),
                         monomial({1, 1, 0}, {1, 1, 0}, 0.4)},
                        q);
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> sdist(0.0, 2.0 * std::numbers::pi);
    for (int i = 0; i < 20; ++i) {
        CVec z = random_point(rng, 3);
        double t = 0.37;
        double v = H.evaluate(z, t);
        // invariance under the circle action
        double vs = H.evaluate(circle_action(sdist(rng), z, q), t);
        CHECK(std::abs(vs - v) <= 1e-10 * (1.0 + std::abs(v)));
        // degree-2 homogeneity
        CVec z2 = z;
        for (auto& c : z2) c *= 2.0;
        CHECK(H.evaluate(z2, t) == doctest::Approx(4.0 * v).epsilon(1e-10));
        // Euler identity <grad, z> = 2 H
        auto g = H.gradient(z, t);
        double pair = 0.0;
        for (std::size_t j = 0; j < 3; ++j) pair += (g[j] * std::conj(z[j])).real();
        CHECK(pair == doctest::Approx(2.0 * v).epsilon(1e-8));
        // {H, K} = 0: gradient orthogonal to X_K = (i q_j z_j)
        double poisson = 0.0;
        for (std::size_t j = 0; j < 3; ++j)
            poisson += (g[j] * std::conj(Complex(0, 1) * static_cast<double>(q[j]) * z[j])).real();
        CHECK(std::abs(poisson) <= 1e-8 * (1.0 + std::abs(v)));
    }
    CHECK(H.evaluate(CVec(3, Complex(0, 0)), 0.0) == 0.0);
}

TEST_CASE("gradient matches finite differences") {
    std::mt19937_64 rng(7);
    WeightVector q({2, 3});
    // quadratic, constant-lift, and a genuinely nonlinear invariant mix
    LiftedHamiltonian quad = LiftedHamiltonian::quadratic({0.8, -0.3}, q);
    LiftedHamiltonian mixed({monomial({3, 0}, {0, 2}, 0.2), monomial({0, 2}, {3, 0}, 0.2),
                             monomial({1, 0}, {1, 0}, 0.5)},
                            q);
    for (const auto* H : {&quad, &mixed}) {
        for (int i = 0; i < 50; ++i) {
            CVec z = random_point(rng, 2);
            double t = 0.1 * i;
            auto g = H->gradient(z, t);
            auto gfd = fd_gradient(*H, z, t);
            for (std::size_t j = 0; j < 2; ++j)
                CHECK(std::abs(g[j] - gfd[j]) <= 1e-6 * (1.0 + std::abs(gfd[j])));
        }
    }
    // quadratic closed form 2 a_j z_j
    CVec z = random_point(rng, 2);
    auto g = quad.gradient(z, 0.0);
    CHECK(std::abs(g[0] - 2.0 * 0.8 * z[0]) < 1e-10);
    CHECK(std::abs(g[1] - 2.0 * -0.3 * z[1]) < 1e-10);
}

TEST_CASE("hamiltonian bound") {
    WeightVector q({1, 1});
    LiftedHamiltonian zero({}, q);
    CHECK(zero.bound() == 0.0);

    auto quad = LiftedHamiltonian::quadratic({1.0, 3.0}, q);
    double m = quad.bound();
    CHECK(m >= 2.0 * 3.0 - 1e-6);   // sup over sphere is max a_j
    CHECK(m <= 1.06 * 2.0 * 3.0);   // 5 percent inflation margin

    // time-dependent sign-changing coefficient doubles the bound
    InvariantMonomial osc;
    osc.alpha = {1, 0};
    osc.beta = {1, 0};
    osc.time = {TimeTerm{TimeTerm::Kind::Sin, 1, 2.0}};
    LiftedHamiltonian H({osc}, q);
    double mb = H.bound();
    CHECK(mb >= 2.0 * (2.0 + 2.0) - 1e-3);  // sup 2, inf -2, shifted sup 4
    CHECK(mb <= 1.06 * 8.0);
}

TEST_CASE("spec file parsing") {
    auto doc = nlohmann::json::parse(R"({
        "weights": [2, 3],
        "terms": [
            { "alpha": [1, 0], "beta": [1, 0],
              "time": [{"cos": 0, "amp": 0.5}, {"sin": 1, "amp": 0.1}] }
        ]
    })");
    auto H = LiftedHamiltonian::from_json(doc);
    CHECK(H.weights().entries() == std::vector<std::int64_t>{2, 3});
    CHECK(!H.autonomous());
    // c(0.25) = 0.5 + 0.1 sin(pi/2) = 0.6 on |z_1|^2
    CHECK(H.evaluate({{1, 0}, {0, 0}}, 0.25) == doctest::Approx(0.6));

    auto bad = doc;
    bad["terms"][0]["beta"] = {0, 1};
    CHECK_THROWS_AS(LiftedHamiltonian::from_json(bad), std::invalid_argument);
}
