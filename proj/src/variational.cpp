#include "wps/variational.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace wps {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Gauss-Legendre nodes/weights on [0, 1], cached per node count.
struct Quadrature {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const Quadrature& gauss_legendre(int n) {
    static std::map<int, Quadrature> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    Quadrature q;
    q.nodes.resize(n);
    q.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Root of P_n on [-1, 1] by Newton from the Chebyshev estimate.
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it2 = 0; it2 < 100; ++it2) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        q.nodes[i] = 0.5 * (x + 1.0);
        q.weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);  // already halved for [0,1]
    }
    return cache.emplace(n, std::move(q)).first->second;
}

double mode_freq(LoopMode mode) { return mode == LoopMode::Periodic ? kTwoPi : kPi; }

double positive_mod(double x, double modulus) {
    double r = std::fmod(x, modulus);
    if (r < 0.0) r += modulus;
    if (r >= modulus) r = 0.0;
    return r;
}

}  // namespace

FourierLoop::FourierLoop(LoopMode mode, int m, std::size_t dim)
    : mode_(mode), m_(m), dim_(dim), c_(static_cast<std::size_t>(2 * m + 1) * dim) {
    if (m < 1) throw std::invalid_argument("FourierLoop: truncation order must be >= 1");
    if (dim < 2) throw std::invalid_argument("FourierLoop: dimension must be >= 2");
}

Complex FourierLoop::coeff(int k, std::size_t j) const {
    return c_[static_cast<std::size_t>(k + m_) * dim_ + j];
}

void FourierLoop::set_coeff(int k, std::size_t j, Complex v) {
    if (mode_ == LoopMode::Chord && v.imag() != 0.0)
        throw std::invalid_argument("chord-mode coefficients are real");
    c_[static_cast<std::size_t>(k + m_) * dim_ + j] = v;
}

CVec FourierLoop::eval(double t) const {
    CVec out(dim_, Complex(0.0, 0.0));
    double w = mode_freq(mode_);
    for (int k = -m_; k <= m_; ++k) {
        Complex basis = std::polar(1.0, w * k * t);
        const Complex* row = &c_[static_cast<std::size_t>(k + m_) * dim_];
        for (std::size_t j = 0; j < dim_; ++j) out[j] += row[j] * basis;
    }
    return out;
}

int FourierLoop::real_dimension() const {
    int per_coeff = mode_ == LoopMode::Periodic ? 2 : 1;
    return per_coeff * (2 * m_ + 1) * static_cast<int>(dim_);
}

std::vector<double> FourierLoop::pack() const {
    std::vector<double> x;
    x.reserve(static_cast<std::size_t>(real_dimension()));
    for (const auto& c : c_) {
        x.push_back(c.real());
        if (mode_ == LoopMode::Periodic) x.push_back(c.imag());
    }
    return x;
}

FourierLoop FourierLoop::unpack(LoopMode mode, int m, std::size_t dim,
                                const std::vector<double>& x) {
    FourierLoop u(mode, m, dim);
    std::size_t idx = 0;
    for (auto& c : u.c_) {
        double re = x.at(idx++);
        double im = mode == LoopMode::Periodic ? x.at(idx++) : 0.0;
        c = Complex(re, im);
    }
    return u;
}

FourierLoop FourierLoop::lift(int new_m) const {
    if (new_m < m_) throw std::invalid_argument("lift: new order must not shrink");
    FourierLoop out(mode_, new_m, dim_);
    for (int k = -m_; k <= m_; ++k)
        for (std::size_t j = 0; j < dim_; ++j)
            out.c_[static_cast<std::size_t>(k + new_m) * dim_ + j] = coeff(k, j);
    return out;
}

FourierLoop& FourierLoop::operator*=(double c) {
    for (auto& v : c_) v *= c;
    return *this;
}

double constraint(const FourierLoop& u, const WeightVector& q) {
    if (u.dim() != q.size()) throw std::invalid_argument("constraint: dimension mismatch");
    double acc = 0.0;
    for (int k = -u.order(); k <= u.order(); ++k)
        for (std::size_t j = 0; j < u.dim(); ++j)
            acc += static_cast<double>(q[j]) * std::norm(u.coeff(k, j));
    return 0.5 * acc;
}

FourierLoop constraint_gradient(const FourierLoop& u, const WeightVector& q) {
    if (u.dim() != q.size())
        throw std::invalid_argument("constraint_gradient: dimension mismatch");
    FourierLoop g(u.mode(), u.order(), u.dim());
    for (int k = -u.order(); k <= u.order(); ++k)
        for (std::size_t j = 0; j < u.dim(); ++j)
            g.set_coeff(k, j, static_cast<double>(q[j]) * u.coeff(k, j));
    return g;
}

namespace {

int quad_node_count(const FourierLoop& u, const LiftedHamiltonian& H) {
    return std::max(16, 4 * (u.order() + std::max(2, H.max_degree())));
}

double quadratic_part(const FourierLoop& u) {
    // periodic: pi sum k |u_k|^2;  chord: (pi/2) sum k |c_k|^2
    double scale = u.mode() == LoopMode::Periodic ? kPi : 0.5 * kPi;
    double acc = 0.0;
    for (int k = -u.order(); k <= u.order(); ++k)
        for (std::size_t j = 0; j < u.dim(); ++j)
            acc += static_cast<double>(k) * std::norm(u.coeff(k, j));
    return scale * acc;
}

double hamiltonian_integral(const FourierLoop& u, const LiftedHamiltonian& H) {
    if (H.terms().empty()) return 0.0;
    const auto& gq = gauss_legendre(quad_node_count(u, H));
    double acc = 0.0;
    for (std::size_t i = 0; i < gq.nodes.size(); ++i)
        acc += gq.weights[i] * H.evaluate(u.eval(gq.nodes[i]), gq.nodes[i]);
    return acc;
}

}  // namespace

double phi(const FourierLoop& u, const LiftedHamiltonian& H) {
    if (u.dim() != H.weights().size()) throw std::invalid_argument("phi: dimension mismatch");
    return quadratic_part(u) - hamiltonian_integral(u, H);
}

FourierLoop gradient_phi(const FourierLoop& u, const LiftedHamiltonian& H) {
    if (u.dim() != H.weights().size())
        throw std::invalid_argument("gradient_phi: dimension mismatch");
    FourierLoop g(u.mode(), u.order(), u.dim());
    double lin = u.mode() == LoopMode::Periodic ? kTwoPi : kPi;
    for (int k = -u.order(); k <= u.order(); ++k)
        for (std::size_t j = 0; j < u.dim(); ++j)
            g.set_coeff(k, j, lin * static_cast<double>(k) * u.coeff(k, j));

    if (H.terms().empty()) return g;

    // Fourier coefficients of t -> grad H_t(u(t)) by quadrature.
    const auto& gq = gauss_legendre(quad_node_count(u, H));
    double w = mode_freq(u.mode());
    std::vector<Complex> hat(static_cast<std::size_t>(2 * u.order() + 1) * u.dim(),
                             Complex(0.0, 0.0));
    for (std::size_t i = 0; i < gq.nodes.size(); ++i) {
        double t = gq.nodes[i];
        CVec grad = H.gradient(u.eval(t), t);
        for (int k = -u.order(); k <= u.order(); ++k) {
            Complex e = std::polar(gq.weights[i], -w * k * t);
            for (std::size_t j = 0; j < u.dim(); ++j)
                hat[static_cast<std::size_t>(k + u.order()) * u.dim() + j] += grad[j] * e;
        }
    }
    for (int k = -u.order(); k <= u.order(); ++k)
        for (std::size_t j = 0; j < u.dim(); ++j) {
            Complex h = hat[static_cast<std::size_t>(k + u.order()) * u.dim() + j];
            if (u.mode() == LoopMode::Chord) h = Complex(h.real(), 0.0);
            g.set_coeff(k, j, g.coeff(k, j) - h);
        }
    return g;
}

std::optional<CriticalSolution> solve_critical(const LiftedHamiltonian& H, FourierLoop seed,
                                               const SolveOptions& opts) {
    const WeightVector& q = H.weights();
    if (seed.dim() != q.size()) throw std::invalid_argument("solve_critical: dimension mismatch");

    double k0 = constraint(seed, q);
    if (k0 <= 1e-12) return std::nullopt;
    if (std::abs(k0 - 1.0) > 0.5) return std::nullopt;
    seed *= 1.0 / std::sqrt(k0);  // exact rescaling onto S(q)

    LoopMode mode = seed.mode();
    int m = seed.order();
    std::size_t dim = seed.dim();
    std::size_t nu = static_cast<std::size_t>(seed.real_dimension());

    auto residual = [&](const std::vector<double>& x, double lambda) {
        FourierLoop u = FourierLoop::unpack(mode, m, dim, x);
        FourierLoop g = gradient_phi(u, H);
        FourierLoop cg = constraint_gradient(u, q);
        auto gp = g.pack();
        auto cp = cg.pack();
        Eigen::VectorXd f(static_cast<Eigen::Index>(nu) + 1);
        for (std::size_t i = 0; i < nu; ++i)
            f[static_cast<Eigen::Index>(i)] = gp[i] - lambda * cp[i];
        f[static_cast<Eigen::Index>(nu)] = constraint(u, q) - 1.0;
        return f;
    };

    std::vector<double> x = seed.pack();
    double lambda = phi(seed, H);
    Eigen::VectorXd f = residual(x, lambda);

    const double fd = 1e-7;
    const double tikhonov[] = {0.0, 1e-10, 1e-6, 1e-2};

    for (int it = 0; it < opts.max_iterations; ++it) {
        if (f.lpNorm<Eigen::Infinity>() <= opts.tol_newton) break;

        Eigen::MatrixXd jac(static_cast<Eigen::Index>(nu) + 1, static_cast<Eigen::Index>(nu) + 1);
        for (std::size_t c = 0; c < nu; ++c) {
            auto xp = x;
            xp[c] += fd;
            jac.col(static_cast<Eigen::Index>(c)) = (residual(xp, lambda) - f) / fd;
        }
        jac.col(static_cast<Eigen::Index>(nu)) = (residual(x, lambda + fd) - f) / fd;

        bool stepped = false;
        for (double mu : tikhonov) {
            Eigen::VectorXd delta;
            if (mu == 0.0) {
                delta = jac.colPivHouseholderQr().solve(-f);
            } else {
                Eigen::MatrixXd jtj = jac.transpose() * jac;
                jtj.diagonal().array() += mu;
                delta = jtj.ldlt().solve(-jac.transpose() * f);
            }
            if (!delta.allFinite()) continue;
            auto xn = x;
            for (std::size_t i = 0; i < nu; ++i) xn[i] += delta[static_cast<Eigen::Index>(i)];
            double ln = lambda + delta[static_cast<Eigen::Index>(nu)];
            Eigen::VectorXd fn = residual(xn, ln);
            if (fn.allFinite() && fn.norm() < f.norm()) {
                x = std::move(xn);
                lambda = ln;
                f = std::move(fn);
                stepped = true;
                break;
            }
        }
        if (!stepped) return std::nullopt;
    }
    if (f.lpNorm<Eigen::Infinity>() > opts.tol_newton) return std::nullopt;

    FourierLoop u = FourierLoop::unpack(mode, m, dim, x);
    CriticalSolution sol{u, lambda, phi(u, H), 0.0,
                         mode == LoopMode::Periodic ? kTwoPi : kPi, 0.0};
    sol.residual = f.head(static_cast<Eigen::Index>(nu)).norm();
    sol.lambda_class = positive_mod(lambda, sol.class_modulus);
    return sol;
}

FourierLoop eigen_seed(LoopMode mode, int m, const WeightVector& q, int k, std::size_t j) {
    FourierLoop u(mode, m, q.size());
    u.set_coeff(k, j, Complex(std::sqrt(2.0 / static_cast<double>(q[j])), 0.0));
    return u;
}

bool loops_equivalent(const FourierLoop& a, const FourierLoop& b, const WeightVector& q,
                      double tol) {
    if (a.mode() != b.mode() || a.order() != b.order() || a.dim() != b.dim()) return false;

    auto orbit_gap = [&](const FourierLoop& u, const FourierLoop& v) {
        double offset = 0.0;
        std::vector<Complex> w(u.dim(), Complex(0.0, 0.0));
        for (int k = -u.order(); k <= u.order(); ++k)
            for (std::size_t j = 0; j < u.dim(); ++j) {
                offset += std::norm(u.coeff(k, j)) + std::norm(v.coeff(k, j));
                w[j] += u.coeff(k, j) * std::conj(v.coeff(k, j));
            }
        return minimize_action_gap(w, offset, q).d;
    };

    if (orbit_gap(a, b) <= tol) return true;
    if (a.mode() == LoopMode::Chord) {
        // Z_2 flip g = -1: coordinate j picks up (-1)^{q_j}.
        FourierLoop flipped = b;
        for (int k = -b.order(); k <= b.order(); ++k)
            for (std::size_t j = 0; j < b.dim(); ++j)
                if (q[j] % 2 != 0) flipped.set_coeff(k, j, -b.coeff(k, j));
        if (orbit_gap(a, flipped) <= tol) return true;
    }
    return false;
}

std::vector<CriticalSolution> enumerate_solutions(const LiftedHamiltonian& H, LoopMode mode,
                                                  int m, int budget, std::uint64_t rng_seed,
                                                  const SolveOptions& opts) {
    const WeightVector& q = H.weights();
    if (m < 2) throw std::invalid_argument("enumerate_solutions: m must be >= 2");
    if (budget < q.n() + 1)
        throw std::invalid_argument("enumerate_solutions: budget must be >= n+1");

    std::vector<FourierLoop> seeds;
    for (int k = -m; k <= m; ++k)
        for (std::size_t j = 0; j < q.size(); ++j) seeds.push_back(eigen_seed(mode, m, q, k, j));

    std::mt19937_64 rng(rng_seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    while (seeds.size() < static_cast<std::size_t>(budget)) {
        FourierLoop u(mode, m, q.size());
        for (int k = -m; k <= m; ++k)
            for (std::size_t j = 0; j < q.size(); ++j) {
                double decay = 1.0 / (1.0 + static_cast<double>(k) * k);
                double re = decay * gauss(rng);
                double im = mode == LoopMode::Periodic ? decay * gauss(rng) : 0.0;
                u.set_coeff(k, j, Complex(re, im));
            }
        double c = constraint(u, q);
        if (c <= 1e-9) continue;
        u *= 1.0 / std::sqrt(c);
        seeds.push_back(std::move(u));
    }

    std::vector<CriticalSolution> kept;
    for (const auto& seed : seeds) {
        auto sol = solve_critical(H, seed, opts);
        if (!sol) continue;
        bool duplicate = false;
        for (const auto& prev : kept) {
            double gap = std::abs(prev.lambda_class - sol->lambda_class);
            gap = std::min(gap, prev.class_modulus - gap);
            if (gap <= opts.dedup_class_tol &&
                loops_equivalent(prev.loop, sol->loop, q, 1e-5)) {
                duplicate = true;
                break;
            }
        }
        if (!duplicate) kept.push_back(std::move(*sol));
    }

    std::sort(kept.begin(), kept.end(), [](const CriticalSolution& a, const CriticalSolution& b) {
        return a.lambda_class < b.lambda_class;
    });
    return kept;
}

int distinct_class_count(const std::vector<CriticalSolution>& sols, double tol) {
    std::vector<double> classes;
    for (const auto& s : sols) classes.push_back(s.lambda_class);
    std::sort(classes.begin(), classes.end());
    int count = 0;
    double modulus = sols.empty() ? kTwoPi : sols.front().class_modulus;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        if (i == 0 || classes[i] - classes[i - 1] > tol) ++count;
    }
    // Wraparound: first and last may be the same class mod the modulus.
    if (count > 1 && (classes.front() + modulus - classes.back()) <= tol) --count;
    return count;
}

}  // namespace wps
