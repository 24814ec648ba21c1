#include "wps/flow.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wps {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

CVec axpy(const CVec& base, double h, std::initializer_list<std::pair<double, const CVec*>> ks) {
    CVec out = base;
    for (auto [w, k] : ks)
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += h * w * (*k)[i];
    return out;
}

double double_mod_2pi(double x) {
    double r = std::fmod(x, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

Eigen::VectorXd to_real(const CVec& z) {
    Eigen::VectorXd v(2 * z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        v[2 * i] = z[i].real();
        v[2 * i + 1] = z[i].imag();
    }
    return v;
}

CVec to_complex(const Eigen::VectorXd& v) {
    CVec z(static_cast<std::size_t>(v.size()) / 2);
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = Complex(v[2 * i], v[2 * i + 1]);
    return z;
}

}  // namespace

FlowResult integrate(const LiftedHamiltonian& H, double lambda, const CVec& z0,
                     const FlowOptions& opts) {
    const WeightVector& q = H.weights();
    if (z0.size() != q.size()) throw std::invalid_argument("integrate: dimension mismatch");

    auto rhs = [&](double t, const CVec& z) {
        CVec g = H.gradient(z, t);
        CVec f(z.size());
        const Complex i_unit(0.0, 1.0);
        for (std::size_t j = 0; j < z.size(); ++j)
            f[j] = i_unit * (g[j] + lambda * static_cast<double>(q[j]) * z[j]);
        return f;
    };

    bool sphere_started = on_sphere(z0, q);
    bool track_energy = H.autonomous();
    double e0 = track_energy ? H.evaluate(z0, 0.0) + lambda * moment_map(z0, q) : 0.0;

    FlowResult res;
    res.kq_drift = 0.0;
    if (track_energy) res.h_drift = 0.0;
    if (opts.trajectory_samples > 0) res.trajectory.push_back({0.0, z0});

    CVec z = z0;
    double t = 0.0, h = 1e-3;
    CVec k1 = rhs(t, z);
    int steps = 0;

    while (t < 1.0) {
        if (++steps > opts.max_steps)
            throw std::runtime_error("integrate: step limit exceeded at t=" + std::to_string(t));
        if (t + h > 1.0) h = 1.0 - t;
        if (h < 1e-15)
            throw std::runtime_error("integrate: step-size underflow at t=" + std::to_string(t));

        CVec y2 = axpy(z, h, {{a21, &k1}});
        CVec k2 = rhs(t + c2 * h, y2);
        CVec y3 = axpy(z, h, {{a31, &k1}, {a32, &k2}});
        CVec k3 = rhs(t + c3 * h, y3);
        CVec y4 = axpy(z, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}});
        CVec k4 = rhs(t + c4 * h, y4);
        CVec y5 = axpy(z, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}});
        CVec k5 = rhs(t + c5 * h, y5);
        CVec y6 = axpy(z, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}});
        CVec k6 = rhs(t + h, y6);
        CVec y7 = axpy(z, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
        CVec k7 = rhs(t + h, y7);

        double err = 0.0;
        for (std::size_t i = 0; i < z.size(); ++i) {
            Complex de = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                              e7 * k7[i]);
            double scale = opts.atol + opts.rtol * std::max(std::abs(z[i]), std::abs(y7[i]));
            err = std::max(err, std::abs(de) / scale);
        }

        if (err <= 1.0) {
            t += h;
            z = std::move(y7);
            k1 = std::move(k7);  // FSAL
            if (sphere_started) {
                double drift = std::abs(2.0 * moment_map(z, q) - 1.0);
                res.kq_drift = std::max(res.kq_drift, drift);
                if (drift > 0.0) {
                    double r = std::sqrt(2.0 * moment_map(z, q));
                    for (auto& c : z) c /= r;
                }
            }
            if (track_energy) {
                double e = H.evaluate(z, 0.0) + lambda * moment_map(z, q);
                res.h_drift = std::max(*res.h_drift, std::abs(e - e0));
            }
            if (opts.trajectory_samples > 0) res.trajectory.push_back({t, z});
        }
        double factor = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        h *= std::clamp(factor, 0.2, 5.0);
    }

    // Thin the trajectory to the requested sample count.
    if (opts.trajectory_samples > 0 &&
        res.trajectory.size() > static_cast<std::size_t>(opts.trajectory_samples)) {
        std::vector<std::pair<double, CVec>> thin;
        std::size_t total = res.trajectory.size();
        for (int i = 0; i < opts.trajectory_samples; ++i)
            thin.push_back(res.trajectory[i * (total - 1) / (opts.trajectory_samples - 1)]);
        res.trajectory = std::move(thin);
    }

    res.endpoint = std::move(z);
    res.conservative = !sphere_started || res.kq_drift <= kTolConserve;
    return res;
}

CVec time_one_map(const LiftedHamiltonian& H, const CVec& p, const FlowOptions& opts) {
    return integrate(H, 0.0, p, opts).endpoint;
}

std::vector<FixedPointRecord> quadratic_fixed_points(const std::vector<double>& a,
                                                     const WeightVector& q) {
    if (a.size() != q.size())
        throw std::invalid_argument("quadratic_fixed_points: coefficient count mismatch");
    std::size_t dim = q.size();

    // Genericity: no two coordinates may share a closing rotation, i.e. no s
    // with q_j s = 2 a_j and q_k s = 2 a_k simultaneously (mod 2 pi).
    std::string resonant;
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t k = j + 1; k < dim; ++k) {
            for (std::int64_t m = 0; m < q[j]; ++m) {
                double s = (2.0 * a[j] + kTwoPi * static_cast<double>(m)) /
                           static_cast<double>(q[j]);
                double gap = double_mod_2pi(static_cast<double>(q[k]) * s - 2.0 * a[k]);
                gap = std::min(gap, kTwoPi - gap);
                if (gap < 1e-9) {
                    resonant += " (" + std::to_string(j + 1) + "," + std::to_string(k + 1) + ")";
                    break;
                }
            }
        }
    }
    if (!resonant.empty())
        throw std::domain_error("quadratic Hamiltonian is non-generic; resonant index pairs:" +
                                resonant);

    std::vector<FixedPointRecord> out;
    for (std::size_t j = 0; j < dim; ++j) {
        FixedPointRecord rec;
        rec.rep.assign(dim, Complex(0.0, 0.0));
        rec.rep[j] = Complex(1.0 / std::sqrt(static_cast<double>(q[j])), 0.0);
        rec.lambda = double_mod_2pi(-2.0 * a[j] / static_cast<double>(q[j]));
        rec.lambda_class = rec.lambda;
        rec.residual = 0.0;
        out.push_back(std::move(rec));
    }
    return out;
}

std::optional<FixedPointRecord> detect_fixed_point(const LiftedHamiltonian& H, const CVec& seed,
                                                   const DetectOptions& opts) {
    const WeightVector& q = H.weights();
    CVec p = normalize_to_sphere(seed, q).point;

    auto make_record = [&](const CVec& rep, double s_star, double d) {
        FixedPointRecord rec;
        rec.rep = rep;
        rec.lambda = double_mod_2pi(s_star);
        rec.lambda_class = rec.lambda;
        rec.residual = d;
        return rec;
    };

    auto image_gap = [&](const CVec& x) {
        CVec e = time_one_map(H, x, opts.flow);
        return std::make_pair(e, orbit_distance(e, x, q));
    };

    auto [end0, od0] = image_gap(p);
    if (od0.d <= opts.tol_fix) return make_record(p, od0.s, od0.d);

    // Quasi-Newton on G(p) = A_{s*}(time-one image) - p, least-squares step
    // (the orbit direction is a structural null direction of the Jacobian).
    std::size_t rdim = 2 * p.size();
    const double fd_step = 1e-6;
    auto residual = [&](const CVec& x) -> Eigen::VectorXd {
        auto [e, od] = image_gap(x);
        CVec moved = circle_action(od.s, e, q);
        Eigen::VectorXd r = to_real(moved) - to_real(x);
        return r;
    };

    CVec x = p;
    for (int it = 0; it < opts.max_refine; ++it) {
        Eigen::VectorXd f0 = residual(x);
        if (f0.norm() <= opts.tol_fix) {
            auto [e, od] = image_gap(x);
            if (od.d <= opts.tol_fix) return make_record(x, od.s, od.d);
        }
        Eigen::MatrixXd jac(rdim, rdim);
        Eigen::VectorXd xv = to_real(x);
        for (std::size_t c = 0; c < rdim; ++c) {
            Eigen::VectorXd xp = xv;
            xp[static_cast<Eigen::Index>(c)] += fd_step;
            CVec zp = normalize_to_sphere(to_complex(xp), q).point;
            jac.col(static_cast<Eigen::Index>(c)) = (residual(zp) - f0) / fd_step;
        }
        Eigen::VectorXd delta =
            jac.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV)
                .setThreshold(1e-8)
                .solve(-f0);
        if (!delta.allFinite()) return std::nullopt;
        // Damped update with sphere projection.
        double step = 1.0;
        Eigen::VectorXd best = xv;
        double best_norm = f0.norm();
        bool improved = false;
        for (int ls = 0; ls < 6; ++ls) {
            Eigen::VectorXd cand = xv + step * delta;
            CVec zc = to_complex(cand);
            if (moment_map(zc, q) <= 0.0) { step *= 0.5; continue; }
            zc = normalize_to_sphere(zc, q).point;
            double rn = residual(zc).norm();
            if (rn < best_norm) {
                best = to_real(zc);
                best_norm = rn;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if (!improved) return std::nullopt;
        x = to_complex(best);
        auto [e, od] = image_gap(x);
        if (od.d <= opts.tol_fix) return make_record(x, od.s, od.d);
    }
    return std::nullopt;
}

}  // namespace wps
