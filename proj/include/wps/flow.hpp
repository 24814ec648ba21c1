#ifndef WPS_FLOW_HPP
#define WPS_FLOW_HPP

#include <optional>
#include <vector>

#include "wps/core.hpp"
#include "wps/hamiltonians.hpp"

namespace wps {

inline constexpr double kTolConserve = 1e-9;
inline constexpr double kTolFix = 1e-7;

struct FlowOptions {
    double rtol = 1e-12;
    double atol = 1e-13;
    int max_steps = 2'000'000;
    int trajectory_samples = 0;  // 0: endpoint only
};

struct FlowResult {
    std::vector<std::pair<double, CVec>> trajectory;
    CVec endpoint;
    double kq_drift;                // max |2 K_q(z) - 1| before renormalization
    std::optional<double> h_drift;  // autonomous runs: max |H + lambda K - const|
    bool conservative;              // kq_drift <= tol_conserve
};

/// Integrates dz/dt = i grad H_t(z) + i lambda (q_j z_j) over [0, 1] with
/// embedded Dormand-Prince 5(4) stepping. Sphere-started runs are radially
/// renormalized after each accepted step; the drift is recorded first, so
/// conservation is genuinely monitored.
FlowResult integrate(const LiftedHamiltonian& H, double lambda, const CVec& z0,
                     const FlowOptions& opts = {});

/// Endpoint of the lambda = 0 flow; descends to the time-one map on CP^n(q).
CVec time_one_map(const LiftedHamiltonian& H, const CVec& p, const FlowOptions& opts = {});

struct FixedPointRecord {
    CVec rep;             // sphere representative of the fixed orbit
    double lambda;        // multiplier closing the lifted loop
    double lambda_class;  // lambda mod 2 pi, in [0, 2 pi)
    double residual;      // orbit distance of endpoint to start
};

/// The n+1 coordinate fixed points of the time-one map of a generic
/// diagonal quadratic Hamiltonian, from the closed-form flow
/// z_j(t) = e^{i (2 a_j + lambda q_j) t} z_j(0). Non-generic data (some
/// pair of coordinates admits a common closing rotation) is an error.
std::vector<FixedPointRecord> quadratic_fixed_points(const std::vector<double>& a,
                                                     const WeightVector& q);

struct DetectOptions {
    FlowOptions flow;
    double tol_fix = kTolFix;
    int max_refine = 50;
};

/// Checks whether the seed's orbit is fixed by the time-one map; refines by
/// quasi-Newton on p -> nearest-orbit representative of the image when not.
/// Absence is a value, not an error.
std::optional<FixedPointRecord> detect_fixed_point(const LiftedHamiltonian& H, const CVec& seed,
                                                   const DetectOptions& opts = {});

}  // namespace wps

#endif
