#ifndef WPS_CORE_HPP
#define WPS_CORE_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace wps {

using Complex = std::complex<double>;
using CVec = std::vector<Complex>;

// Default tolerances; every consumer can override them explicitly.
inline constexpr double kTolZero = 1e-12;    // |z_j| cutoff for "z_j != 0"
inline constexpr double kTolSphere = 1e-10;  // |2 K_q(z) - 1| on the sphere
inline constexpr double kTolOrbit = 1e-8;    // orbit distance identification

/// Tuple of positive integer weights q = (q_1, ..., q_{n+1}), n >= 1.
/// Keeps the original order; a descending sorted view is available.
class WeightVector {
public:
    explicit WeightVector(std::vector<std::int64_t> entries);

    // Parses comma-separated positive integers, e.g. "2,2,3".
    static WeightVector parse(const std::string& csv);

    std::size_t size() const { return q_.size(); }
    int n() const { return static_cast<int>(q_.size()) - 1; }
    std::int64_t operator[](std::size_t i) const { return q_[i]; }
    const std::vector<std::int64_t>& entries() const { return q_; }

    std::vector<std::int64_t> sorted_descending() const;
    std::int64_t max_weight() const;
    std::int64_t min_weight() const;
    std::int64_t sum() const;
    std::int64_t gcd_all() const;
    // lcm of all weights, saturated at `cap` to keep grid sizes sane.
    std::int64_t lcm_all(std::int64_t cap) const;
    bool all_odd() const;
    bool all_ones() const;

private:
    std::vector<std::int64_t> q_;
};

/// K_q(z) = 1/2 sum q_i |z_i|^2, the moment map of the weighted circle action.
double moment_map(const CVec& z, const WeightVector& q);

/// A_s^q(z)_j = e^{i q_j s} z_j.
CVec circle_action(double s, const CVec& z, const WeightVector& q);

/// alpha . z = (alpha^{q_1} z_1, ..., alpha^{q_{n+1}} z_{n+1}), alpha != 0.
/// Integer powers are computed by squaring so that Z_2 cases stay exact.
CVec weighted_scalar_action(Complex alpha, const CVec& z, const WeightVector& q);

/// m(z) = gcd{ q_j : |z_j| > tol_zero }; the point [z] is smooth iff 1.
std::int64_t orbifold_group_order(const CVec& z, const WeightVector& q,
                                  double tol_zero = kTolZero);

struct SphereNormalization {
    double r;    // radial factor, z = r * point
    CVec point;  // on S^{2n+1}(q)
};

/// Unique z = r z' with z' on the weighted sphere K_q = 1/2.
SphereNormalization normalize_to_sphere(const CVec& z, const WeightVector& q);

bool on_sphere(const CVec& z, const WeightVector& q, double tol = kTolSphere);

struct OrbitDistance {
    double d;  // min over s of |A_s a - b|
    double s;  // minimizer in [0, 2pi)
};

/// Chordal distance between the circle orbits of two sphere points.
/// d <= tol_orbit iff the points project to the same point of CP^n(q).
OrbitDistance orbit_distance(const CVec& a, const CVec& b, const WeightVector& q);

/// Minimizes f(s) = offset - 2 Re sum_j e^{i q_j s} w_j over s in [0, 2pi).
/// Shared kernel of orbit_distance and the loop-orbit comparison: there the
/// w_j collect a_j conj(b_j) summed over whatever index carries coordinate j.
/// f is a trigonometric polynomial of degree <= max q; the grid is dense
/// enough that no local minimum is skipped before golden-section refinement.
OrbitDistance minimize_action_gap(const std::vector<Complex>& w, double offset,
                                  const WeightVector& q);

/// Parses a point from a JSON-style array of [re, im] pairs.
CVec parse_point(const std::string& json_text);

}  // namespace wps

#endif
