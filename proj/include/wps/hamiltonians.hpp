#ifndef WPS_HAMILTONIANS_HPP
#define WPS_HAMILTONIANS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wps/core.hpp"

namespace wps {

/// One cos/sin harmonic of a real 1-periodic time coefficient.
struct TimeTerm {
    enum class Kind { Cos, Sin };
    Kind kind = Kind::Cos;
    int mode = 0;
    double amp = 0.0;
};

/// c(t) z^alpha conj(z)^beta with a real coefficient c(t). Construction
/// requires sum (alpha_j - beta_j) q_j = 0, the S^1-invariance condition.
struct InvariantMonomial {
    std::vector<int> alpha;
    std::vector<int> beta;
    std::vector<TimeTerm> time;  // empty means the constant 1

    double coeff_at(double t) const;
    int degree() const;
    bool time_dependent() const;
};

/// The degree-two homogeneous lift H_t(z) = 2 K_q(z) P_t(z / sqrt(2 K_q(z)))
/// of an invariant polynomial P_t on the weighted sphere. Immutable; all
/// member functions are pure.
class LiftedHamiltonian {
public:
    LiftedHamiltonian(std::vector<InvariantMonomial> terms, WeightVector q,
                      bool radial_cutoff = false);

    static LiftedHamiltonian quadratic(const std::vector<double>& a, const WeightVector& q);
    static LiftedHamiltonian from_json(const nlohmann::json& doc);

    double evaluate(const CVec& z, double t) const;
    /// Real gradient of z -> H_t(z), returned as the complex vector whose
    /// component j is dH/dx_j + i dH/dy_j. Exact chain rule through the
    /// radial normalization; zero at the origin by homogeneity.
    CVec gradient(const CVec& z, double t) const;

    /// M = 2 sup h after lifting any negative part to zero, estimated by
    /// sphere sampling with local refinement and inflated by 5 percent.
    double bound() const;

    const WeightVector& weights() const { return q_; }
    const std::vector<InvariantMonomial>& terms() const { return terms_; }
    bool autonomous() const;
    int max_degree() const;
    bool is_quadratic_diagonal() const;  // every term alpha == beta == e_j, constant in t

private:
    // P_t and its Wirtinger derivative dP/dconj(w); value is real for closed
    // term sets, derivative is the complex vector G with real gradient 2G.
    double poly_value(const CVec& w, double t) const;
    void poly_wirtinger(const CVec& w, double t, double& value, CVec& g) const;

    std::vector<InvariantMonomial> terms_;
    WeightVector q_;
    bool radial_cutoff_;
    mutable double cached_bound_ = -1.0;
};

/// Parses the Hamiltonian spec file format:
/// { "weights": [..], "terms": [ { "alpha": [..], "beta": [..],
///   "time": [{"cos": m, "amp": a}, {"sin": m, "amp": b}] } ] }
LiftedHamiltonian parse_hamiltonian_file(const std::string& path);

}  // namespace wps

#endif
