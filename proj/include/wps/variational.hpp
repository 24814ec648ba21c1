#ifndef WPS_VARIATIONAL_HPP
#define WPS_VARIATIONAL_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "wps/core.hpp"
#include "wps/hamiltonians.hpp"

namespace wps {

enum class LoopMode { Periodic, Chord };

/// Truncated Fourier loop/chord in C^{n+1}: modes k in [-m, m] over the
/// basis e^{2 pi i k t} (periodic) or e^{pi i k t} (chord). Chord mode keeps
/// REAL coefficient vectors, which structurally enforces u(0), u(1) real;
/// its real dimension is (2m+1)(n+1).
class FourierLoop {
public:
    FourierLoop(LoopMode mode, int m, std::size_t dim);

    LoopMode mode() const { return mode_; }
    int order() const { return m_; }
    std::size_t dim() const { return dim_; }

    Complex coeff(int k, std::size_t j) const;
    void set_coeff(int k, std::size_t j, Complex v);  // chord: imag part must vanish

    CVec eval(double t) const;

    int real_dimension() const;
    std::vector<double> pack() const;
    static FourierLoop unpack(LoopMode mode, int m, std::size_t dim,
                              const std::vector<double>& x);

    /// Zero-padded embedding into a finer truncation (the ladder step).
    FourierLoop lift(int new_m) const;

    FourierLoop& operator*=(double c);

private:
    LoopMode mode_;
    int m_;
    std::size_t dim_;
    std::vector<Complex> c_;  // (k + m) * dim + j
};

/// The action functional: Phi_H in periodic mode, J_H in chord mode.
/// Quadratic part from coefficients exactly; the Hamiltonian integral by
/// Gauss-Legendre quadrature with >= 4 (m + max polynomial degree) nodes.
double phi(const FourierLoop& u, const LiftedHamiltonian& H);

/// K_q(u) = int_0^1 K_q(u(t)) dt = 1/2 sum_j q_j sum_k |c_k^(j)|^2 (Parseval).
double constraint(const FourierLoop& u, const WeightVector& q);

/// L2-pairing gradient, coefficientwise. Never mixes modes or coordinates
/// in its constraint part.
FourierLoop gradient_phi(const FourierLoop& u, const LiftedHamiltonian& H);
FourierLoop constraint_gradient(const FourierLoop& u, const WeightVector& q);

struct CriticalSolution {
    FourierLoop loop;
    double lambda;         // Lagrange multiplier
    double value;          // Phi_H or J_H at the solution; equals lambda
    double residual;       // norm of the projected gradient
    double class_modulus;  // 2 pi (periodic) or pi (chord)
    double lambda_class;   // lambda mod class_modulus, in [0, modulus)
};

struct SolveOptions {
    double tol_newton = 1e-9;
    int max_iterations = 60;
    double dedup_class_tol = 1e-6;
};

/// Newton iteration on {grad phi(u) = lambda grad K(u), K(u) = 1} in the
/// truncated space, with Tikhonov fallbacks for the symmetry null direction.
/// The seed is rescaled exactly onto S(q) first. Non-convergence is absence.
std::optional<CriticalSolution> solve_critical(const LiftedHamiltonian& H, FourierLoop seed,
                                               const SolveOptions& opts = {});

/// Runs solve_critical from all eigen-directions |k| <= m plus random seeds
/// up to `budget`, deduplicating by (lambda class, loop orbit equivalence
/// under T_s, and the Z_2 flip in chord mode).
std::vector<CriticalSolution> enumerate_solutions(const LiftedHamiltonian& H, LoopMode mode,
                                                  int m, int budget, std::uint64_t rng_seed = 1,
                                                  const SolveOptions& opts = {});

/// Number of distinct lambda classes (mod the mode's modulus) in a solution set.
int distinct_class_count(const std::vector<CriticalSolution>& sols, double tol = 1e-6);

/// On-sphere eigen-direction seed sqrt(2/q_j) * basis_k * eps_j.
FourierLoop eigen_seed(LoopMode mode, int m, const WeightVector& q, int k, std::size_t j);

/// Are two loops on the same T_s orbit (chord mode also checks the Z_2 flip)?
bool loops_equivalent(const FourierLoop& a, const FourierLoop& b, const WeightVector& q,
                      double tol = 1e-6);

}  // namespace wps

#endif
