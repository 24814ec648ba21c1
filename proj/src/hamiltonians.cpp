#include "wps/hamiltonians.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>

namespace wps {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex int_pow(Complex base, int e) {
    Complex acc(1.0, 0.0);
    while (e > 0) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

// Canonical form of a time coefficient: merged (kind, mode) -> amplitude.
std::map<std::pair<int, int>, double> canonical_time(const std::vector<TimeTerm>& time) {
    std::map<std::pair<int, int>, double> out;
    if (time.empty()) {
        out[{0, 0}] = 1.0;
        return out;
    }
    for (const auto& tt : time) {
        int kind = tt.kind == TimeTerm::Kind::Cos ? 0 : 1;
        out[{kind, tt.mode}] += tt.amp;
    }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0.0; });
    return out;
}

std::string describe_term(const InvariantMonomial& m) {
    std::string s = "alpha=(";
    for (std::size_t i = 0; i < m.alpha.size(); ++i)
        s += (i ? "," : "") + std::to_string(m.alpha[i]);
    s += "), beta=(";
    for (std::size_t i = 0; i < m.beta.size(); ++i)
        s += (i ? "," : "") + std::to_string(m.beta[i]);
    return s + ")";
}

}  // namespace

double InvariantMonomial::coeff_at(double t) const {
    if (time.empty()) return 1.0;
    double c = 0.0;
    for (const auto& tt : time) {
        double arg = kTwoPi * tt.mode * t;
        c += tt.amp * (tt.kind == TimeTerm::Kind::Cos ? std::cos(arg) : std::sin(arg));
    }
    return c;
}

int InvariantMonomial::degree() const {
    int d = 0;
    for (int a : alpha) d += a;
    for (int b : beta) d += b;
    return d;
}

bool InvariantMonomial::time_dependent() const {
    for (const auto& tt : time)
        if (tt.mode != 0 && tt.amp != 0.0) return true;
    return false;
}

LiftedHamiltonian::LiftedHamiltonian(std::vector<InvariantMonomial> terms, WeightVector q,
                                     bool radial_cutoff)
    : terms_(std::move(terms)), q_(std::move(q)), radial_cutoff_(radial_cutoff) {
    std::size_t dim = q_.size();
    for (const auto& m : terms_) {
        if (m.alpha.size() != dim || m.beta.size() != dim)
            throw std::invalid_argument("Hamiltonian term multi-index length mismatch: " +
                                        describe_term(m));
        for (std::size_t j = 0; j < dim; ++j)
            if (m.alpha[j] < 0 || m.beta[j] < 0)
                throw std::invalid_argument("negative exponent in term " + describe_term(m));
        std::int64_t weighted = 0;
        for (std::size_t j = 0; j < dim; ++j)
            weighted += static_cast<std::int64_t>(m.alpha[j] - m.beta[j]) * q_[j];
        if (weighted != 0)
            throw std::invalid_argument("term violates S^1-invariance (weighted degree " +
                                        std::to_string(weighted) + "): " + describe_term(m));
    }
    // Realness: the term set must be closed under (alpha, beta) swap with
    // the same real time coefficient.
    for (const auto& m : terms_) {
        if (m.alpha == m.beta) continue;
        auto want = canonical_time(m.time);
        bool found = false;
        for (const auto& other : terms_) {
            if (other.alpha == m.beta && other.beta == m.alpha &&
                canonical_time(other.time) == want) {
                found = true;
                break;
            }
        }
        if (!found)
            throw std::invalid_argument("term set is not conjugation-closed at " +
                                        describe_term(m));
    }
}

LiftedHamiltonian LiftedHamiltonian::quadratic(const std::vector<double>& a,
                                               const WeightVector& q) {
    if (a.size() != q.size())
        throw std::invalid_argument("quadratic Hamiltonian: coefficient count mismatch");
    std::vector<InvariantMonomial> terms;
    for (std::size_t j = 0; j < a.size(); ++j) {
        InvariantMonomial m;
        m.alpha.assign(a.size(), 0);
        m.beta.assign(a.size(), 0);
        m.alpha[j] = 1;
        m.beta[j] = 1;
        m.time = {TimeTerm{TimeTerm::Kind::Cos, 0, a[j]}};
        terms.push_back(std::move(m));
    }
    return LiftedHamiltonian(std::move(terms), q);
}

bool LiftedHamiltonian::autonomous() const {
    return std::none_of(terms_.begin(), terms_.end(),
                        [](const InvariantMonomial& m) { return m.time_dependent(); });
}

int LiftedHamiltonian::max_degree() const {
    int d = 0;
    for (const auto& m : terms_) d = std::max(d, m.degree());
    return d;
}

bool LiftedHamiltonian::is_quadratic_diagonal() const {
    for (const auto& m : terms_) {
        if (m.alpha != m.beta || m.degree() != 2 || m.time_dependent()) return false;
        int nz = 0;
        for (int a : m.alpha) nz += (a != 0);
        if (nz != 1) return false;
    }
    return true;
}

double LiftedHamiltonian::poly_value(const CVec& w, double t) const {
    Complex acc(0.0, 0.0);
    for (const auto& m : terms_) {
        Complex prod(m.coeff_at(t), 0.0);
        for (std::size_t l = 0; l < w.size(); ++l) {
            if (m.alpha[l]) prod *= int_pow(w[l], m.alpha[l]);
            if (m.beta[l]) prod *= int_pow(std::conj(w[l]), m.beta[l]);
        }
        acc += prod;
    }
    return acc.real();  // imaginary part cancels by conjugation closure
}

void LiftedHamiltonian::poly_wirtinger(const CVec& w, double t, double& value, CVec& g) const {
    std::size_t dim = w.size();
    Complex val(0.0, 0.0);
    CVec A(dim, Complex(0.0, 0.0));  // dP/dw
    CVec B(dim, Complex(0.0, 0.0));  // dP/dconj(w)
    for (const auto& m : terms_) {
        double c = m.coeff_at(t);
        if (c == 0.0) continue;
        CVec pa(dim), pb(dim);
        for (std::size_t l = 0; l < dim; ++l) {
            pa[l] = int_pow(w[l], m.alpha[l]);
            pb[l] = int_pow(std::conj(w[l]), m.beta[l]);
        }
        Complex full(c, 0.0);
        for (std::size_t l = 0; l < dim; ++l) full *= pa[l] * pb[l];
        val += full;
        for (std::size_t l = 0; l < dim; ++l) {
            if (m.alpha[l]) {
                Complex d(c * m.alpha[l], 0.0);
                for (std::size_t i = 0; i < dim; ++i) {
                    d *= (i == l) ? int_pow(w[i], m.alpha[i] - 1) : pa[i];
                    d *= pb[i];
                }
                A[l] += d;
            }
            if (m.beta[l]) {
                Complex d(c * m.beta[l], 0.0);
                for (std::size_t i = 0; i < dim; ++i) {
                    d *= pa[i];
                    d *= (i == l) ? int_pow(std::conj(w[i]), m.beta[i] - 1) : pb[i];
                }
                B[l] += d;
            }
        }
    }
    value = val.real();
    g.resize(dim);
    // G = dF/dconj(w) for F = Re P; the real gradient of F is 2G.
    for (std::size_t l = 0; l < dim; ++l) g[l] = 0.5 * (B[l] + std::conj(A[l]));
}

namespace {

// C^2 radial cutoff: 1 for K <= 1, 0 for K >= 2, quintic smoothstep between.
double cutoff_chi(double kq, double& dchi) {
    if (kq <= 1.0) {
        dchi = 0.0;
        return 1.0;
    }
    if (kq >= 2.0) {
        dchi = 0.0;
        return 0.0;
    }
    double x = kq - 1.0;
    double x2 = x * x;
    dchi = -(30.0 * x2 * x2 - 60.0 * x2 * x + 30.0 * x2);
    return 1.0 - (6.0 * x2 * x2 * x - 15.0 * x2 * x2 + 10.0 * x2 * x);
}

}  // namespace

double LiftedHamiltonian::evaluate(const CVec& z, double t) const {
    if (z.size() != q_.size())
        throw std::invalid_argument("Hamiltonian evaluate: dimension mismatch");
    double rho = 0.0;
    for (std::size_t j = 0; j < z.size(); ++j)
        rho += static_cast<double>(q_[j]) * std::norm(z[j]);
    if (rho <= 0.0) return 0.0;
    double r = std::sqrt(rho);
    CVec w(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) w[j] = z[j] / r;
    double h = rho * poly_value(w, t);
    if (radial_cutoff_) {
        double dchi;
        h *= cutoff_chi(0.5 * rho, dchi);
    }
    return h;
}

CVec LiftedHamiltonian::gradient(const CVec& z, double t) const {
    if (z.size() != q_.size())
        throw std::invalid_argument("Hamiltonian gradient: dimension mismatch");
    std::size_t dim = z.size();
    double rho = 0.0;
    for (std::size_t j = 0; j < dim; ++j)
        rho += static_cast<double>(q_[j]) * std::norm(z[j]);
    if (rho <= 0.0) return CVec(dim, Complex(0.0, 0.0));
    double r = std::sqrt(rho);
    CVec w(dim);
    for (std::size_t j = 0; j < dim; ++j) w[j] = z[j] / r;

    double f;
    CVec g;
    poly_wirtinger(w, t, f, g);
    double euler = 0.0;  // <real grad of F at w, w> = 2 Re sum G_l conj(w_l)
    for (std::size_t l = 0; l < dim; ++l) euler += 2.0 * (g[l] * std::conj(w[l])).real();

    CVec out(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        double qj = static_cast<double>(q_[j]);
        out[j] = 2.0 * f * qj * z[j] + 2.0 * r * g[j] - qj * z[j] * euler;
    }
    if (radial_cutoff_) {
        double dchi;
        double chi = cutoff_chi(0.5 * rho, dchi);
        double h = rho * f;
        for (std::size_t j = 0; j < dim; ++j) {
            double qj = static_cast<double>(q_[j]);
            // d(chi(K))/dz adds h * chi'(K) * grad K; grad K = (q_j z_j).
            out[j] = chi * out[j] + h * dchi * 0.5 * qj * z[j] * 2.0;
        }
    }
    return out;
}

double LiftedHamiltonian::bound() const {
    if (cached_bound_ >= 0.0) return cached_bound_;
    if (terms_.empty()) return cached_bound_ = 0.0;

    std::size_t dim = q_.size();
    std::vector<double> tgrid;
    if (autonomous())
        tgrid = {0.0};
    else
        for (int i = 0; i < 128; ++i) tgrid.push_back(i / 128.0);

    std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto random_sphere_point = [&]() {
        CVec z(dim);
        for (auto& c : z) c = Complex(gauss(rng), gauss(rng));
        return normalize_to_sphere(z, q_).point;
    };

    double hmax = -std::numeric_limits<double>::infinity();
    double hmin = std::numeric_limits<double>::infinity();
    CVec argmax, argmin;
    double tmax = 0.0, tmin = 0.0;

    auto consider = [&](const CVec& z, double t) {
        double v = poly_value(z, t);
        if (v > hmax) { hmax = v; argmax = z; tmax = t; }
        if (v < hmin) { hmin = v; argmin = z; tmin = t; }
    };

    for (std::size_t j = 0; j < dim; ++j) {
        CVec z(dim, Complex(0.0, 0.0));
        z[j] = Complex(1.0 / std::sqrt(static_cast<double>(q_[j])), 0.0);
        for (double t : tgrid) consider(z, t);
    }
    std::size_t samples = 256 * dim;
    for (std::size_t i = 0; i < samples; ++i) {
        CVec z = random_sphere_point();
        for (double t : tgrid) consider(z, t);
    }

    // Local refinement by shrinking random perturbations around both extrema.
    auto refine = [&](CVec z, double t, bool maximize) {
        double best = poly_value(z, t);
        double sigma = 0.3, tsigma = autonomous() ? 0.0 : 0.05;
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        for (int it = 0; it < 400; ++it) {
            CVec cand(dim);
            for (std::size_t j = 0; j < dim; ++j)
                cand[j] = z[j] + sigma * Complex(gauss(rng), gauss(rng));
            double kc = moment_map(cand, q_);
            if (kc <= 0.0) continue;
            cand = normalize_to_sphere(cand, q_).point;
            double tc = t + tsigma * uni(rng);
            double v = poly_value(cand, tc);
            if (maximize ? v > best : v < best) {
                best = v;
                z = cand;
                t = tc;
            }
            sigma *= 0.985;
            tsigma *= 0.985;
        }
        return best;
    };
    hmax = std::max(hmax, refine(argmax, tmax, true));
    hmin = std::min(hmin, refine(argmin, tmin, false));

    double m = 2.0 * (hmax - std::min(0.0, hmin));
    if (m < 1e-14) m = 0.0;
    return cached_bound_ = 1.05 * m;
}

LiftedHamiltonian LiftedHamiltonian::from_json(const nlohmann::json& doc) {
    if (!doc.contains("weights"))
        throw std::invalid_argument("Hamiltonian spec: missing 'weights'");
    WeightVector q(doc.at("weights").get<std::vector<std::int64_t>>());
    std::vector<InvariantMonomial> terms;
    for (const auto& jt : doc.value("terms", nlohmann::json::array())) {
        InvariantMonomial m;
        m.alpha = jt.at("alpha").get<std::vector<int>>();
        m.beta = jt.at("beta").get<std::vector<int>>();
        for (const auto& tt : jt.value("time", nlohmann::json::array())) {
            TimeTerm term;
            if (tt.contains("cos")) {
                term.kind = TimeTerm::Kind::Cos;
                term.mode = tt.at("cos").get<int>();
            } else if (tt.contains("sin")) {
                term.kind = TimeTerm::Kind::Sin;
                term.mode = tt.at("sin").get<int>();
            } else {
                throw std::invalid_argument("time term needs 'cos' or 'sin'");
            }
            term.amp = tt.at("amp").get<double>();
            m.time.push_back(term);
        }
        terms.push_back(std::move(m));
    }
    return LiftedHamiltonian(std::move(terms), std::move(q));
}

LiftedHamiltonian parse_hamiltonian_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open Hamiltonian spec file: " + path);
    nlohmann::json doc;
    in >> doc;
    return LiftedHamiltonian::from_json(doc);
}

}  // namespace wps
