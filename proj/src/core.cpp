#include "wps/core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace wps {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

WeightVector::WeightVector(std::vector<std::int64_t> entries) : q_(std::move(entries)) {
    if (q_.size() < 2)
        throw std::invalid_argument("weight vector needs at least two entries (n >= 1)");
    for (auto w : q_)
        if (w < 1) throw std::invalid_argument("weights must be positive integers");
}

WeightVector WeightVector::parse(const std::string& csv) {
    std::vector<std::int64_t> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        std::int64_t v;
        try {
            v = std::stoll(item, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("cannot parse weight '" + item + "'");
        }
        while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
        if (pos != item.size())
            throw std::invalid_argument("cannot parse weight '" + item + "'");
        out.push_back(v);
    }
    return WeightVector(std::move(out));
}

std::vector<std::int64_t> WeightVector::sorted_descending() const {
    auto s = q_;
    std::sort(s.begin(), s.end(), std::greater<>());
    return s;
}

std::int64_t WeightVector::max_weight() const { return *std::max_element(q_.begin(), q_.end()); }
std::int64_t WeightVector::min_weight() const { return *std::min_element(q_.begin(), q_.end()); }
std::int64_t WeightVector::sum() const { return std::accumulate(q_.begin(), q_.end(), std::int64_t{0}); }

std::int64_t WeightVector::gcd_all() const {
    std::int64_t g = 0;
    for (auto w : q_) g = std::gcd(g, w);
    return g;
}

std::int64_t WeightVector::lcm_all(std::int64_t cap) const {
    std::int64_t l = 1;
    for (auto w : q_) {
        l = std::lcm(l, w);
        if (l >= cap) return cap;
    }
    return l;
}

bool WeightVector::all_odd() const {
    return std::all_of(q_.begin(), q_.end(), [](std::int64_t w) { return w % 2 != 0; });
}

bool WeightVector::all_ones() const {
    return std::all_of(q_.begin(), q_.end(), [](std::int64_t w) { return w == 1; });
}

double moment_map(const CVec& z, const WeightVector& q) {
    if (z.size() != q.size())
        throw std::invalid_argument("moment_map: point and weight vector lengths differ");
    double acc = 0.0;
    for (std::size_t j = 0; j < z.size(); ++j) acc += static_cast<double>(q[j]) * std::norm(z[j]);
    return 0.5 * acc;
}

CVec circle_action(double s, const CVec& z, const WeightVector& q) {
    if (z.size() != q.size())
        throw std::invalid_argument("circle_action: point and weight vector lengths differ");
    CVec out(z.size());
    for (std::size_t j = 0; j < z.size(); ++j)
        out[j] = std::polar(1.0, static_cast<double>(q[j]) * s) * z[j];
    return out;
}

namespace {

Complex int_pow(Complex base, std::int64_t e) {
    Complex acc(1.0, 0.0);
    while (e > 0) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

}  // namespace

CVec weighted_scalar_action(Complex alpha, const CVec& z, const WeightVector& q) {
    if (z.size() != q.size())
        throw std::invalid_argument("weighted_scalar_action: lengths differ");
    if (alpha == Complex(0.0, 0.0))
        throw std::domain_error("weighted_scalar_action: alpha must be nonzero");
    CVec out(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) out[j] = int_pow(alpha, q[j]) * z[j];
    return out;
}

std::int64_t orbifold_group_order(const CVec& z, const WeightVector& q, double tol_zero) {
    if (z.size() != q.size())
        throw std::invalid_argument("orbifold_group_order: lengths differ");
    std::int64_t g = 0;
    for (std::size_t j = 0; j < z.size(); ++j)
        if (std::abs(z[j]) > tol_zero) g = std::gcd(g, q[j]);
    if (g == 0) throw std::domain_error("orbifold_group_order: zero vector has no orbit");
    return g;
}

SphereNormalization normalize_to_sphere(const CVec& z, const WeightVector& q) {
    double k = moment_map(z, q);
    if (k <= 0.0) throw std::domain_error("normalize_to_sphere: zero vector");
    double r = std::sqrt(2.0 * k);
    CVec zp(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) zp[j] = z[j] / r;
    return {r, std::move(zp)};
}

bool on_sphere(const CVec& z, const WeightVector& q, double tol) {
    return std::abs(2.0 * moment_map(z, q) - 1.0) <= tol;
}

OrbitDistance minimize_action_gap(const std::vector<Complex>& w, double offset,
                                  const WeightVector& q) {
    auto f = [&](double s) {
        double acc = offset;
        for (std::size_t j = 0; j < w.size(); ++j)
            acc -= 2.0 * (std::polar(1.0, static_cast<double>(q[j]) * s) * w[j]).real();
        return acc;
    };

    // Grid density: 32 samples per unit of lcm(q), capped; never below
    // 32 per unit of max q, which already resolves the polynomial degree.
    std::int64_t l = q.lcm_all(1 << 10);
    std::int64_t samples = std::max<std::int64_t>(32 * l, 32 * q.max_weight());
    samples = std::max<std::int64_t>(samples, 64);

    double best_s = 0.0, best_f = f(0.0);
    for (std::int64_t i = 1; i < samples; ++i) {
        double s = kTwoPi * static_cast<double>(i) / static_cast<double>(samples);
        double v = f(s);
        if (v < best_f) {
            best_f = v;
            best_s = s;
        }
    }

    // Golden-section refinement on the bracketing grid cell.
    double h = kTwoPi / static_cast<double>(samples);
    double a = best_s - h, b = best_s + h;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 80 && (b - a) > 1e-13; ++it) {
        if (fc < fd) {
            b = d; d = c; fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    double s_star = 0.5 * (a + b);
    double v = f(s_star);
    s_star = std::fmod(s_star, kTwoPi);
    if (s_star < 0.0) s_star += kTwoPi;
    return {std::sqrt(std::max(0.0, v)), s_star};
}

OrbitDistance orbit_distance(const CVec& a, const CVec& b, const WeightVector& q) {
    if (a.size() != b.size() || a.size() != q.size())
        throw std::invalid_argument("orbit_distance: lengths differ");
    double offset = 0.0;
    std::vector<Complex> w(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) {
        offset += std::norm(a[j]) + std::norm(b[j]);
        w[j] = a[j] * std::conj(b[j]);
    }
    return minimize_action_gap(w, offset, q);
}

CVec parse_point(const std::string& json_text) {
    auto doc = nlohmann::json::parse(json_text);
    if (!doc.is_array()) throw std::invalid_argument("point must be a JSON array of [re, im] pairs");
    CVec out;
    for (const auto& e : doc) {
        if (!e.is_array() || e.size() != 2)
            throw std::invalid_argument("point entries must be [re, im] pairs");
        out.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    return out;
}

}  // namespace wps
