// wps: weighted projective space toolkit.
//
// Subcommands: cohomology, spectrum, certify, fixed-points, variational,
// intersections. Reports are machine-first JSON by default (`--output text`
// for humans, `--output csv` for the spectrum table); identical configuration
// and seed produce byte-identical reports.

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "wps/cohomology.hpp"
#include "wps/core.hpp"
#include "wps/flow.hpp"
#include "wps/hamiltonians.hpp"
#include "wps/spectrum.hpp"
#include "wps/variational.hpp"

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kVersion = "1.0.0";
constexpr int kExitOk = 0;
constexpr int kExitArgument = 2;
constexpr int kExitNoConvergence = 3;

json tolerance_block() {
    json t;
    t["tol_zero"] = wps::kTolZero;
    t["tol_sphere"] = wps::kTolSphere;
    t["tol_orbit"] = wps::kTolOrbit;
    t["tol_conserve"] = wps::kTolConserve;
    t["tol_fix"] = wps::kTolFix;
    t["tol_newton"] = 1e-9;
    return t;
}

json base_report(const std::string& command, const wps::WeightVector& q, std::uint64_t seed) {
    json r;
    r["tool"] = "wps";
    r["version"] = kVersion;
    r["command"] = command;
    r["weights"] = q.entries();
    r["seed"] = seed;
    r["tolerances"] = tolerance_block();
    return r;
}

json point_to_json(const wps::CVec& z) {
    json a = json::array();
    for (const auto& c : z) a.push_back({c.real(), c.imag()});
    return a;
}

json term_checks(const wps::LiftedHamiltonian& H) {
    json checks = json::array();
    const auto& q = H.weights();
    for (const auto& term : H.terms()) {
        std::int64_t wdeg = 0;
        for (std::size_t j = 0; j < q.size(); ++j)
            wdeg += static_cast<std::int64_t>(term.alpha[j] - term.beta[j]) * q[j];
        json c;
        c["alpha"] = term.alpha;
        c["beta"] = term.beta;
        c["weighted_degree"] = wdeg;
        c["invariant"] = (wdeg == 0);
        checks.push_back(c);
    }
    return checks;
}

void emit(const json& report) { std::cout << report.dump(2) << "\n"; }

// ---------------------------------------------------------------- cohomology

int run_cohomology(const wps::WeightVector& q, const std::string& output, std::uint64_t seed) {
    auto ring = wps::CohomologyRing::compute(q);
    auto [csb, ccl] = wps::complex_profile(q);
    auto rp = wps::real_profile(q);

    if (output == "text") {
        std::cout << "n = " << ring.n << ", weights =";
        for (auto w : q.entries()) std::cout << ' ' << w;
        std::cout << "\nl-table:";
        for (int k = 1; k <= ring.n; ++k)
            std::cout << " l_" << k << " = " << ring.l[static_cast<std::size_t>(k) - 1].str();
        std::cout << "\nstructure constants (k, j, c):\n";
        for (int k = 1; k <= ring.n; ++k)
            for (int j = k; k + j <= ring.n; ++j)
                std::cout << "  (" << k << ", " << j << ") -> "
                          << wps::structure_constant(q, k, j).value.str() << "\n";
        std::cout << "complex profile: sb = " << csb << ", cl = " << ccl << "\n";
        std::cout << "real profile: r = " << rp.r << ", manifold = " << (rp.is_manifold ? "yes" : "no")
                  << ", sb = " << rp.sb << ", cl = " << rp.cl;
        if (rp.suspension_base) std::cout << ", suspension base = " << *rp.suspension_base;
        std::cout << "\n";
        return kExitOk;
    }

    json report = base_report("cohomology", q, seed);
    json ltab = json::array();
    for (const auto& l : ring.l) ltab.push_back(l.str());
    report["l_table"] = ltab;
    json sc = json::array();
    for (int k = 1; k <= ring.n; ++k)
        for (int j = 1; j <= ring.n; ++j) {
            auto s = wps::structure_constant(q, k, j);
            json e;
            e["k"] = k;
            e["j"] = j;
            e["value"] = s.value.str();
            e["zero_product"] = s.zero_product;
            e["boundary_case"] = s.boundary_case;
            sc.push_back(e);
        }
    report["structure_constants"] = sc;
    report["complex_profile"] = {{"sb", csb}, {"cl", ccl}};
    json rj;
    rj["r"] = rp.r;
    rj["is_manifold"] = rp.is_manifold;
    rj["sb"] = rp.sb;
    rj["cl"] = rp.cl;
    if (rp.suspension_base)
        rj["suspension_base"] = *rp.suspension_base;
    else
        rj["suspension_base"] = nullptr;
    report["real_profile"] = rj;
    emit(report);
    return kExitOk;
}

// ------------------------------------------------------------------ spectrum

int run_spectrum(const wps::WeightVector& q, double lo, double hi, const std::string& output,
                 std::uint64_t seed) {
    auto lines = wps::eigenvalues_in(q, lo, hi);
    if (output == "csv") {
        std::cout << "k,j,q_j,mu\n";
        for (const auto& l : lines)
            std::cout << l.k << ',' << l.j << ',' << l.q_j << ',' << l.mu() << "\n";
        return kExitOk;
    }
    if (output == "text") {
        std::cout << "eigenvalues mu = 2 pi k / q_j in (" << lo << ", " << hi << "]:\n";
        for (const auto& l : lines)
            std::cout << "  mu = " << l.mu() << "  (k = " << l.k << ", j = " << l.j
                      << ", q_j = " << l.q_j << ")\n";
        std::cout << "count: " << lines.size() << "\n";
        return kExitOk;
    }
    json report = base_report("spectrum", q, seed);
    report["interval"] = {lo, hi};
    json arr = json::array();
    for (const auto& l : lines) {
        json e;
        e["k"] = l.k;
        e["j"] = l.j;
        e["q_j"] = l.q_j;
        e["mu"] = l.mu();
        arr.push_back(e);
    }
    report["lines"] = arr;
    report["count"] = lines.size();
    emit(report);
    return kExitOk;
}

// ------------------------------------------------------------------- certify

json certificate_to_json(const wps::CountingCertificate& cert) {
    json c;
    c["M"] = cert.M;
    c["t0"] = cert.t0;
    c["s"] = cert.s;
    c["interval_count"] = cert.interval_count;
    c["ns_lower_bound"] = {{"num", cert.ns_lower_bound.num},
                           {"den", cert.ns_lower_bound.den},
                           {"value", cert.ns_lower_bound.value()}};
    c["conclusion"] = cert.conclusion;
    c["standing_assumption_met"] = cert.standing_assumption_met;
    return c;
}

int run_certify(const wps::WeightVector& q, double M, std::optional<std::int64_t> s_override,
                const std::string& output, std::uint64_t seed) {
    auto cert = wps::counting_certificate(q, M, s_override);
    if (output == "text") {
        std::cout << "bound M = " << cert.M << ", t0 = " << cert.t0 << ", s = " << cert.s << "\n"
                  << "eigenvalues in (2(1+t0)pi, 2 s pi]: " << cert.interval_count << "\n"
                  << "N_s lower bound: " << cert.ns_lower_bound.num << "/"
                  << cert.ns_lower_bound.den << " > n = " << q.n() << "\n"
                  << "certified class count: " << cert.conclusion << "\n";
        return kExitOk;
    }
    json report = base_report("certify", q, seed);
    report["certificate"] = certificate_to_json(cert);
    emit(report);
    return kExitOk;
}

// -------------------------------------------------------------- fixed-points

bool lexicographic_less(const wps::CVec& a, const wps::CVec& b) {
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (a[j].real() != b[j].real()) return a[j].real() < b[j].real();
        if (a[j].imag() != b[j].imag()) return a[j].imag() < b[j].imag();
    }
    return false;
}

int run_fixed_points(const std::string& spec_path, int random_seeds, double tol_fix,
                     const std::string& output, std::uint64_t seed) {
    auto H = wps::parse_hamiltonian_file(spec_path);
    const auto& q = H.weights();
    const std::size_t dim = q.size();

    std::vector<wps::CVec> seeds;
    for (std::size_t j = 0; j < dim; ++j) {
        wps::CVec e(dim, {0.0, 0.0});
        e[j] = {1.0 / std::sqrt(static_cast<double>(q[j])), 0.0};
        seeds.push_back(e);
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int i = 0; i < random_seeds; ++i) {
        wps::CVec z(dim);
        for (auto& c : z) c = wps::Complex(g(rng), g(rng));
        seeds.push_back(wps::normalize_to_sphere(z, q).point);
    }

    wps::DetectOptions opts;
    opts.tol_fix = tol_fix;
    std::vector<wps::FixedPointRecord> records;
    for (const auto& p : seeds)
        if (auto hit = wps::detect_fixed_point(H, p, opts)) records.push_back(*hit);

    // Deterministic merge: sort by (lambda class, lexicographic representative),
    // then drop records on an already-seen orbit with the same class.
    std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
        if (std::abs(a.lambda_class - b.lambda_class) > 1e-12)
            return a.lambda_class < b.lambda_class;
        return lexicographic_less(a.rep, b.rep);
    });
    std::vector<wps::FixedPointRecord> unique;
    for (const auto& r : records) {
        bool dup = false;
        for (const auto& u : unique) {
            double dc = std::abs(r.lambda_class - u.lambda_class);
            dc = std::min(dc, 2.0 * std::numbers::pi - dc);
            if (dc < 1e-6 && wps::orbit_distance(r.rep, u.rep, q).d <= wps::kTolOrbit) {
                dup = true;
                break;
            }
        }
        if (!dup) unique.push_back(r);
    }

    auto cert = wps::counting_certificate(q, H.bound());

    if (output == "text") {
        std::cout << "fixed orbits found: " << unique.size()
                  << " (certified lower bound: " << cert.conclusion << ")\n";
        for (const auto& r : unique)
            std::cout << "  lambda class " << r.lambda_class << ", residual " << r.residual << "\n";
        return unique.empty() ? kExitNoConvergence : kExitOk;
    }

    json report = base_report("fixed-points", q, seed);
    report["spec"] = spec_path;
    report["term_checks"] = term_checks(H);
    report["hamiltonian_bound"] = H.bound();
    json recs = json::array();
    for (const auto& r : unique) {
        json e;
        e["rep"] = point_to_json(r.rep);
        e["lambda"] = r.lambda;
        e["lambda_class"] = r.lambda_class;
        e["residual"] = r.residual;
        recs.push_back(e);
    }
    report["records"] = recs;
    report["certificate"] = certificate_to_json(cert);
    emit(report);
    return unique.empty() ? kExitNoConvergence : kExitOk;
}

// --------------------------------------------------------------- variational

json solutions_to_json(const std::vector<wps::CriticalSolution>& sols) {
    json arr = json::array();
    for (const auto& s : sols) {
        json e;
        json coeffs = json::array();
        for (int k = -s.loop.order(); k <= s.loop.order(); ++k) {
            json row;
            row["k"] = k;
            row["c"] = json::array();
            for (std::size_t j = 0; j < s.loop.dim(); ++j) {
                auto c = s.loop.coeff(k, j);
                row["c"].push_back({c.real(), c.imag()});
            }
            coeffs.push_back(row);
        }
        e["coefficients"] = coeffs;
        e["lambda"] = s.lambda;
        e["lambda_class"] = s.lambda_class;
        e["class_modulus"] = s.class_modulus;
        e["value"] = s.value;
        e["residual"] = s.residual;
        arr.push_back(e);
    }
    return arr;
}

int run_variational(const std::string& spec_path, const std::string& mode_name, int m, int budget,
                    bool ladder, const std::string& output, std::uint64_t seed) {
    auto H = wps::parse_hamiltonian_file(spec_path);
    const auto& q = H.weights();
    wps::LoopMode mode = mode_name == "chord" ? wps::LoopMode::Chord : wps::LoopMode::Periodic;

    auto sols = wps::enumerate_solutions(H, mode, m, budget, seed);
    int classes = wps::distinct_class_count(sols);
    int bound = q.n() + 1;
    std::string summary = "distinct classes: " + std::to_string(classes) +
                          " (target bound: " + std::to_string(bound) + ")";

    json ladder_json = json::array();
    if (ladder && !sols.empty()) {
        // Track the lowest-class solution through doubled truncations.
        wps::FourierLoop tracked = sols.front().loop;
        double prev_lambda = sols.front().lambda;
        for (int level = 2 * m; level <= 8 * m; level *= 2) {
            auto refined = wps::solve_critical(H, tracked.lift(level));
            if (!refined) break;
            json row;
            row["m"] = level;
            row["lambda"] = refined->lambda;
            row["change"] = std::abs(refined->lambda - prev_lambda);
            ladder_json.push_back(row);
            prev_lambda = refined->lambda;
            tracked = refined->loop;
        }
    }

    if (output == "text") {
        for (const auto& s : sols)
            std::cout << "lambda = " << s.lambda << " (class " << s.lambda_class << " mod "
                      << s.class_modulus << "), residual " << s.residual << "\n";
        std::cout << summary << "\n";
        return sols.empty() ? kExitNoConvergence : kExitOk;
    }

    json report = base_report("variational", q, seed);
    report["spec"] = spec_path;
    report["mode"] = mode_name;
    report["m"] = m;
    report["budget"] = budget;
    report["term_checks"] = term_checks(H);
    report["solutions"] = solutions_to_json(sols);
    report["distinct_classes"] = classes;
    report["target_bound"] = bound;
    report["summary"] = summary;
    if (ladder) report["ladder"] = ladder_json;
    emit(report);
    return sols.empty() ? kExitNoConvergence : kExitOk;
}

// ------------------------------------------------------------- intersections

int run_intersections(const wps::WeightVector& q, const std::string& spec_path, int m, int budget,
                      const std::string& output, std::uint64_t seed) {
    if (!q.all_odd()) {
        std::cerr << "refusing: intersections requires every weight to be odd. The real locus "
                     "is a Lagrangian submanifold only when all q_j are odd; the even-weight "
                     "case is an open question and this tool does not guess.\n";
        return kExitArgument;
    }
    wps::LiftedHamiltonian H =
        spec_path.empty() ? wps::LiftedHamiltonian({}, q) : wps::parse_hamiltonian_file(spec_path);
    if (H.weights().entries() != q.entries())
        throw std::invalid_argument("--weights disagrees with the weights in the spec file");

    auto sols = wps::enumerate_solutions(H, wps::LoopMode::Chord, m, budget, seed);
    int classes = wps::distinct_class_count(sols);
    int bound = q.n() + 1;
    std::string summary = "distinct classes: " + std::to_string(classes) +
                          " (target bound: " + std::to_string(bound) + ")";

    if (output == "text") {
        for (const auto& s : sols)
            std::cout << "lambda = " << s.lambda << " (class " << s.lambda_class << " mod "
                      << s.class_modulus << "), residual " << s.residual << "\n";
        std::cout << summary << "\n";
        return sols.empty() ? kExitNoConvergence : kExitOk;
    }

    json report = base_report("intersections", q, seed);
    report["spec"] = spec_path.empty() ? json(nullptr) : json(spec_path);
    report["m"] = m;
    report["budget"] = budget;
    report["solutions"] = solutions_to_json(sols);
    report["distinct_classes"] = classes;
    report["target_bound"] = bound;
    report["summary"] = summary;
    emit(report);
    return sols.empty() ? kExitNoConvergence : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weighted projective space toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    std::string weights_csv;
    std::string output = "json";
    std::uint64_t seed = 1;
    std::string spec_path;

    auto add_common = [&](CLI::App* sub, bool needs_weights) {
        sub->add_option("--output", output, "report format: json, text, or csv")
            ->check(CLI::IsMember({"json", "text", "csv"}));
        sub->add_option("--seed", seed, "RNG seed recorded in the report");
        if (needs_weights) sub->add_option("--weights", weights_csv, "weights, e.g. 2,2,3")->required();
    };

    auto* cohomology = app.add_subcommand("cohomology", "l-table, structure constants, profiles");
    add_common(cohomology, true);
    cohomology->add_flag("--json", "emit JSON (the default)");

    auto* spectrum = app.add_subcommand("spectrum", "eigenvalue lines mu = 2 pi k / q_j");
    add_common(spectrum, true);
    std::string interval = "0,6.283185307179586";
    spectrum->add_option("--interval", interval, "half-open interval lo,hi");

    auto* certify = app.add_subcommand("certify", "multiplier class counting certificate");
    add_common(certify, true);
    double bound = 0.0;
    std::int64_t s_value = -1;
    certify->add_option("--bound", bound, "Hamiltonian bound M")->required();
    certify->add_option("--s", s_value, "override the interval end s (>= t0 + 2)");

    auto* fixed = app.add_subcommand("fixed-points", "fixed orbits of the time-one map");
    add_common(fixed, false);
    int n_seeds = 16;
    double tol_fix = wps::kTolFix;
    fixed->add_option("--spec", spec_path, "Hamiltonian spec file (JSON)")->required();
    fixed->add_option("--seeds", n_seeds, "number of random seeds beyond the coordinate points");
    fixed->add_option("--tol", tol_fix, "fixed-point residual tolerance");

    auto* variational = app.add_subcommand("variational", "constrained critical point search");
    add_common(variational, false);
    std::string mode = "periodic";
    int m = 16;
    int budget = 256;
    bool ladder = false;
    variational->add_option("--spec", spec_path, "Hamiltonian spec file (JSON)")->required();
    variational->add_option("--mode", mode, "periodic or chord")
        ->check(CLI::IsMember({"periodic", "chord"}));
    variational->add_option("--m", m, "Fourier truncation order");
    variational->add_option("--budget", budget, "solver seed budget");
    variational->add_flag("--ladder", ladder, "refine through doubled truncations");

    auto* intersections = app.add_subcommand("intersections", "chord classes (all-odd weights only)");
    add_common(intersections, true);
    intersections->add_option("--spec", spec_path, "Hamiltonian spec file (JSON), default H = 0");
    intersections->add_option("--m", m, "Fourier truncation order");
    intersections->add_option("--budget", budget, "solver seed budget");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitArgument;
    }

    try {
        if (cohomology->parsed())
            return run_cohomology(wps::WeightVector::parse(weights_csv), output, seed);
        if (spectrum->parsed()) {
            auto comma = interval.find(',');
            if (comma == std::string::npos)
                throw std::invalid_argument("--interval expects lo,hi");
            double lo = std::stod(interval.substr(0, comma));
            double hi = std::stod(interval.substr(comma + 1));
            return run_spectrum(wps::WeightVector::parse(weights_csv), lo, hi, output, seed);
        }
        if (certify->parsed()) {
            std::optional<std::int64_t> s_override;
            if (s_value >= 0) s_override = s_value;
            return run_certify(wps::WeightVector::parse(weights_csv), bound, s_override, output,
                               seed);
        }
        if (fixed->parsed()) return run_fixed_points(spec_path, n_seeds, tol_fix, output, seed);
        if (variational->parsed())
            return run_variational(spec_path, mode, m, budget, ladder, output, seed);
        if (intersections->parsed())
            return run_intersections(wps::WeightVector::parse(weights_csv), spec_path, m, budget,
                                     output, seed);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitArgument;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitArgument;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoConvergence;
    }
    return kExitArgument;
}
