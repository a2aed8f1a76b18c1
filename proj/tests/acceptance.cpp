// Acceptance suite: one check per shipped criterion, one pass/fail line each.
// Exits nonzero if any criterion fails.

#include "strobo/alpha.hpp"
#include "strobo/cyclicity.hpp"
#include "strobo/generator.hpp"
#include "strobo/io.hpp"
#include "strobo/matrix_ops.hpp"
#include "strobo/sampling.hpp"
#include "strobo/tomography.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace strobo;

namespace {

struct Criterion {
    int id;
    std::string name;
    bool passed;
    std::string detail;
};

std::vector<Criterion> results;

void record(int id, const std::string& name, bool passed, const std::string& detail = "") {
    results.push_back({id, name, passed, detail});
}

std::string fmt(double v) { return format_double(v); }

// ---------------------------------------------------------------------------
// 1. closed form vs brute force on random non-resonant spectra

void criterion_1() {
    Rng rng(20260811);
    int agree = 0;
    std::string first_mismatch;
    const auto start = std::chrono::steady_clock::now();

    for (int sample = 0; sample < 200; ++sample) {
        SpectrumDraw draw;
        for (;;) {
            draw = random_spectrum(rng, 1, 6, 3, 8, 0.0, 2.0, 0.05);
            if (!resonance_report(draw.eigenvalues, draw.multiplicities, 1e-8).resonant)
                break;
        }
        const HamiltonianSpec H =
            HamiltonianSpec::from_spectrum(draw.eigenvalues, draw.multiplicities);
        const CyclicityReport report = analyze_cyclicity(H);
        if (report.eta_closed == report.eta_bruteforce) {
            ++agree;
        } else if (first_mismatch.empty()) {
            std::ostringstream os;
            os << "first mismatch: lambda=(";
            for (std::size_t i = 0; i < draw.eigenvalues.size(); ++i)
                os << (i ? "," : "") << draw.eigenvalues[i];
            os << ") n=(";
            for (std::size_t i = 0; i < draw.multiplicities.size(); ++i)
                os << (i ? "," : "") << draw.multiplicities[i];
            os << ") closed=" << report.eta_closed
               << " brute=" << report.eta_bruteforce;
            first_mismatch = os.str();
        }
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::ostringstream detail;
    detail << agree << "/200 agree in " << fmt(elapsed) << " s";
    if (!first_mismatch.empty()) detail << "; " << first_mismatch;
    record(1, "Theorem 1 agreement on random non-resonant spectra",
           agree == 200 && elapsed < 60.0, detail.str());
}

// ---------------------------------------------------------------------------
// 2. worked index values

void criterion_2() {
    bool ok = true;
    std::string detail;

    const CyclicityReport a =
        analyze_cyclicity(HamiltonianSpec::from_spectrum({0, 1, 2}, {1, 1, 1}));
    ok = ok && a.kappa == 3 && a.gammas == std::vector<int>{4} && a.eta_closed == 4 &&
         a.eta_bruteforce == 4;
    if (!ok) detail = "three equally spaced levels";

    const CyclicityReport b =
        analyze_cyclicity(HamiltonianSpec::from_spectrum({0, 1}, {1, 1}));
    if (ok && !(b.eta_closed == 2 && b.eta_bruteforce == 2)) {
        ok = false;
        detail = "two-level system";
    }

    const CyclicityReport c = analyze_cyclicity(HamiltonianSpec::from_spectrum({2.5}, {3}));
    if (ok && !(c.eta_closed == 9 && c.eta_bruteforce == 9)) {
        ok = false;
        detail = "proportional-to-identity Hamiltonian";
    }
    record(2, "worked index values", ok, detail);
}

// ---------------------------------------------------------------------------
// 3. resonance flag and warning

void criterion_3() {
    const CyclicityReport report =
        analyze_cyclicity(HamiltonianSpec::from_spectrum({0, 1, 2, 4}, {3, 1, 3, 3}));
    bool ok = report.eta_bruteforce == 36 && report.eta_closed == 30 && report.resonant;

    // the emitted analyze report must carry the warning
    std::string detail;
    if (ok) {
        const std::string dir = "acceptance_work";
        (void)!std::system(("mkdir -p " + dir).c_str());
        const std::string spec_path = dir + "/resonant.json";
        {
            std::ofstream out(spec_path);
            out << R"({"hamiltonian": {"eigenvalues": [0, 1, 2, 4],)"
                << R"( "multiplicities": [3, 1, 3, 3]}})";
        }
        const std::string report_path = dir + "/resonant_report.json";
        const int code = WEXITSTATUS(
            std::system((std::string(STROBO_CLI_PATH) + " analyze --input " + spec_path +
                         " --output " + report_path + " 2>/dev/null")
                            .c_str()));
        if (code != 0) {
            ok = false;
            detail = "analyze exited " + std::to_string(code);
        } else {
            const json doc = load_json(report_path);
            if (doc["warnings"].empty() || doc["cyclicity"]["resonant"] != true) {
                ok = false;
                detail = "report lacks the resonance warning";
            }
        }
    } else {
        detail = "closed=" + std::to_string(report.eta_closed) +
                 " brute=" + std::to_string(report.eta_bruteforce);
    }
    record(3, "resonance flag on the merged-class spectrum", ok, detail);
}

// ---------------------------------------------------------------------------
// 4. kernel law

void criterion_4() {
    Rng rng(44);
    bool ok = true;
    std::string detail;
    for (int sample = 0; sample < 100 && ok; ++sample) {
        const SpectrumDraw draw = random_spectrum(rng, 1, 5, 3, 8);
        const HamiltonianSpec H =
            HamiltonianSpec::from_spectrum(draw.eigenvalues, draw.multiplicities);
        const Superoperator L = build_generator(H);

        Eigen::JacobiSVD<Matrix> svd(L.matrix);
        const auto& sigma = svd.singularValues();
        int kernel_dim = 0;
        for (Eigen::Index i = 0; i < sigma.size(); ++i)
            if (sigma(0) <= 1e-14 || sigma(i) <= 1e-9 * sigma(0)) ++kernel_dim;

        if (kernel_dim != kappa(draw.multiplicities)) {
            ok = false;
            detail = "sample " + std::to_string(sample) + ": kernel " +
                     std::to_string(kernel_dim) + " vs kappa " +
                     std::to_string(kappa(draw.multiplicities));
        }
    }
    record(4, "kernel dimension equals the sum of squared multiplicities", ok, detail);
}

// ---------------------------------------------------------------------------
// 5. flow representation, both alpha methods

void criterion_5() {
    Rng rng(55);
    bool ok = true;
    std::string detail;
    double worst_resid = 0.0, worst_diff = 0.0;

    for (int sample = 0; sample < 50 && ok; ++sample) {
        const HamiltonianSpec H = random_separated_hamiltonian(rng, 1, 4, 3, 5);
        const Superoperator L = build_generator(H);
        const AlphaSystem sys = AlphaSystem::from_hamiltonian(H);
        const double t = rng.uniform(0.0, 5.0);

        const Matrix target = expm(t * L.matrix);
        const RealVector ai = alpha_interp(sys, t);
        const RealVector ao = alpha_ode(sys, {t}).row(0);

        for (const RealVector* alpha : {&ai, &ao}) {
            Matrix sum = Matrix::Zero(L.matrix.rows(), L.matrix.cols());
            Matrix power = Matrix::Identity(L.matrix.rows(), L.matrix.cols());
            for (int k = 0; k < sys.m; ++k) {
                sum += (*alpha)(k)*power;
                power = power * L.matrix;
            }
            worst_resid = std::max(worst_resid, (sum - target).norm());
        }
        worst_diff = std::max(worst_diff, (ai - ao).cwiseAbs().maxCoeff());
        if (worst_resid > 1e-9 || worst_diff > 1e-10) {
            ok = false;
            detail = "sample " + std::to_string(sample) + " m=" + std::to_string(sys.m);
        }
    }
    record(5, "flow representation within 1e-9, methods agree within 1e-10", ok,
           "worst residual " + fmt(worst_resid) + ", worst method gap " + fmt(worst_diff) +
               (detail.empty() ? "" : "; " + detail));
}

// ---------------------------------------------------------------------------
// 6. lowest Taylor order of the grid determinant

void criterion_6() {
    Rng rng(66);
    bool ok = true;
    std::string detail;

    const auto vandermonde = [](const std::vector<double>& c) {
        double p = 1.0;
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = 0; j < i; ++j) p *= c[i] - c[j];
        return p;
    };
    const auto random_c = [&rng](int m) {
        std::vector<double> c;
        double value = rng.uniform(0.1, 1.0);
        for (int j = 0; j < m; ++j) {
            c.push_back(value);
            value += rng.uniform(0.4, 1.6);
        }
        return c;
    };

    for (int m = 2; m <= 4 && ok; ++m) {
        // random simple roots for a synthetic system of degree m
        SpectrumTable table;
        double root = -rng.uniform(1.0, 2.0);
        for (int i = 0; i < m; ++i) {
            table.entries.push_back({root, 1});
            root += rng.uniform(0.3, 0.7);
        }
        const AlphaSystem sys =
            AlphaSystem::from_minimal_polynomial(minimal_polynomial(table));

        const std::vector<double> c1 = random_c(m);
        const std::vector<double> c2 = random_c(m);
        const TaylorLowestOrder low1 = taylor_lowest_order(sys, c1);
        const TaylorLowestOrder low2 = taylor_lowest_order(sys, c2);

        if (low1.order != m * (m - 1) / 2 || low2.order != m * (m - 1) / 2) {
            ok = false;
            detail = "order mismatch at m=" + std::to_string(m);
            break;
        }
        if (m == 2) {
            if (std::abs(low1.coefficient - (c1[1] - c1[0])) > 1e-10 ||
                std::abs(low2.coefficient - (c2[1] - c2[0])) > 1e-10) {
                ok = false;
                detail = "m=2 coefficient differs from c2-c1";
            }
        } else {
            const double k1 = low1.coefficient / vandermonde(c1);
            const double k2 = low2.coefficient / vandermonde(c2);
            if (low1.coefficient == 0.0 ||
                std::abs(k1 - k2) > 1e-8 * std::max(std::abs(k1), std::abs(k2))) {
                ok = false;
                detail = "m=" + std::to_string(m) + " proportionality drift";
            }
        }
    }
    record(6, "lowest Taylor order is m(m-1)/2 with Vandermonde-proportional coefficient",
           ok, detail);
}

// ---------------------------------------------------------------------------
// 7. isolated zeros and the ln 2 maximizer

void criterion_7() {
    SpectrumTable table;
    table.entries = {{-1.0, 1}, {0.0, 1}};  // μ(z) = z² + z
    const AlphaSystem sys = AlphaSystem::from_minimal_polynomial(minimal_polynomial(table));
    const TimeScaleSelection sel = select_time_scale(sys, {1.0, 2.0}, 10.0, 4096);

    bool ok = sel.zero_locations.size() == 1 && sel.zero_locations.front() == 0.0;
    // the determinant e^{-t} - e^{-2t} stays positive over the whole interval
    for (int i = 1; i <= 2000 && ok; ++i) {
        const double t = 10.0 * i / 2000.0;
        if (grid_determinant(sys, {{1.0, 2.0}, t}) <= 0.0) ok = false;
    }
    ok = ok && std::abs(sel.t_star - std::log(2.0)) <= 1e-6 &&
         std::abs(sel.det_value - 0.25) <= 1e-9;
    record(7, "single determinant zero at t = 0 and maximizer ln 2", ok,
           "t_star=" + fmt(sel.t_star) + " det=" + fmt(sel.det_value) + " zeros=" +
               std::to_string(sel.zero_locations.size()));
}

// ---------------------------------------------------------------------------
// 8. three-engine agreement

void criterion_8() {
    Rng rng(88);
    bool ok = true;
    double worst = 0.0;
    for (int sample = 0; sample < 50 && ok; ++sample) {
        const int d = rng.uniform_int(2, 6);
        const HamiltonianSpec H =
            HamiltonianSpec::from_dense(random_hermitian_scaled(rng, d, 1.5));
        const Superoperator L = build_generator(H);
        const QuditState rho0 = random_state(d, rng.raw());
        const double t = rng.uniform(0.01, 5.0);

        const QuditState a = evolve_exact(H, rho0, t);
        const QuditState b = evolve_expm(L, rho0, t);
        const QuditState c = evolve_quadrature(H, rho0, t, 64);
        worst = std::max({worst, (a.rho - b.rho).norm(), (a.rho - c.rho).norm(),
                          (b.rho - c.rho).norm()});
        if (worst > 1e-9) ok = false;
    }

    // worked value: coherence of the plus state after unit time
    Matrix plus(2, 2);
    plus << 0.5, 0.5, 0.5, 0.5;
    const HamiltonianSpec H2 = HamiltonianSpec::from_spectrum({0, 1}, {1, 1});
    const double coherence = evolve_exact(H2, {plus}, 1.0).rho(0, 1).real();
    if (std::abs(coherence - 0.30326532985631671) > 1e-9) ok = false;

    record(8, "three evolution engines agree pairwise within 1e-9", ok,
           "worst pairwise distance " + fmt(worst) + ", coherence " + fmt(coherence));
}

// ---------------------------------------------------------------------------
// 9. reconstruction round trip and minimality

void criterion_9() {
    Rng rng(99);
    bool ok = true;
    std::string detail;
    double worst_error = 0.0;

    for (int scenario = 0; scenario < 100 && ok; ++scenario) {
        const HamiltonianSpec H = random_separated_hamiltonian(rng, 1, 3, 2, 5, 0.02, 2);
        const Superoperator L = build_generator(H);
        const int eta = index_bruteforce(L);
        const ObservableSet set = design_observables(L, eta, rng.raw());
        const AlphaSystem sys = AlphaSystem::from_hamiltonian(H);
        const std::vector<double> c = default_c_list(sys.m);
        const TimeScaleSelection sel = select_time_scale(sys, c, 6.0, 1024);
        const TimeGrid grid{c, sel.t_star};

        const QuditState rho0 = random_state(H.dim(), rng.raw());
        const DataMatrix data = simulate_data(H, rho0, set, grid, 0.0, 0);
        const ReconstructionResult rec = reconstruct(set, grid, data, L, sys);
        const double error = (rec.rho0_estimate.rho - rho0.rho).norm();
        worst_error = std::max(worst_error, error);
        if (error > 1e-8) {
            ok = false;
            detail = "scenario " + std::to_string(scenario) + " error " + fmt(error);
        }
    }

    int deficient = 0;
    const int trials = 50;
    for (int trial = 0; trial < trials; ++trial) {
        const HamiltonianSpec H = random_separated_hamiltonian(rng, 1, 3, 2, 5, 0.02, 2);
        const Superoperator L = build_generator(H);
        const int eta = index_bruteforce(L);
        const ObservableSet set = design_observables(L, eta, rng.raw());
        const AlphaSystem sys = AlphaSystem::from_hamiltonian(H);
        const std::vector<double> c = default_c_list(sys.m);
        const TimeScaleSelection sel = select_time_scale(sys, c, 6.0, 512);
        const TimeGrid grid{c, sel.t_star};

        ObservableSet reduced = set;
        reduced.observables.erase(reduced.observables.begin() +
                                  rng.uniform_int(0, set.size() - 1));
        const QuditState rho0 = random_state(H.dim(), rng.raw());
        DataMatrix data = simulate_data(H, rho0, reduced, grid, 0.0, 0);
        try {
            reconstruct(reduced, grid, data, L, sys);
        } catch (const RankDeficiencyError&) {
            ++deficient;
        }
    }
    if (deficient != trials) {
        ok = false;
        detail += " rank deficiency reported in " + std::to_string(deficient) + "/" +
                  std::to_string(trials);
    }
    record(9, "exact-data round trip within 1e-8; eta-1 sets rank deficient", ok,
           "worst error " + fmt(worst_error) + ", deficiency " +
               std::to_string(deficient) + "/" + std::to_string(trials) +
               (detail.empty() ? "" : "; " + detail));
}

// ---------------------------------------------------------------------------
// 10. CLI pipeline on the shipped sample

int run_cli(const std::string& args) {
    const std::string cmd = std::string(STROBO_CLI_PATH) + " " + args + " 2>/dev/null";
    return WEXITSTATUS(std::system(cmd.c_str()));
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void criterion_10() {
    const std::string dir = "acceptance_work";
    (void)!std::system(("mkdir -p " + dir + "/run1 " + dir + "/run2").c_str());
    const std::string sample = SAMPLE_PROBLEM_PATH;

    bool ok = true;
    std::string detail;
    double round_trip = -1.0;

    for (const std::string run : {"run1", "run2"}) {
        const std::string base = dir + "/" + run;
        if (run_cli("analyze --input " + sample + " --output " + base + "/analysis.json") !=
                0 ||
            run_cli("design --input " + sample + " --seed 42 --output " + base +
                    "/design.json") != 0 ||
            run_cli("simulate --input " + base + "/design.json --output " + base +
                    "/data.csv") != 0 ||
            run_cli("reconstruct --input " + base + "/design.json --data " + base +
                    "/data.csv --output " + base + "/reconstruction.json") != 0) {
            ok = false;
            detail = "a pipeline stage exited nonzero in " + run;
            break;
        }
    }
    if (ok) {
        const json rec = load_json(dir + "/run1/reconstruction.json");
        round_trip = rec.at("round_trip_error").get<double>();
        if (round_trip > 1e-8) {
            ok = false;
            detail = "round-trip error " + fmt(round_trip);
        }
        for (const std::string name :
             {"analysis.json", "design.json", "data.csv", "reconstruction.json"}) {
            if (slurp(dir + "/run1/" + name) != slurp(dir + "/run2/" + name)) {
                ok = false;
                detail = name + " is not byte-stable across reruns";
            }
        }
    }
    record(10, "CLI pipeline on the shipped sample, byte-stable outputs", ok,
           round_trip >= 0 ? "round-trip error " + fmt(round_trip) : detail);
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();

    int failures = 0;
    for (const Criterion& c : results) {
        if (!c.passed) ++failures;
        std::cout << (c.passed ? "[PASS]" : "[FAIL]") << " criterion " << c.id << ": "
                  << c.name;
        if (!c.detail.empty()) std::cout << " (" << c.detail << ")";
        std::cout << "\n";
    }
    std::cout << (10 - failures) << "/10 acceptance criteria passed\n";
    return failures == 0 ? 0 : 1;
}
