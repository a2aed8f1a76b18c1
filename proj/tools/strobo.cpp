// Batch front door: analyze / design / simulate / reconstruct / verify over
// JSON problem documents and CSV data matrices.
//
// Exit codes: 0 success, 1 property or internal failure, 2 parse error,
// 3 dimensional inconsistency, 4 design retries exhausted, 5 singular time
// grid, 6 rank-deficient observable set.

#include "strobo/alpha.hpp"
#include "strobo/cyclicity.hpp"
#include "strobo/generator.hpp"
#include "strobo/io.hpp"
#include "strobo/matrix_ops.hpp"
#include "strobo/tomography.hpp"
#include "strobo/verify.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace strobo;

struct GlobalOptions {
    std::string input;
    std::string data;
    std::string output;
    double tolerance = kDefaultTol;
    std::uint64_t seed = 0;
    std::string alpha_method = "interp";
    std::string suite = "all";
    int samples = 4096;

    AlphaMethod method() const {
        return alpha_method == "ode" ? AlphaMethod::Ode : AlphaMethod::Interp;
    }
};

void emit(const GlobalOptions& opt, const json& doc) {
    if (opt.output.empty()) {
        std::cout << doc.dump(2) << "\n";
    } else {
        write_json(opt.output, doc);
    }
}

double effective_tolerance(const GlobalOptions& opt, const ProblemSpec& spec) {
    return spec.tolerance.value_or(opt.tolerance);
}

json cyclicity_to_json(const CyclicityReport& report) {
    json collisions = json::array();
    for (const auto& c : report.collisions)
        collisions.push_back({{"nu", c.nu}, {"pair_classes", c.pair_classes}});
    return json{{"kappa", report.kappa},
                {"gammas", report.gammas},
                {"eta_closed", report.eta_closed},
                {"eta_bruteforce", report.eta_bruteforce},
                {"resonant", report.resonant},
                {"collisions", std::move(collisions)}};
}

int cmd_analyze(const GlobalOptions& opt) {
    const ProblemSpec spec = load_problem(opt.input);
    const double tol = effective_tolerance(opt, spec);

    const SpectrumTable spectrum = generator_spectrum(spec.hamiltonian, kGroupingTol);
    const CyclicityReport report = analyze_cyclicity(spec.hamiltonian);
    const MinimalPolynomial mu = minimal_polynomial(spectrum);
    const AlphaSystem sys = AlphaSystem::from_minimal_polynomial(mu);

    json spectrum_json = json::array();
    for (const auto& entry : spectrum.entries)
        spectrum_json.push_back(
            {{"value", entry.value}, {"multiplicity", entry.multiplicity}});

    json doc{{"dim", spec.hamiltonian.dim()},
             {"tolerance", tol},
             {"spectrum", std::move(spectrum_json)},
             {"cyclicity", cyclicity_to_json(report)},
             {"minimal_polynomial",
              {{"degree", mu.degree},
               {"d_coeffs", std::vector<double>(mu.d_coeffs.data(),
                                                mu.d_coeffs.data() + mu.degree)},
               {"roots", mu.roots}}},
             {"vandermonde_condition", vandermonde_condition(sys)}};

    json warnings = json::array();
    if (report.resonant)
        warnings.push_back("resonant spectrum: eigenvalue classes of the generator merge; "
                           "the closed-form index is not reliable");
    if (report.eta_closed != report.eta_bruteforce)
        warnings.push_back("closed-form index (" + std::to_string(report.eta_closed) +
                           ") disagrees with the brute-force index (" +
                           std::to_string(report.eta_bruteforce) +
                           "); the brute-force value is authoritative");
    doc["warnings"] = std::move(warnings);
    if (!doc["warnings"].empty())
        std::cerr << "warning: " << doc["warnings"].dump() << "\n";

    emit(opt, doc);
    return 0;
}

int cmd_design(const GlobalOptions& opt) {
    ProblemSpec spec = load_problem(opt.input);

    const Superoperator L = build_generator(spec.hamiltonian);
    const int eta = index_bruteforce(L);
    const ObservableSet set = design_observables(L, eta, opt.seed);
    const AlphaSystem sys = AlphaSystem::from_hamiltonian(spec.hamiltonian);

    std::vector<double> c;
    double T = 1.0;
    if (spec.grid) {
        T = spec.grid->T;
        if (!spec.grid->c.empty()) {
            if (static_cast<int>(spec.grid->c.size()) != sys.m)
                throw DimensionError("design: grid c list must have one entry per "
                                     "minimal-polynomial degree (" +
                                     std::to_string(sys.m) + ")");
            c = spec.grid->c;
        }
    }
    if (c.empty()) c = default_c_list(sys.m);

    const TimeScaleSelection sel = select_time_scale(sys, c, T, opt.samples, opt.method());
    const Superoperator L_adj = adjoint_generator(L);
    const SpanResult span = krylov_span(L_adj, set);

    std::vector<Matrix> observables;
    for (const Observable& q : set.observables) observables.push_back(q.op);
    spec.observables = std::move(observables);
    spec.grid = GridSpec{c, T, sel.t_star};

    json doc = problem_to_json(spec);
    doc["design_report"] = {{"eta", eta},
                            {"alpha_degree", sys.m},
                            {"spanning_rank", span.rank},
                            {"t_star", sel.t_star},
                            {"det_value", sel.det_value},
                            {"zero_locations", sel.zero_locations},
                            {"seed", opt.seed},
                            {"alpha_method", opt.alpha_method}};
    emit(opt, doc);
    return 0;
}

TimeGrid grid_from_spec(const ProblemSpec& spec, int alpha_degree) {
    if (!spec.grid || spec.grid->c.empty())
        throw ParseError("problem: a grid with a \"c\" list is required");
    const GridSpec& g = *spec.grid;
    double t_scale;
    if (g.t_star) {
        t_scale = *g.t_star;
    } else if (g.c.back() > 0.0) {
        t_scale = g.T / g.c.back();
    } else {
        t_scale = 1.0;
    }
    (void)alpha_degree;
    return TimeGrid{g.c, t_scale};
}

ObservableSet set_from_spec(const ProblemSpec& spec, int alpha_degree) {
    if (!spec.observables || spec.observables->empty())
        throw ParseError("problem: an \"observables\" list is required");
    ObservableSet set;
    set.krylov_depth = alpha_degree;
    for (const Matrix& q : *spec.observables) set.observables.push_back({q});
    return set;
}

int cmd_simulate(const GlobalOptions& opt) {
    const ProblemSpec spec = load_problem(opt.input);
    if (!spec.rho0)
        throw DimensionError("simulate: the problem document must provide rho0");

    const AlphaSystem sys = AlphaSystem::from_hamiltonian(spec.hamiltonian);
    const ObservableSet set = set_from_spec(spec, sys.m);
    const TimeGrid grid = grid_from_spec(spec, sys.m);

    const double sigma = spec.noise ? spec.noise->sigma : 0.0;
    const std::uint64_t seed = spec.noise ? spec.noise->seed : opt.seed;
    const DataMatrix data =
        simulate_data(spec.hamiltonian, {*spec.rho0}, set, grid, sigma, seed);

    if (opt.output.empty()) {
        write_data_csv(std::cout, data);
    } else {
        write_data_csv(opt.output, data);
    }
    return 0;
}

int cmd_reconstruct(const GlobalOptions& opt) {
    const ProblemSpec spec = load_problem(opt.input);
    const CsvData csv = read_data_csv(opt.data);

    const AlphaSystem sys = AlphaSystem::from_hamiltonian(spec.hamiltonian);
    const ObservableSet set = set_from_spec(spec, sys.m);
    const TimeGrid grid = grid_from_spec(spec, sys.m);

    if (static_cast<int>(csv.instants.size()) != sys.m)
        throw SingularGridError("reconstruct: data provides " +
                                std::to_string(csv.instants.size()) +
                                " time columns but the minimal polynomial degree is " +
                                std::to_string(sys.m));
    const std::vector<double> instants = grid.instants();
    for (std::size_t j = 0; j < instants.size(); ++j)
        if (std::abs(instants[j] - csv.instants[j]) > 1e-9 * std::max(1.0, instants[j]))
            throw DimensionError("reconstruct: data instants do not match the grid");
    if (csv.values.rows() != set.size())
        throw DimensionError("reconstruct: data rows do not match the observable count");

    DataMatrix data{csv.values, grid, 0.0};
    const Superoperator L = build_generator(spec.hamiltonian);
    const ReconstructionResult rec =
        reconstruct(set, grid, data, L, sys, opt.method());

    const ValidationReport validation = validate_density(rec.rho0_estimate.rho);
    json doc{{"rho0_estimate", matrix_to_json(rec.rho0_estimate.rho)},
             {"residual", rec.residual},
             {"condition_number", rec.condition_number},
             {"spanning_rank", rec.spanning_rank},
             {"alpha_method", opt.alpha_method},
             {"validation",
              {{"hermiticity_defect", validation.hermiticity_defect},
               {"trace_defect", validation.trace_defect},
               {"min_eigenvalue", validation.min_eigenvalue}}}};
    if (spec.rho0)
        doc["round_trip_error"] = (rec.rho0_estimate.rho - *spec.rho0).norm();

    emit(opt, doc);
    return 0;
}

int cmd_verify(const GlobalOptions& opt) {
    const std::vector<CheckResult> checks = verify_suite(opt.suite, opt.seed);

    bool all_passed = true;
    json check_json = json::array();
    for (const CheckResult& check : checks) {
        all_passed = all_passed && check.passed;
        json entry{{"name", check.name}, {"passed", check.passed}, {"cases", check.cases}};
        if (!check.detail.empty()) entry["detail"] = check.detail;
        check_json.push_back(std::move(entry));
        std::cerr << (check.passed ? "[pass] " : "[FAIL] ") << check.name << " ("
                  << check.cases << " cases)\n";
    }
    emit(opt, json{{"suite", opt.suite},
                   {"seed", opt.seed},
                   {"checks", std::move(check_json)},
                   {"passed", all_passed}});
    return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stroboscopic tomography for qudits under Gaussian dephasing"};
    app.require_subcommand(1);

    GlobalOptions opt;
    app.add_option("--input", opt.input, "problem document (JSON)");
    app.add_option("--data", opt.data, "expectation-value data (CSV)");
    app.add_option("--output", opt.output, "output path (stdout when absent)");
    app.add_option("--tolerance", opt.tolerance, "numerical tolerance")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", opt.seed, "seed for all randomized steps");
    app.add_option("--alpha-method", opt.alpha_method, "alpha evaluation method")
        ->check(CLI::IsMember({"ode", "interp"}));
    app.add_option("--samples", opt.samples, "time-scan sample count")
        ->check(CLI::Range(2, 1 << 22));

    CLI::App* analyze = app.add_subcommand(
        "analyze", "spectrum, cyclicity indices, and minimal polynomial");
    CLI::App* design = app.add_subcommand(
        "design", "choose observables and measurement times");
    CLI::App* simulate = app.add_subcommand(
        "simulate", "generate expectation-value data");
    CLI::App* reconstruct = app.add_subcommand(
        "reconstruct", "recover the initial state from data");
    CLI::App* verify = app.add_subcommand("verify", "run the property suites");
    verify->add_option("--suite", opt.suite, "property suite to run")
        ->check(CLI::IsMember({"semigroup", "cyclicity", "alpha", "tomography", "all"}));

    for (CLI::App* sub : {analyze, design, simulate, reconstruct, verify})
        sub->fallthrough();

    const auto need_input = [&](const CLI::App* sub) {
        return sub->parsed() && opt.input.empty();
    };

    CLI11_PARSE(app, argc, argv);

    try {
        if (need_input(analyze) || need_input(design) || need_input(simulate) ||
            need_input(reconstruct))
            throw ParseError("--input is required for this subcommand");
        if (reconstruct->parsed() && opt.data.empty())
            throw ParseError("--data is required for reconstruct");

        if (analyze->parsed()) return cmd_analyze(opt);
        if (design->parsed()) return cmd_design(opt);
        if (simulate->parsed()) return cmd_simulate(opt);
        if (reconstruct->parsed()) return cmd_reconstruct(opt);
        if (verify->parsed()) return cmd_verify(opt);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DimensionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const DesignFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const SingularGridError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const RankDeficiencyError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 6;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
