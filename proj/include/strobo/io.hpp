// JSON and CSV serialization for the CLI: complex matrices as
// {"re": [[...]], "im": [[...]]} (row-major), problem documents, and the
// expectation-value data matrix as CSV. Floats carry 17 significant digits
// so round trips are lossless.

#pragma once

#include "strobo/alpha.hpp"
#include "strobo/hamiltonian.hpp"
#include "strobo/tomography.hpp"
#include "strobo/types.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace strobo {

using json = nlohmann::json;

json matrix_to_json(const Matrix& A);
Matrix matrix_from_json(const json& j);

std::string format_double(double value);  // %.17g

struct NoiseSpec {
    double sigma = 0.0;
    std::uint64_t seed = 0;
};

struct GridSpec {
    std::vector<double> c;
    double T = 1.0;
    std::optional<double> t_star;  // populated by the design step
};

// One problem document: Hamiltonian plus the optional state, observables,
// grid, noise, and tolerance fields the pipeline commands fill in or consume.
struct ProblemSpec {
    HamiltonianSpec hamiltonian;
    std::optional<Matrix> rho0;
    std::optional<std::vector<Matrix>> observables;
    std::optional<GridSpec> grid;
    std::optional<NoiseSpec> noise;
    std::optional<double> tolerance;
};

// Throws ParseError on malformed documents and DimensionError on
// dimensionally inconsistent ones.
ProblemSpec parse_problem(const json& doc);
ProblemSpec load_problem(const std::string& path);

json problem_to_json(const ProblemSpec& spec);

void write_data_csv(const std::string& path, const DataMatrix& data);
void write_data_csv(std::ostream& out, const DataMatrix& data);

struct CsvData {
    std::vector<double> instants;
    RealMatrix values;
};
CsvData read_data_csv(const std::string& path);

json load_json(const std::string& path);
void write_json(const std::string& path, const json& doc);

}  // namespace strobo
