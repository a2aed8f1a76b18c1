#include "strobo/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace strobo {

json matrix_to_json(const Matrix& A) {
    json re = json::array();
    json im = json::array();
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        json re_row = json::array();
        json im_row = json::array();
        for (Eigen::Index j = 0; j < A.cols(); ++j) {
            re_row.push_back(A(i, j).real());
            im_row.push_back(A(i, j).imag());
        }
        re.push_back(std::move(re_row));
        im.push_back(std::move(im_row));
    }
    return json{{"re", std::move(re)}, {"im", std::move(im)}};
}

Matrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("re") || !j.contains("im"))
        throw ParseError("matrix: expected an object with \"re\" and \"im\" arrays");
    const json& re = j.at("re");
    const json& im = j.at("im");
    if (!re.is_array() || !im.is_array() || re.size() != im.size() || re.empty())
        throw ParseError("matrix: \"re\" and \"im\" must be nonempty arrays of equal shape");

    const auto rows = static_cast<Eigen::Index>(re.size());
    const auto cols = static_cast<Eigen::Index>(re.at(0).size());
    Matrix A(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const json& re_row = re.at(static_cast<std::size_t>(i));
        const json& im_row = im.at(static_cast<std::size_t>(i));
        if (!re_row.is_array() || !im_row.is_array() ||
            static_cast<Eigen::Index>(re_row.size()) != cols ||
            static_cast<Eigen::Index>(im_row.size()) != cols)
            throw ParseError("matrix: ragged rows");
        for (Eigen::Index j = 0; j < cols; ++j) {
            if (!re_row.at(static_cast<std::size_t>(j)).is_number() ||
                !im_row.at(static_cast<std::size_t>(j)).is_number())
                throw ParseError("matrix: entries must be numbers");
            A(i, j) = cd(re_row.at(static_cast<std::size_t>(j)).get<double>(),
                         im_row.at(static_cast<std::size_t>(j)).get<double>());
        }
    }
    return A;
}

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

namespace {

HamiltonianSpec hamiltonian_from_json(const json& j, double tol) {
    if (j.is_object() && j.contains("eigenvalues")) {
        if (!j.contains("multiplicities"))
            throw ParseError("hamiltonian: spectral form needs \"multiplicities\"");
        std::vector<double> eigenvalues;
        std::vector<int> multiplicities;
        try {
            eigenvalues = j.at("eigenvalues").get<std::vector<double>>();
            multiplicities = j.at("multiplicities").get<std::vector<int>>();
        } catch (const json::exception& e) {
            throw ParseError(std::string("hamiltonian: ") + e.what());
        }
        std::optional<Matrix> basis;
        if (j.contains("eigenbasis")) basis = matrix_from_json(j.at("eigenbasis"));
        try {
            return HamiltonianSpec::from_spectrum(std::move(eigenvalues),
                                                  std::move(multiplicities), std::move(basis));
        } catch (const DimensionError&) {
            throw;
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what());
        }
    }
    if (j.is_object() && j.contains("re")) {
        try {
            return HamiltonianSpec::from_dense(matrix_from_json(j), tol);
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what());
        }
    }
    throw ParseError("hamiltonian: expected dense {\"re\",\"im\"} or spectral "
                     "{\"eigenvalues\",\"multiplicities\"} form");
}

}  // namespace

ProblemSpec parse_problem(const json& doc) {
    if (!doc.is_object()) throw ParseError("problem: top-level document must be an object");
    if (!doc.contains("hamiltonian")) throw ParseError("problem: missing \"hamiltonian\"");

    double tol = kDefaultTol;
    if (doc.contains("tolerance")) {
        if (!doc.at("tolerance").is_number() || doc.at("tolerance").get<double>() <= 0.0)
            throw ParseError("problem: \"tolerance\" must be a positive number");
        tol = doc.at("tolerance").get<double>();
    }

    ProblemSpec spec{hamiltonian_from_json(doc.at("hamiltonian"), tol),
                     std::nullopt, std::nullopt, std::nullopt, std::nullopt,
                     std::nullopt};
    if (doc.contains("tolerance")) spec.tolerance = tol;
    const int d = spec.hamiltonian.dim();

    if (doc.contains("rho0")) {
        Matrix rho = matrix_from_json(doc.at("rho0"));
        if (rho.rows() != d || rho.cols() != d)
            throw DimensionError("problem: rho0 dimension does not match the Hamiltonian");
        spec.rho0 = std::move(rho);
    }
    if (doc.contains("observables")) {
        if (!doc.at("observables").is_array())
            throw ParseError("problem: \"observables\" must be an array");
        std::vector<Matrix> obs;
        for (const json& q : doc.at("observables")) {
            Matrix mat = matrix_from_json(q);
            if (mat.rows() != d || mat.cols() != d)
                throw DimensionError("problem: observable dimension does not match the Hamiltonian");
            obs.push_back(std::move(mat));
        }
        spec.observables = std::move(obs);
    }
    if (doc.contains("grid")) {
        const json& g = doc.at("grid");
        if (!g.is_object() || !g.contains("c"))
            throw ParseError("problem: \"grid\" must be an object with a \"c\" array");
        GridSpec grid;
        try {
            grid.c = g.at("c").get<std::vector<double>>();
        } catch (const json::exception& e) {
            throw ParseError(std::string("grid: ") + e.what());
        }
        if (g.contains("T")) grid.T = g.at("T").get<double>();
        if (g.contains("t_star")) grid.t_star = g.at("t_star").get<double>();
        spec.grid = std::move(grid);
    }
    if (doc.contains("noise")) {
        const json& n = doc.at("noise");
        NoiseSpec noise;
        if (n.contains("sigma")) noise.sigma = n.at("sigma").get<double>();
        if (n.contains("seed")) noise.seed = n.at("seed").get<std::uint64_t>();
        if (noise.sigma < 0.0) throw ParseError("noise: sigma must be nonnegative");
        spec.noise = noise;
    }
    return spec;
}

ProblemSpec load_problem(const std::string& path) { return parse_problem(load_json(path)); }

json problem_to_json(const ProblemSpec& spec) {
    json doc;
    // spectral Hamiltonians keep their exact form; dense ones are re-emitted densely
    const auto& H = spec.hamiltonian;
    const bool spectral_identity_basis =
        (H.eigenbasis() - Matrix::Identity(H.dim(), H.dim())).cwiseAbs().maxCoeff() == 0.0;
    if (spectral_identity_basis) {
        doc["hamiltonian"] = {{"eigenvalues", H.distinct_eigenvalues()},
                              {"multiplicities", H.multiplicities()}};
    } else {
        doc["hamiltonian"] = matrix_to_json(H.dense());
    }
    if (spec.rho0) doc["rho0"] = matrix_to_json(*spec.rho0);
    if (spec.observables) {
        json arr = json::array();
        for (const Matrix& q : *spec.observables) arr.push_back(matrix_to_json(q));
        doc["observables"] = std::move(arr);
    }
    if (spec.grid) {
        json g{{"c", spec.grid->c}, {"T", spec.grid->T}};
        if (spec.grid->t_star) g["t_star"] = *spec.grid->t_star;
        doc["grid"] = std::move(g);
    }
    if (spec.noise) doc["noise"] = {{"sigma", spec.noise->sigma}, {"seed", spec.noise->seed}};
    if (spec.tolerance) doc["tolerance"] = *spec.tolerance;
    return doc;
}

void write_data_csv(const std::string& path, const DataMatrix& data) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    write_data_csv(out, data);
}

void write_data_csv(std::ostream& out, const DataMatrix& data) {
    out << "obs_index";
    for (double t : data.grid.instants()) out << "," << format_double(t);
    out << "\n";
    for (Eigen::Index i = 0; i < data.values.rows(); ++i) {
        out << i;
        for (Eigen::Index j = 0; j < data.values.cols(); ++j)
            out << "," << format_double(data.values(i, j));
        out << "\n";
    }
}

CsvData read_data_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open data file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw ParseError("data csv: empty file");

    const auto split = [](const std::string& s) {
        std::vector<std::string> fields;
        std::stringstream ss(s);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        return fields;
    };

    const std::vector<std::string> header = split(line);
    if (header.empty() || header[0] != "obs_index")
        throw ParseError("data csv: header must start with \"obs_index\"");

    CsvData data;
    for (std::size_t j = 1; j < header.size(); ++j) {
        try {
            data.instants.push_back(std::stod(header[j]));
        } catch (const std::exception&) {
            throw ParseError("data csv: non-numeric time in header: " + header[j]);
        }
    }
    const std::size_t r = data.instants.size();
    if (r == 0) throw ParseError("data csv: no time columns");

    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const std::vector<std::string> fields = split(line);
        if (fields.size() != r + 1)
            throw ParseError("data csv: row has wrong number of fields");
        std::vector<double> row;
        for (std::size_t j = 1; j < fields.size(); ++j) {
            try {
                row.push_back(std::stod(fields[j]));
            } catch (const std::exception&) {
                throw ParseError("data csv: non-numeric value: " + fields[j]);
            }
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("data csv: no data rows");

    data.values.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(r));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < r; ++j)
            data.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    return data;
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ParseError(std::string("json parse error in ") + path + ": " + e.what());
    }
    return doc;
}

void write_json(const std::string& path, const json& doc) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << doc.dump(2) << "\n";
}

}  // namespace strobo
