#include "manasim/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace manasim::io {

namespace {

using nlohmann::json;

std::string g17(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

json complex_to_json(const std::complex<double>& z) { return json::array({z.real(), z.imag()}); }

json matrix_to_json(const phase_space::DensityMatrix& rho) {
    json entries = json::array();
    for (int r = 0; r < rho.dim(); ++r) {
        json row = json::array();
        for (int c = 0; c < rho.dim(); ++c) row.push_back(complex_to_json(rho(r, c)));
        entries.push_back(std::move(row));
    }
    return json{{"dim", rho.dim()}, {"entries", std::move(entries)}};
}

json eps_table_to_json(const harvest::EpsilonLimit& limit) {
    json table = json::array();
    for (std::size_t i = 0; i < limit.table.size(); ++i) {
        json row{{"epsilon", limit.table[i].epsilon},
                 {"re", limit.table[i].value.real()},
                 {"im", limit.table[i].value.imag()}};
        if (i < limit.quad_errors.size()) row["quad_error"] = limit.quad_errors[i];
        table.push_back(std::move(row));
    }
    return json{{"value", limit.value},
                {"error_estimate", limit.error_estimate},
                {"converged", limit.converged},
                {"im_eps_plateau", limit.im_eps_plateau},
                {"im_plateau_spread", limit.im_plateau_spread},
                {"table", std::move(table)}};
}

}  // namespace

phase_space::DensityMatrix load_density_matrix(std::istream& in,
                                               phase_space::ValidationOptions options) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& err) {
        throw ParseError(std::string("density matrix: invalid JSON: ") + err.what());
    }
    if (!doc.is_object() || !doc.contains("dim") || !doc.contains("entries"))
        throw ParseError("density matrix: expected object with \"dim\" and \"entries\"");
    if (!doc["dim"].is_number_integer()) throw ParseError("density matrix: \"dim\" must be an integer");
    const int dim = doc["dim"].get<int>();
    if (dim <= 0) throw ParseError("density matrix: \"dim\" must be positive");
    const auto& entries = doc["entries"];
    if (!entries.is_array() || static_cast<int>(entries.size()) != dim)
        throw ParseError("density matrix: \"entries\" must hold dim rows");

    phase_space::Matrix m(dim, dim);
    for (int r = 0; r < dim; ++r) {
        const auto& row = entries[r];
        if (!row.is_array() || static_cast<int>(row.size()) != dim)
            throw ParseError("density matrix: each row must hold dim entries");
        for (int c = 0; c < dim; ++c) {
            const auto& cell = row[c];
            if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() || !cell[1].is_number())
                throw ParseError("density matrix: each entry must be a [re, im] pair");
            m(r, c) = phase_space::Complex{cell[0].get<double>(), cell[1].get<double>()};
        }
    }
    return phase_space::DensityMatrix(std::move(m), options);
}

phase_space::DensityMatrix load_density_matrix_file(const std::string& path,
                                                    phase_space::ValidationOptions options) {
    std::ifstream file(path);
    if (!file) throw std::ios_base::failure("cannot open " + path);
    return load_density_matrix(file, options);
}

std::string density_matrix_to_json(const phase_space::DensityMatrix& rho, int indent) {
    return matrix_to_json(rho).dump(indent);
}

std::string harvest_result_to_json(const harvest::HarvestResult& result, int indent) {
    json doc{{"q", result.q},
             {"beta", {{"re", result.beta.real()}, {"im", result.beta.imag()}}},
             {"rho", matrix_to_json(result.rho)},
             {"mana_general", result.mana_general},
             {"mana_family", result.mana_family},
             {"mana_closed", result.mana_closed},
             {"diagnostics",
              {{"fq", eps_table_to_json(result.diagnostics.fq)},
               {"fbeta", eps_table_to_json(result.diagnostics.fbeta)},
               {"rho_min_eigenvalue", result.diagnostics.rho_min_eigenvalue},
               {"perturbative_warning", result.diagnostics.perturbative_warning}}}};
    return doc.dump(indent);
}

std::string sweep_csv_header() {
    return "omega_sigma,q_per_lambda2,re_beta_per_lambda2,im_beta_eps_plateau,"
           "mana_closed_per_lambda2,mana_family_per_lambda2,mana_general_per_lambda2,"
           "quad_error_estimate";
}

void write_sweep_csv(std::ostream& out, const std::vector<harvest::SweepRow>& rows) {
    out << sweep_csv_header() << '\n';
    for (const auto& row : rows) {
        out << g17(row.omega_sigma) << ',' << g17(row.q_per_lambda2) << ','
            << g17(row.re_beta_per_lambda2) << ',' << g17(row.im_beta_eps_plateau) << ','
            << g17(row.mana_closed_per_lambda2) << ',' << g17(row.mana_family_per_lambda2) << ','
            << g17(row.mana_general_per_lambda2) << ',' << g17(row.quad_error_estimate) << '\n';
    }
}

}  // namespace manasim::io
