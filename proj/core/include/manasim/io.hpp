#pragma once

#include "manasim/harvest.hpp"
#include "manasim/phase_space.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace manasim::io {

/// Malformed input (bad JSON, missing keys, wrong shapes). Distinct from the
/// domain-invariant violations reported by the validated types.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Density-matrix JSON schema, row-major:
///   { "dim": n, "entries": [ [ [re, im], ... ], ... ] }
phase_space::DensityMatrix load_density_matrix(std::istream& in,
                                               phase_space::ValidationOptions options = {});
phase_space::DensityMatrix load_density_matrix_file(const std::string& path,
                                                    phase_space::ValidationOptions options = {});
std::string density_matrix_to_json(const phase_space::DensityMatrix& rho, int indent = 2);

/// HarvestResult mirror: q, beta, rho (schema above), the three mana values,
/// and the epsilon tables / error estimates of the quadrature path.
std::string harvest_result_to_json(const harvest::HarvestResult& result, int indent = 2);

/// Sweep CSV: fixed column order, '.' decimal separator, 17 significant
/// digits so doubles round-trip and reruns are byte-identical.
void write_sweep_csv(std::ostream& out, const std::vector<harvest::SweepRow>& rows);
std::string sweep_csv_header();

}  // namespace manasim::io
