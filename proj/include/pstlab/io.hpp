#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "pstlab/dynamics.hpp"
#include "pstlab/graph.hpp"
#include "pstlab/hamiltonian.hpp"

namespace pstlab::io {

using Json = nlohmann::json;

// {"n": int, "edges": [[i, j, weight], ...]} with edges sorted.
Json graph_to_json(const Graph& g);
Graph graph_from_json(const Json& j);

// {"n": int, "re": [[...]], "im": [[...]]}
Json hamiltonian_to_json(const Hamiltonian& h);
Hamiltonian hamiltonian_from_json(const Json& j);

Json complex_matrix_to_json(const Eigen::MatrixXcd& m);

// Columns t, re, im, abs; every value in 17-significant-digit scientific form.
void write_trace_csv(std::ostream& out, const FidelityTrace& trace);
Json trace_to_json(const FidelityTrace& trace);

std::string format_fixed17(double x);

Json read_json_file(const std::string& path);

}  // namespace pstlab::io
