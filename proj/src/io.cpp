#include "pstlab/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "pstlab/exception.hpp"

namespace pstlab::io {

Json graph_to_json(const Graph& g) {
  Json edges = Json::array();
  for (const auto& e : g.edges()) edges.push_back(Json::array({e.u, e.v, e.weight}));
  return Json{{"n", g.size()}, {"edges", edges}};
}

Graph graph_from_json(const Json& j) {
  try {
    const int n = j.at("n").get<int>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || (e.size() != 2 && e.size() != 3)) {
        throw Error(ErrorKind::kParse, "edge must be [i, j] or [i, j, weight]");
      }
      edges.push_back({e[0].get<int>(), e[1].get<int>(), e.size() == 3 ? e[2].get<double>() : 1.0});
    }
    return Graph(n, std::move(edges));
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::kParse, std::string("graph JSON: ") + ex.what());
  }
}

Json complex_matrix_to_json(const Eigen::MatrixXcd& m) {
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json rr = Json::array();
    Json ri = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      rr.push_back(m(i, k).real());
      ri.push_back(m(i, k).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  return Json{{"n", m.rows()}, {"re", re}, {"im", im}};
}

Json hamiltonian_to_json(const Hamiltonian& h) { return complex_matrix_to_json(h.matrix()); }

Hamiltonian hamiltonian_from_json(const Json& j) {
  try {
    const int n = j.at("n").get<int>();
    const auto& re = j.at("re");
    const Json im = j.contains("im") ? j.at("im") : Json();
    if (static_cast<int>(re.size()) != n) throw Error(ErrorKind::kParse, "re must have n rows");
    Eigen::MatrixXcd m(n, n);
    for (int r = 0; r < n; ++r) {
      if (static_cast<int>(re[r].size()) != n) throw Error(ErrorKind::kParse, "re rows must have n entries");
      for (int c = 0; c < n; ++c) {
        const double imag = im.is_null() ? 0.0 : im.at(r).at(c).get<double>();
        m(r, c) = Complex(re[r][c].get<double>(), imag);
      }
    }
    return Hamiltonian(std::move(m), Family::kCustom);
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::kParse, std::string("Hamiltonian JSON: ") + ex.what());
  }
}

std::string format_fixed17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

void write_trace_csv(std::ostream& out, const FidelityTrace& trace) {
  out << "t,re,im,abs\n";
  for (std::size_t k = 0; k < trace.times.size(); ++k) {
    const auto& z = trace.amps[k];
    out << format_fixed17(trace.times[k]) << ',' << format_fixed17(z.real()) << ',' << format_fixed17(z.imag())
        << ',' << format_fixed17(std::abs(z)) << '\n';
  }
}

Json trace_to_json(const FidelityTrace& trace) {
  Json t = Json::array(), re = Json::array(), im = Json::array(), ab = Json::array();
  for (std::size_t k = 0; k < trace.times.size(); ++k) {
    t.push_back(trace.times[k]);
    re.push_back(trace.amps[k].real());
    im.push_back(trace.amps[k].imag());
    ab.push_back(std::abs(trace.amps[k]));
  }
  return Json{{"source", {{"label", trace.label}, {"a", trace.a}, {"b", trace.b}}},
              {"t", t},
              {"re", re},
              {"im", im},
              {"abs", ab}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kConfiguration, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::kParse, path + ": " + ex.what());
  }
}

}  // namespace pstlab::io
