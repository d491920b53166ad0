#include "qcrit/model_io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace qcrit::io {

namespace {

using nlohmann::json;

ComplexMatrix pauli_product(const std::string& tag, const std::vector<std::size_t>& dims) {
  ComplexMatrix out = ComplexMatrix::identity(1);
  for (std::size_t k = 0; k < tag.size(); ++k) {
    if (dims[k] != 2) throw ModelError("Pauli tag '" + tag + "' on a site with d != 2");
    switch (tag[k]) {
      case 'I': out = kron(out, pauli::identity()); break;
      case 'X': out = kron(out, pauli::x()); break;
      case 'Y': out = kron(out, pauli::y()); break;
      case 'Z': out = kron(out, pauli::z()); break;
      default: throw ModelError("unknown Pauli letter in '" + tag + "'");
    }
  }
  return out;
}

ComplexMatrix explicit_matrix(const json& rows, std::size_t dim) {
  if (!rows.is_array() || rows.size() != dim) throw ModelError("matrix has the wrong row count");
  ComplexMatrix m(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    const auto& row = rows[r];
    if (!row.is_array() || row.size() != dim) throw ModelError("matrix row has the wrong length");
    for (std::size_t c = 0; c < dim; ++c) {
      const auto& z = row[c];
      if (z.is_number()) {
        m(r, c) = z.get<double>();
      } else if (z.is_array() && z.size() == 2) {
        m(r, c) = Complex(z[0].get<double>(), z[1].get<double>());
      } else {
        throw ModelError("matrix entries are numbers or [re, im] pairs");
      }
    }
  }
  return m;
}

ComplexMatrix term_operator(const json& term, const std::vector<std::size_t>& dims) {
  std::size_t dim = 1;
  for (auto d : dims) dim *= d;
  const bool has_op = term.contains("op"), has_matrix = term.contains("matrix");
  if (has_op == has_matrix) throw ModelError("each term needs exactly one of 'op' or 'matrix'");
  if (has_matrix) return explicit_matrix(term.at("matrix"), dim);
  const auto tag = term.at("op").get<std::string>();
  if (tag.size() != dims.size())
    throw ModelError("Pauli tag '" + tag + "' does not match the number of sites");
  return pauli_product(tag, dims);
}

// coeff: number, or {"const": c0, "linear": c1} meaning c0 + c1 lambda.
Coupling term_coupling(const json& term) {
  if (!term.contains("coeff")) return Coupling::constant(1.0);
  const auto& c = term.at("coeff");
  if (c.is_number()) return Coupling::constant(c.get<double>());
  if (!c.is_object()) throw ModelError("coeff must be a number or an object");
  for (const auto& [key, _] : c.items())
    if (key != "const" && key != "linear") throw ModelError("unknown coeff key '" + key + "'");
  return Coupling::polynomial({c.value("const", 0.0), c.value("linear", 0.0)});
}

std::size_t site_index(const json& v, std::size_t n) {
  const auto s = v.get<long long>();
  if (s < 0 || static_cast<std::size_t>(s) >= n) throw ModelError("site index out of range");
  return static_cast<std::size_t>(s);
}

}  // namespace

Model parse_model(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ModelError(std::string("invalid JSON: ") + e.what());
  }
  try {
    std::vector<std::size_t> dims;
    if (doc.contains("dims")) {
      dims = doc.at("dims").get<std::vector<std::size_t>>();
    } else if (doc.contains("sites")) {
      dims.assign(doc.at("sites").get<std::size_t>(), doc.value("dim", std::size_t{2}));
    } else {
      throw ModelError("model needs 'dims' or 'sites'");
    }
    if (dims.empty()) throw ModelError("model has no sites");
    for (auto d : dims)
      if (d < 2) throw ModelError("site dimensions must be at least 2");

    Model model{doc.value("name", std::string("model")), doc.value("parameter", std::string("lambda")),
                TwoBodyHamiltonian(dims)};
    auto& h = model.hamiltonian;
    const std::size_t n = dims.size();
    for (const auto& e : doc.value("edges", json::array())) {
      if (!e.is_array() || e.size() != 2) throw ModelError("edges are [i, j] pairs");
      const auto i = site_index(e[0], n), j = site_index(e[1], n);
      if (i == j) throw ModelError("self-edge in 'edges'");
      h.add_edge(i, j);
    }
    for (const auto& t : doc.value("local", json::array())) {
      const auto s = site_index(t.at("site"), n);
      h.add_local(s, term_operator(t, {dims[s]}), term_coupling(t));
    }
    for (const auto& t : doc.value("pair", json::array())) {
      const auto& sites = t.at("sites");
      if (!sites.is_array() || sites.size() != 2) throw ModelError("pair 'sites' must be [i, j]");
      const auto i = site_index(sites[0], n), j = site_index(sites[1], n);
      if (i == j) throw ModelError("pair term on a single site");
      h.add_pair(i, j, term_operator(t, {dims[i], dims[j]}), term_coupling(t));
    }
    h.validate(0.0);
    return model;
  } catch (const json::exception& e) {
    throw ModelError(std::string("malformed model: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ModelError(std::string("invalid model: ") + e.what());
  } catch (const std::out_of_range& e) {
    throw ModelError(std::string("invalid model: ") + e.what());
  }
}

Model load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open model file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_model(text.str());
}

std::string ground_level_json(const Model& model, double lambda, const ed::GroundLevel& level) {
  const auto& h = model.hamiltonian;
  nlohmann::ordered_json out;
  out["model"] = model.name;
  out["parameter"] = model.parameter;
  out["value"] = lambda;
  out["sites"] = h.num_sites();
  out["E0"] = level.energy;
  out["E0_per_site"] = level.energy / static_cast<double>(h.num_sites());
  out["degeneracy"] = level.degeneracy;
  out["gap"] = level.gap;
  nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
  for (const auto& e : h.edges()) {
    const auto rho = ed::averaged_rdm(level, e.first, e.second);
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t r = 0; r < rho.dimension(); ++r) {
      nlohmann::ordered_json row = nlohmann::ordered_json::array();
      for (std::size_t c = 0; c < rho.dimension(); ++c) {
        const Complex z = rho.matrix()(r, c);
        row.push_back({z.real(), z.imag()});
      }
      rows.push_back(std::move(row));
    }
    pairs.push_back({{"sites", {e.first, e.second}}, {"rdm", std::move(rows)}});
  }
  out["pairs"] = std::move(pairs);
  return out.dump(2) + "\n";
}

}  // namespace qcrit::io
