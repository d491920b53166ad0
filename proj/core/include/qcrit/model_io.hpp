// model_io.hpp
// JSON model files for TwoBodyHamiltonian and JSON summaries of ED results.
// The schema is documented in docs/model-format.md.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "qcrit/ed.hpp"
#include "qcrit/hamiltonian.hpp"

namespace qcrit::io {

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Model {
  std::string name;
  std::string parameter = "lambda";
  TwoBodyHamiltonian hamiltonian;
};

Model parse_model(const std::string& json_text);
Model load_model(const std::filesystem::path& path);

// E0, D, gap, E0 / N and the averaged RDM of every edge (row-major [re, im]).
std::string ground_level_json(const Model& model, double lambda, const ed::GroundLevel& level);

}  // namespace qcrit::io
