#pragma once
// plain-text tensor and jet files, and their JSON embedding
//
//   symtensor v1 dim=4 degree=2
//   1 2 = 1/2            1-based index tuple, then the entry; zero entries omitted
//
//   jet v1 geometry=complex n=4 degree=2 order=2
//   level 1
//   3 ; 1 2 = -2/1+1/3i  derivative tuple ; tensor tuple = entry
//
// '#' starts a comment. Errors carry line and column.
#include <memory>
#include <string>
#include <string_view>

#include <json.hpp>

#include "rigiditykit/jet.hpp"

namespace rk {

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string write_tensor(const SymTensor& t);
SymTensor read_tensor(std::string_view text);

// the jet keeps a pointer to its geometry, so the two travel together
struct LoadedJet {
  std::shared_ptr<const Geometry> geometry;
  std::unique_ptr<TensorJet> jet;
};
std::string write_jet(const TensorJet& t);
LoadedJet read_jet(std::string_view text);

nlohmann::ordered_json tensor_to_json(const SymTensor& t);
SymTensor tensor_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json jet_to_json(const TensorJet& t);
LoadedJet jet_from_json(const nlohmann::ordered_json& j);

enum class FileFormat { Tensor, Jet, Json };
FileFormat parse_format(const std::string& s);
// detects the input kind from its first token; json input must carry "type"
std::string convert(std::string_view text, FileFormat to);

}  // namespace rk
