#include "comet/manifest.hpp"

#include <json.hpp>

#include "comet/format.hpp"

namespace comet {

void RunManifest::add_input(const std::string& path) {
  inputs.push_back(Input{path, file_digest(path)});
}

std::string RunManifest::to_json() const {
  nlohmann::ordered_json obj;
  obj["format"] = "comet-manifest";
  obj["version"] = version;
  obj["command"] = command;
  nlohmann::ordered_json params;
  for (const auto& [key, value] : parameters) params[key] = value;
  obj["parameters"] = std::move(params);
  nlohmann::ordered_json ins = nlohmann::ordered_json::array();
  for (const Input& input : inputs)
    ins.push_back({{"path", input.path}, {"fnv1a64", input.digest}});
  obj["inputs"] = std::move(ins);
  if (seed)
    obj["seed"] = *seed;
  else
    obj["seed"] = nullptr;
  obj["outputs"] = outputs;
  return obj.dump(2) + "\n";
}

}  // namespace comet
