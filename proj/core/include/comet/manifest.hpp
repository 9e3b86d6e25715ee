#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace comet {

// Provenance record written beside every command's outputs. Output paths
// are relative to the run's output directory so reruns into different
// directories stay byte-identical.
struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;
  struct Input {
    std::string path;
    std::string digest;  // fnv1a64 of the file bytes
  };
  std::vector<Input> inputs;
  std::optional<std::uint64_t> seed;
  std::string version;
  std::vector<std::string> outputs;

  void add_input(const std::string& path);  // digests the file
  std::string to_json() const;
};

}  // namespace comet
