#pragma once

#include <filesystem>
#include <memory>

#include "railestate/snapshot.hpp"

namespace fixtures {

inline std::filesystem::path dir(const std::string& name) {
  return std::filesystem::path(RAILESTATE_FIXTURE_DIR) / name;
}

/// The planted Falls Church dataset, ingested once per process.
inline const railestate::Dataset& casestudy() {
  static const auto data = std::make_unique<railestate::Dataset>(
      railestate::run_ingest(railestate::read_sources(dir("casestudy"))).store);
  return *data;
}

}  // namespace fixtures
