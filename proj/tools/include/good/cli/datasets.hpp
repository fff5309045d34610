#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace good::cli {

struct DatasetRegistryEntry {
  std::string name;
  std::vector<std::int64_t> observations;
  std::string description;
  std::string source;
};

/// The embedded example datasets, keyed by name.
const std::vector<DatasetRegistryEntry>& dataset_registry();

/// Observation vector for a registered dataset; DataError listing the
/// available names otherwise.
const std::vector<std::int64_t>& dataset(std::string_view name);

const DatasetRegistryEntry& dataset_entry(std::string_view name);

/// value -> count, only for values that occur.
std::map<std::int64_t, std::int64_t> frequency_table(const std::vector<std::int64_t>& values);

}  // namespace good::cli
