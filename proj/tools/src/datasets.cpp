#include "good/cli/datasets.hpp"

#include <utility>

#include "good/errors.hpp"

namespace good::cli {

namespace {

std::vector<std::int64_t> expand(std::initializer_list<std::pair<std::int64_t, std::int64_t>> freq) {
  std::vector<std::int64_t> out;
  for (auto [value, count] : freq) out.insert(out.end(), static_cast<std::size_t>(count), value);
  return out;
}

std::vector<DatasetRegistryEntry> build_registry() {
  return {
      {"discoveries",
       expand({{0, 9}, {1, 12}, {2, 26}, {3, 20}, {4, 12}, {5, 7}, {6, 6}, {7, 4}, {8, 1},
               {9, 1}, {10, 1}, {12, 1}}),
       "Yearly numbers of great inventions and scientific discoveries, 1860-1959 (n=100).",
       "McNeil (1977), Interactive Data Analysis; R datasets::discoveries"},
      {"strikes",
       // the single "4+" observation is recorded as 4, which reproduces the
       // published sample mean 155/156 = 0.994
       expand({{0, 46}, {1, 76}, {2, 24}, {3, 9}, {4, 1}}),
       "Outbreaks of strikes per 4-week period, UK coal mining, 1948-1959 (n=156).",
       "Kendall (1961), J. R. Stat. Soc. A 124"},
      {"polarbears",
       expand({{1, 76}, {2, 147}, {3, 8}}),
       "Polar bear litter sizes at Svalbard, 1992-2017 (n=231).",
       "Folio et al. (2019), Ecology and Evolution 9"},
  };
}

}  // namespace

const std::vector<DatasetRegistryEntry>& dataset_registry() {
  static const std::vector<DatasetRegistryEntry> registry = build_registry();
  return registry;
}

const DatasetRegistryEntry& dataset_entry(std::string_view name) {
  for (const auto& entry : dataset_registry()) {
    if (entry.name == name) return entry;
  }
  std::string names;
  for (const auto& entry : dataset_registry()) names += (names.empty() ? "" : ", ") + entry.name;
  std::string note;
  if (name == "piglets") note = "; the piglet litter records were never published and are not bundled";
  throw DataError("unknown dataset '" + std::string(name) + "' (available: " + names + ")" + note);
}

const std::vector<std::int64_t>& dataset(std::string_view name) {
  return dataset_entry(name).observations;
}

std::map<std::int64_t, std::int64_t> frequency_table(const std::vector<std::int64_t>& values) {
  std::map<std::int64_t, std::int64_t> table;
  for (auto v : values) ++table[v];
  return table;
}

}  // namespace good::cli
