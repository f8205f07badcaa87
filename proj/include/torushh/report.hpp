#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace torushh {

using ojson = nlohmann::ordered_json;

struct HHEntry {
  int deg = 0;
  int wt = 0;
  std::size_t dim = 0;              // Q-dimension, or free rank over Q[q] in deformed tables
  std::vector<std::string> basis;   // labels of representatives / free generators
  std::vector<std::string> torsion; // "<generator> ann <factor>" for q-torsion summands
  bool operator==(const HHEntry&) const = default;
};

struct HHTable {
  ojson params = ojson::object();
  std::vector<HHEntry> entries;

  const HHEntry* find(int deg, int wt) const;
  std::size_t dim(int deg, int wt) const;  // 0 if absent
  void sort();                             // by (deg, wt)

  ojson to_json() const;
  static HHTable from_json(const ojson& j);
  std::string to_csv() const;
  bool operator==(const HHTable& o) const { return params == o.params && entries == o.entries; }
};

}  // namespace torushh
