#include "torushh/report.hpp"

#include <algorithm>
#include <sstream>

namespace torushh {

const HHEntry* HHTable::find(int deg, int wt) const {
  for (const auto& e : entries)
    if (e.deg == deg && e.wt == wt) return &e;
  return nullptr;
}

std::size_t HHTable::dim(int deg, int wt) const {
  const HHEntry* e = find(deg, wt);
  return e ? e->dim : 0;
}

void HHTable::sort() {
  std::stable_sort(entries.begin(), entries.end(),
                   [](const HHEntry& a, const HHEntry& b) { return std::pair(a.deg, a.wt) < std::pair(b.deg, b.wt); });
}

ojson HHTable::to_json() const {
  ojson j;
  j["params"] = params;
  j["entries"] = ojson::array();
  for (const auto& e : entries) {
    ojson x;
    x["deg"] = e.deg;
    x["wt"] = e.wt;
    x["dim"] = e.dim;
    x["basis"] = e.basis;
    x["torsion"] = e.torsion;
    j["entries"].push_back(std::move(x));
  }
  return j;
}

HHTable HHTable::from_json(const ojson& j) {
  HHTable t;
  t.params = j.at("params");
  for (const auto& x : j.at("entries")) {
    HHEntry e;
    e.deg = x.at("deg").get<int>();
    e.wt = x.at("wt").get<int>();
    e.dim = x.at("dim").get<std::size_t>();
    e.basis = x.at("basis").get<std::vector<std::string>>();
    e.torsion = x.at("torsion").get<std::vector<std::string>>();
    t.entries.push_back(std::move(e));
  }
  return t;
}

namespace {
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + v[i];
  return s;
}
}  // namespace

std::string HHTable::to_csv() const {
  std::ostringstream os;
  os << "degree,weight,dim,torsion,basis\n";
  for (const auto& e : entries)
    os << e.deg << "," << e.wt << "," << e.dim << "," << csv_field(join(e.torsion)) << "," << csv_field(join(e.basis))
       << "\n";
  return os.str();
}

}  // namespace torushh
