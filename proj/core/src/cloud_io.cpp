#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "tranche/errors.hpp"
#include "tranche/hilbert.hpp"

namespace tranche {

std::string cloud_to_json(const Cloud& c, const std::string& meta_json) {
  nlohmann::json j;
  j["label"] = c.label();
  j["mesh"] = c.mesh();
  j["dim"] = c.dim();
  nlohmann::json pts = nlohmann::json::array();
  for (std::size_t i = 0; i < c.size(); ++i) {
    auto p = c[i];
    pts.push_back(std::vector<double>(p.begin(), p.end()));
  }
  j["points"] = std::move(pts);
  if (!meta_json.empty()) j["meta"] = nlohmann::json::parse(meta_json);
  return j.dump();
}

Cloud cloud_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("cloud JSON: ") + e.what());
  }
  for (const char* key : {"label", "mesh", "dim", "points"})
    if (!j.contains(key)) throw DomainError(std::string("cloud JSON missing key: ") + key);
  const auto dim = j["dim"].get<std::size_t>();
  std::vector<double> flat;
  for (const auto& p : j["points"]) {
    auto v = p.get<std::vector<double>>();
    if (v.size() > dim) throw DomainError("cloud JSON point longer than dim");
    v.resize(dim, 0.0);
    flat.insert(flat.end(), v.begin(), v.end());
  }
  return Cloud(j["label"].get<std::string>(), j["mesh"].get<double>(), dim, std::move(flat));
}

void save_cloud(const Cloud& c, const std::string& path, const std::string& meta_json) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write " + path);
  out << cloud_to_json(c, meta_json) << '\n';
}

Cloud load_cloud(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return cloud_from_json(ss.str());
}

std::string cloud_to_csv(const Cloud& c, const std::vector<std::size_t>& coords) {
  std::string out;
  for (std::size_t k = 0; k < coords.size(); ++k) {
    out += (k ? ",x" : "x") + std::to_string(coords[k]);
  }
  out += '\n';
  char buf[32];
  for (std::size_t i = 0; i < c.size(); ++i) {
    auto p = c[i];
    for (std::size_t k = 0; k < coords.size(); ++k) {
      const double v = coords[k] < p.size() ? p[coords[k]] : 0.0;
      std::snprintf(buf, sizeof buf, "%.17g", v);
      if (k) out += ',';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace tranche
