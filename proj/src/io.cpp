#include "mec/io.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace mec {

using nlohmann::json;

namespace {

std::vector<double> read_masses(const json& row, std::size_t k) {
  if (!row.is_array()) {
    throw InvalidInput("distribution " + std::to_string(k) + " is not an array");
  }
  std::vector<double> masses;
  masses.reserve(row.size());
  for (const json& v : row) {
    if (!v.is_number()) {
      throw InvalidInput("distribution " + std::to_string(k) + " has a non-numeric mass");
    }
    masses.push_back(v.get<double>());
  }
  return masses;
}

}  // namespace

InstanceSet parse_instance(const json& doc, std::optional<bool> normalize) {
  const json* rows = nullptr;
  bool want_normalize = false;
  if (doc.is_object()) {
    auto it = doc.find("distributions");
    if (it == doc.end()) throw InvalidInput("instance is missing \"distributions\"");
    rows = &*it;
    if (auto nt = doc.find("normalize"); nt != doc.end()) {
      if (!nt->is_boolean()) throw InvalidInput("\"normalize\" must be a boolean");
      want_normalize = nt->get<bool>();
    }
  } else {
    rows = &doc;
  }
  if (normalize) want_normalize = *normalize;
  if (!rows->is_array() || rows->empty()) {
    throw InvalidInput("\"distributions\" must be a non-empty array");
  }

  std::vector<Dist> dists;
  dists.reserve(rows->size());
  for (std::size_t k = 0; k < rows->size(); ++k) {
    std::vector<double> masses = read_masses((*rows)[k], k);
    if (want_normalize) {
      double total = 0.0;
      for (double x : masses) {
        if (x < 0.0) throw InvalidInput("negative mass in distribution " + std::to_string(k));
        total += x;
      }
      if (!(total > 0.0)) throw InvalidInput("distribution " + std::to_string(k) + " has zero mass");
      for (double& x : masses) x /= total;
    }
    dists.emplace_back(std::move(masses));
  }
  return InstanceSet(std::move(dists));
}

InstanceSet parse_instance(const std::string& text, std::optional<bool> normalize) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("malformed instance JSON: ") + e.what());
  }
  return parse_instance(doc, normalize);
}

InstanceSet load_instance(const std::filesystem::path& path, std::optional<bool> normalize) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open instance file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str(), normalize);
}

json instance_to_json(const InstanceSet& s) {
  json rows = json::array();
  for (const Dist& d : s.dists()) {
    rows.push_back(std::vector<double>(d.masses().begin(), d.masses().end()));
  }
  return json{{"distributions", rows}};
}

json coupling_to_json(const Coupling& c) {
  json out = json::array();
  for (std::size_t e = 0; e < c.size(); ++e) {
    auto idx = c.indices(e);
    out.push_back({{"indices", std::vector<std::uint32_t>(idx.begin(), idx.end())},
                   {"mass", c.mass(e)}});
  }
  return out;
}

Coupling coupling_from_json(const json& doc) {
  if (!doc.is_array()) throw InvalidInput("coupling document must be an array");
  if (doc.empty()) return Coupling(0);
  std::size_t m = 0;
  Coupling c;
  for (std::size_t e = 0; e < doc.size(); ++e) {
    const json& entry = doc[e];
    if (!entry.is_object() || !entry.contains("indices") || !entry.contains("mass")) {
      throw InvalidInput("coupling entry " + std::to_string(e) + " needs indices and mass");
    }
    const json& raw = entry["indices"];
    const bool indices_ok =
        raw.is_array() && std::all_of(raw.begin(), raw.end(), [](const json& v) {
          return v.is_number_unsigned() && v.get<std::uint64_t>() <= UINT32_MAX;
        });
    if (!indices_ok) throw InvalidInput("coupling entry " + std::to_string(e) + " has bad indices");
    const auto idx = raw.get<std::vector<std::uint32_t>>();
    if (!entry["mass"].is_number()) {
      throw InvalidInput("coupling entry " + std::to_string(e) + " has a non-numeric mass");
    }
    if (e == 0) {
      m = idx.size();
      c = Coupling(m);
    }
    c.add(idx, entry["mass"].get<double>());
  }
  return c;
}

void save_coupling(const std::filesystem::path& path, const Coupling& c) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write coupling file " + path.string());
  out << coupling_to_json(c).dump(2) << '\n';
}

Coupling load_coupling(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open coupling file " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("malformed coupling JSON: ") + e.what());
  }
  return coupling_from_json(doc);
}

}  // namespace mec
