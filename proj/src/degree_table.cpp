#include "cmwork/degree_table.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cmwork/errors.hpp"

#ifndef CMWORK_DATA_DIR
#define CMWORK_DATA_DIR "data"
#endif

namespace cmwork {

DegreeTable DegreeTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open degree table file: " + path);
  DegreeTable t;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto colon = line.find(':');
    if (colon == std::string::npos) continue;
    std::string label = line.substr(0, colon);
    label.erase(std::remove_if(label.begin(), label.end(), ::isspace), label.end());
    if (label.empty()) continue;
    if (label == "format-version") {
      std::string v = line.substr(colon + 1);
      v.erase(std::remove_if(v.begin(), v.end(), ::isspace), v.end());
      if (v != "1") throw ConfigError("unsupported degree table format version " + v);
      continue;
    }
    std::vector<int> degs;
    std::string rest = line.substr(colon + 1);
    std::stringstream ss(rest);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
      if (tok.empty()) continue;
      degs.push_back(std::stoi(tok));
    }
    if (degs.empty()) throw ConfigError("degree table entry without degrees: " + label);
    std::sort(degs.begin(), degs.end());
    t.entries_[label] = std::move(degs);
  }
  return t;
}

DegreeTable DegreeTable::load_default() {
  const char* env = std::getenv("CMWORK_DATA_DIR");
  std::string dir = env ? env : CMWORK_DATA_DIR;
  return load(dir + "/degree_tables.txt");
}

const std::vector<int>& DegreeTable::degrees(const std::string& label) const {
  auto it = entries_.find(label);
  if (it == entries_.end())
    throw MissingParabolicTable("no degree table entry for " + label);
  return it->second;
}

std::vector<std::pair<std::string, std::vector<int>>> DegreeTable::maximal_parabolics(
    const std::string& group) const {
  std::string prefix = group + "/";
  std::vector<std::pair<std::string, std::vector<int>>> out;
  for (const auto& [label, degs] : entries_)
    if (label.rfind(prefix, 0) == 0) out.emplace_back(label, degs);
  if (out.empty())
    throw MissingParabolicTable("no parabolic degree tables for " + group);
  return out;
}

long long DegreeTable::order_of(const std::string& label) const {
  long long prod = 1;
  for (int d : degrees(label)) prod *= d;
  return prod;
}

}  // namespace cmwork
