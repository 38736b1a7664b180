#pragma once

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "hts/cli_io.hpp"
#include "hts/hierarchy.hpp"

namespace fixtures {

inline std::vector<hts::Coord> coords(std::initializer_list<int> v) {
  std::vector<hts::Coord> out;
  for (int x : v) out.emplace_back(x);
  return out;
}

inline std::vector<hts::Coord> unit_lines(int count) {
  std::vector<hts::Coord> out;
  for (int i = 0; i <= count; ++i) out.emplace_back(i);
  return out;
}

inline std::string read(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string data_path(const std::string& name) { return std::string(HTS_TEST_DATA) + "/" + name; }

/// The checked-in three-level bicubic refinement script on 5x6 cells.
inline hts::HierSpec bicubic_three_levels() { return *hts::parse_mesh(read(data_path("bicubic_three_levels.tm"))).spec; }

inline hts::HierSpec spec(int m, int n, int p, int q, const std::vector<std::vector<std::string>>& script) {
  hts::HierSpec s;
  s.m = m;
  s.n = n;
  s.p = p;
  s.q = q;
  for (const auto& level : script) {
    std::vector<hts::Address> row;
    for (const auto& a : level) row.push_back(hts::parse_address(a));
    s.script.push_back(std::move(row));
  }
  return s;
}

}  // namespace fixtures
