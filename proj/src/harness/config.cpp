// Copyright 2026 The kdvsplit Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "kdvsplit/harness/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "kdvsplit/errors.hpp"
#include "kdvsplit/harness/functions.hpp"

namespace kdvsplit::harness {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& text, int line, const std::string& key) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v)) {
    throw ConfigError(line, key, "expected a finite number, got '" + t + "'");
  }
  return v;
}

int parse_int(const std::string& text, int line, const std::string& key) {
  const std::string t = trim(text);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw ConfigError(line, key, "expected an integer, got '" + t + "'");
  }
  return v;
}

std::vector<double> parse_list(const std::string& text, int line, const std::string& key) {
  std::vector<double> out;
  if (trim(text).empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(item, line, key));
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ',';
    out += format_double(v[i]);
  }
  return out;
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> k{"a",        "b",          "T",
                                       "N",        "M",          "g.kind",
                                       "g.params", "ic.kind",    "ic.params",
                                       "snapshots", "reference.kind", "reference.N",
                                       "reference.M", "output_dir"};
  return k;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void validate(const ExperimentConfig& c) {
  if (!(c.a < c.b)) throw ConfigError(0, "b", "need a < b");
  if (!(c.T > 0.0)) throw ConfigError(0, "T", "need T > 0");
  if (c.N < 8) throw ConfigError(0, "N", "need N >= 8");
  if (c.M < 1) throw ConfigError(0, "M", "need M >= 1");
  for (double t : c.snapshots) {
    if (t < 0.0 || t > c.T) throw ConfigError(0, "snapshots", "times must lie in [0, T]");
  }
  if (c.reference.kind == ReferenceSpec::Kind::kSelf) {
    if (c.reference.N < 8) throw ConfigError(0, "reference.N", "need reference.N >= 8");
    if (c.reference.M < 1) throw ConfigError(0, "reference.M", "need reference.M >= 1");
  }
  if (c.output_dir.empty()) throw ConfigError(0, "output_dir", "must not be empty");
  make_advection(c.g);
  make_initial(c.ic);
}

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig c;
  std::map<std::string, int> seen;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string content = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) throw ConfigError(line, "", "expected 'key = value'");
    const std::string key = trim(content.substr(0, eq));
    const std::string value = trim(content.substr(eq + 1));
    if (!known_keys().contains(key)) throw ConfigError(line, key, "unknown key");
    if (seen.contains(key)) {
      throw ConfigError(line, key,
                        "duplicate key (first set on line " + std::to_string(seen[key]) + ")");
    }
    seen[key] = line;

    if (key == "a") c.a = parse_double(value, line, key);
    else if (key == "b") c.b = parse_double(value, line, key);
    else if (key == "T") c.T = parse_double(value, line, key);
    else if (key == "N") c.N = parse_int(value, line, key);
    else if (key == "M") c.M = parse_int(value, line, key);
    else if (key == "g.kind") c.g.kind = value;
    else if (key == "g.params") c.g.params = parse_list(value, line, key);
    else if (key == "ic.kind") c.ic.kind = value;
    else if (key == "ic.params") c.ic.params = parse_list(value, line, key);
    else if (key == "snapshots") c.snapshots = parse_list(value, line, key);
    else if (key == "reference.kind") {
      if (value == "fourier") c.reference.kind = ReferenceSpec::Kind::kFourier;
      else if (value == "self") c.reference.kind = ReferenceSpec::Kind::kSelf;
      else throw ConfigError(line, key, "expected 'fourier' or 'self'");
    } else if (key == "reference.N") c.reference.N = parse_int(value, line, key);
    else if (key == "reference.M") c.reference.M = parse_int(value, line, key);
    else if (key == "output_dir") c.output_dir = value;
  }

  for (const char* required : {"a", "b", "T", "N", "M", "g.kind", "ic.kind"}) {
    if (!seen.contains(required)) throw ConfigError(0, required, "missing required key");
  }
  try {
    validate(c);
  } catch (const ConfigError& e) {
    const auto it = seen.find(e.field());
    if (it == seen.end()) throw;
    // Re-anchor to the line that set the field.
    std::string msg = e.what();
    const auto colon = msg.find(": ");
    throw ConfigError(it->second, e.field(),
                      colon == std::string::npos ? msg : msg.substr(colon + 2));
  }
  return c;
}

ExperimentConfig parse_config_string(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path.string());
  return parse_config(in);
}

std::string serialize(const ExperimentConfig& c) {
  std::ostringstream os;
  os << "a = " << format_double(c.a) << '\n'
     << "b = " << format_double(c.b) << '\n'
     << "T = " << format_double(c.T) << '\n'
     << "N = " << c.N << '\n'
     << "M = " << c.M << '\n'
     << "g.kind = " << c.g.kind << '\n'
     << "g.params = " << join(c.g.params) << '\n'
     << "ic.kind = " << c.ic.kind << '\n'
     << "ic.params = " << join(c.ic.params) << '\n'
     << "snapshots = " << join(c.snapshots) << '\n'
     << "reference.kind = "
     << (c.reference.kind == ReferenceSpec::Kind::kSelf ? "self" : "fourier") << '\n'
     << "reference.N = " << c.reference.N << '\n'
     << "reference.M = " << c.reference.M << '\n'
     << "output_dir = " << c.output_dir << '\n';
  return os.str();
}

}  // namespace kdvsplit::harness
