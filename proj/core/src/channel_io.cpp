// Copyright 2026 The bcc Authors
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

#include "bcc/channel_io.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <set>

#include "bcc/error.hpp"

namespace bcc {
namespace {

using nlohmann::json;

std::string at(const std::string& base, const std::string& key) { return base + "/" + key; }
std::string at(const std::string& base, std::size_t i) { return base + "/" + std::to_string(i); }

const json& member(const json& obj, const std::string& key, const std::string& loc) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(loc, "missing key \"" + key + "\"");
  return *it;
}

std::size_t size_value(const json& v, const std::string& loc) {
  if (!v.is_number_unsigned() || v.get<std::uint64_t>() == 0) {
    throw ParseError(loc, "expected a positive integer");
  }
  return v.get<std::size_t>();
}

std::int64_t parse_int(std::string_view s, const std::string& loc) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(loc, "bad integer \"" + std::string(s) + "\" in fraction");
  }
  return v;
}

double probability(const json& v, const std::string& loc) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    const auto slash = s.find('/');
    if (slash == std::string::npos) throw ParseError(loc, "expected a number or \"p/q\"");
    const std::int64_t p = parse_int(std::string_view(s).substr(0, slash), loc);
    const std::int64_t q = parse_int(std::string_view(s).substr(slash + 1), loc);
    if (q <= 0) throw ParseError(loc, "fraction denominator must be positive");
    return static_cast<double>(p) / static_cast<double>(q);
  }
  throw ParseError(loc, "expected a number or \"p/q\"");
}

std::vector<std::string> labels(const json& doc, const char* key, std::size_t size) {
  auto lit = doc.find("labels");
  if (lit == doc.end()) return {};
  if (!lit->is_object()) throw ParseError("/labels", "expected an object");
  auto it = lit->find(key);
  if (it == lit->end()) return {};
  const std::string loc = at("/labels", key);
  if (!it->is_array() || it->size() != size) {
    throw ParseError(loc, "expected " + std::to_string(size) + " labels");
  }
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < it->size(); ++i) {
    const json& l = (*it)[i];
    if (!l.is_string()) throw ParseError(at(loc, i), "label must be a string");
    if (!seen.insert(l.get<std::string>()).second) {
      throw ParseError(at(loc, i), "duplicate label \"" + l.get<std::string>() + "\"");
    }
    out.push_back(l.get<std::string>());
  }
  return out;
}

std::size_t symbol(const json& v, std::size_t size, const std::vector<std::string>& names,
                   const std::string& loc) {
  if (v.is_number_unsigned()) {
    const std::size_t i = v.get<std::size_t>();
    if (i >= size) throw ParseError(loc, "index " + std::to_string(i) + " out of range");
    return i;
  }
  if (v.is_string()) {
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i] == v.get<std::string>()) return i;
    }
    throw ParseError(loc, "unknown label \"" + v.get<std::string>() + "\"");
  }
  throw ParseError(loc, "expected an index or a label");
}

}  // namespace

DeterministicChannel ChannelFile::as_deterministic() const {
  if (deterministic) return *deterministic;
  return to_deterministic(table);
}

ChannelFile parse_channel(const json& doc, double tolerance) {
  if (!doc.is_object()) throw ParseError("", "channel document must be an object");
  const json& format = member(doc, "format", "");
  if (format != "bcc-channel") throw ParseError("/format", "expected \"bcc-channel\"");
  const json& version = member(doc, "format_version", "");
  if (!version.is_number_integer() || version.get<int>() != kChannelFormatVersion) {
    throw ParseError("/format_version", "unsupported version, expected " +
                                            std::to_string(kChannelFormatVersion));
  }
  const json& sizes = member(doc, "sizes", "");
  if (!sizes.is_object()) throw ParseError("/sizes", "expected an object");
  const std::size_t nx = size_value(member(sizes, "x", "/sizes"), "/sizes/x");
  const std::size_t n1 = size_value(member(sizes, "y1", "/sizes"), "/sizes/y1");
  const std::size_t n2 = size_value(member(sizes, "y2", "/sizes"), "/sizes/y2");

  ChannelFile file;
  file.x_labels = labels(doc, "x", nx);
  file.y1_labels = labels(doc, "y1", n1);
  file.y2_labels = labels(doc, "y2", n2);

  const json& kind = member(doc, "kind", "");
  if (kind == "dense") {
    file.kind = ChannelFile::Kind::kDense;
    const json& probs = member(doc, "probs", "");
    if (!probs.is_array() || probs.size() != nx) {
      throw ParseError("/probs", "expected " + std::to_string(nx) + " rows");
    }
    std::vector<double> flat;
    flat.reserve(nx * n1 * n2);
    for (std::size_t x = 0; x < nx; ++x) {
      const json& row = probs[x];
      const std::string lx = at("/probs", x);
      if (!row.is_array() || row.size() != n1) {
        throw ParseError(lx, "expected " + std::to_string(n1) + " entries");
      }
      for (std::size_t y1 = 0; y1 < n1; ++y1) {
        const json& cell = row[y1];
        const std::string l1 = at(lx, y1);
        if (!cell.is_array() || cell.size() != n2) {
          throw ParseError(l1, "expected " + std::to_string(n2) + " entries");
        }
        for (std::size_t y2 = 0; y2 < n2; ++y2) flat.push_back(probability(cell[y2], at(l1, y2)));
      }
    }
    file.table = validate_channel(std::move(flat), {nx, n1, n2}, tolerance);
  } else if (kind == "deterministic") {
    file.kind = ChannelFile::Kind::kDeterministic;
    const json& pairs = member(doc, "pairs", "");
    if (!pairs.is_array() || pairs.size() != nx) {
      throw ParseError("/pairs", "expected " + std::to_string(nx) + " pairs");
    }
    std::vector<DeterministicChannel::Pair> out;
    for (std::size_t x = 0; x < nx; ++x) {
      const std::string lx = at("/pairs", x);
      const json& p = pairs[x];
      if (!p.is_array() || p.size() != 2) throw ParseError(lx, "expected [y1, y2]");
      out.emplace_back(symbol(p[0], n1, file.y1_labels, at(lx, 0)),
                       symbol(p[1], n2, file.y2_labels, at(lx, 1)));
    }
    file.deterministic = DeterministicChannel(n1, n2, std::move(out));
    file.table = to_table(*file.deterministic);
  } else {
    throw ParseError("/kind", "expected \"dense\" or \"deterministic\"");
  }
  return file;
}

ChannelFile load_channel(const std::filesystem::path& path, double tolerance) {
  const auto resolved = resolve_path(path);
  std::ifstream in(resolved);
  if (!in) throw ParseError(resolved.string(), "cannot open file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(resolved.string(), e.what());
  }
  return parse_channel(doc, tolerance);
}

json channel_to_json(const ChannelFile& file) {
  const ChannelTable& w = file.table;
  json doc;
  doc["format"] = "bcc-channel";
  doc["format_version"] = kChannelFormatVersion;
  doc["sizes"] = {{"x", w.input_size()}, {"y1", w.out1_size()}, {"y2", w.out2_size()}};
  json lab = json::object();
  if (!file.x_labels.empty()) lab["x"] = file.x_labels;
  if (!file.y1_labels.empty()) lab["y1"] = file.y1_labels;
  if (!file.y2_labels.empty()) lab["y2"] = file.y2_labels;
  if (!lab.empty()) doc["labels"] = lab;
  if (file.kind == ChannelFile::Kind::kDeterministic && file.deterministic) {
    doc["kind"] = "deterministic";
    json pairs = json::array();
    for (const auto& [y1, y2] : file.deterministic->pairs()) pairs.push_back({y1, y2});
    doc["pairs"] = pairs;
  } else {
    doc["kind"] = "dense";
    json probs = json::array();
    for (std::size_t x = 0; x < w.input_size(); ++x) {
      json row = json::array();
      for (std::size_t y1 = 0; y1 < w.out1_size(); ++y1) {
        json cell = json::array();
        for (std::size_t y2 = 0; y2 < w.out2_size(); ++y2) cell.push_back(w(x, y1, y2));
        row.push_back(cell);
      }
      probs.push_back(row);
    }
    doc["probs"] = probs;
  }
  return doc;
}

std::string canonical_channel_text(const ChannelFile& file) {
  return channel_to_json(file).dump(2) + "\n";
}

void save_channel(const std::filesystem::path& path, const ChannelFile& file) {
  const auto resolved = resolve_path(path);
  std::ofstream out(resolved);
  if (!out) throw Error("cannot write " + resolved.string());
  out << canonical_channel_text(file);
}

ChannelFile make_channel_file(const ChannelTable& w) {
  ChannelFile f;
  f.kind = ChannelFile::Kind::kDense;
  f.table = w;
  return f;
}

ChannelFile make_channel_file(const DeterministicChannel& w) {
  ChannelFile f;
  f.kind = ChannelFile::Kind::kDeterministic;
  f.deterministic = w;
  f.table = to_table(w);
  return f;
}

std::filesystem::path resolve_path(const std::filesystem::path& path) {
  if (path.is_absolute()) return path;
  const char* base = std::getenv("BCC_WORKDIR");
  if (base == nullptr || *base == '\0') return path;
  return std::filesystem::path(base) / path;
}

}  // namespace bcc
