#include "probball/io.hpp"

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "probball/errors.hpp"

namespace probball::io {

using nlohmann::json;

namespace {

json parse_document(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // Translate the byte offset into a line number for the diagnostic.
    std::size_t line = 1;
    const std::size_t limit = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < limit; ++i) {
      if (text[i] == '\n') ++line;
    }
    throw InstanceError("malformed JSON at line " + std::to_string(line) + ": " + e.what());
  }
}

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw InstanceError(path + ": " + what);
}

const json& field(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(path, std::string("missing field '") + key + "'");
  return *it;
}

Eigen::Index read_dim(const json& doc) {
  const json& d = field(doc, "d", "$");
  if (!d.is_number_integer() || d.get<long long>() < 1) fail("$.d", "expected a positive integer");
  return static_cast<Eigen::Index>(d.get<long long>());
}

Point read_point(const json& value, Eigen::Index dim, const std::string& path) {
  if (!value.is_array()) fail(path, "expected an array of " + std::to_string(dim) + " numbers");
  if (static_cast<Eigen::Index>(value.size()) != dim) {
    fail(path, "expected " + std::to_string(dim) + " coordinates, got " + std::to_string(value.size()));
  }
  Point p(dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    const json& x = value[static_cast<std::size_t>(k)];
    if (!x.is_number()) fail(path + "[" + std::to_string(k) + "]", "expected a number");
    p[k] = x.get<double>();
  }
  return p;
}

}  // namespace

InstanceKind detect_kind(std::string_view json_text) {
  const json doc = parse_document(json_text);
  if (!doc.is_object()) fail("$", "expected an object");
  if (doc.contains("sets")) return InstanceKind::kSetFamily;
  if (doc.contains("distributions")) return InstanceKind::kProbabilistic;
  fail("$", "expected a 'sets' or 'distributions' field");
}

SetFamily parse_set_family(std::string_view json_text) {
  const json doc = parse_document(json_text);
  const Eigen::Index dim = read_dim(doc);
  const json& sets = field(doc, "sets", "$");
  if (!sets.is_array() || sets.empty()) fail("$.sets", "expected a non-empty array of sets");
  std::vector<PointSet> family;
  family.reserve(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const std::string path = "$.sets[" + std::to_string(i) + "]";
    const json& set = sets[i];
    if (!set.is_array() || set.empty()) fail(path, "expected a non-empty array of points");
    Eigen::MatrixXd cols(dim, static_cast<Eigen::Index>(set.size()));
    for (std::size_t j = 0; j < set.size(); ++j) {
      cols.col(static_cast<Eigen::Index>(j)) =
          read_point(set[j], dim, path + "[" + std::to_string(j) + "]");
    }
    try {
      family.emplace_back(std::move(cols));
    } catch (const InstanceError& e) {
      fail(path, e.what());
    }
  }
  return SetFamily(std::move(family));
}

ProbInstance parse_prob_instance(std::string_view json_text) {
  const json doc = parse_document(json_text);
  const Eigen::Index dim = read_dim(doc);
  const json& dists = field(doc, "distributions", "$");
  if (!dists.is_array() || dists.empty()) {
    fail("$.distributions", "expected a non-empty array of distributions");
  }
  std::vector<DiscreteDistribution> out;
  out.reserve(dists.size());
  for (std::size_t i = 0; i < dists.size(); ++i) {
    const std::string path = "$.distributions[" + std::to_string(i) + "]";
    const json& entries = field(dists[i], "entries", path);
    if (!entries.is_array() || entries.empty()) fail(path + ".entries", "expected a non-empty array");
    std::vector<Entry> parsed;
    for (std::size_t j = 0; j < entries.size(); ++j) {
      const std::string epath = path + ".entries[" + std::to_string(j) + "]";
      const json& loc = field(entries[j], "loc", epath);
      const json& p = field(entries[j], "p", epath);
      if (!p.is_number()) fail(epath + ".p", "expected a number");
      Entry e;
      e.prob = p.get<double>();
      if (!loc.is_null()) e.location = read_point(loc, dim, epath + ".loc");
      parsed.push_back(std::move(e));
    }
    try {
      out.emplace_back(std::move(parsed));
    } catch (const InstanceError& e) {
      fail(path, e.what());
    }
  }
  return ProbInstance(std::move(out), dim);
}

namespace {

json point_json(PointRef p) {
  json arr = json::array();
  for (Eigen::Index k = 0; k < p.size(); ++k) arr.push_back(p[k]);
  return arr;
}

}  // namespace

std::string to_json_text(const SetFamily& family) {
  json sets = json::array();
  for (const auto& set : family) {
    json pts = json::array();
    for (std::size_t j = 0; j < set.size(); ++j) pts.push_back(point_json(set.point(j)));
    sets.push_back(std::move(pts));
  }
  return json{{"d", family.dim()}, {"sets", std::move(sets)}}.dump();
}

std::string to_json_text(const ProbInstance& instance) {
  json dists = json::array();
  for (const auto& dist : instance) {
    json entries = json::array();
    for (const auto& e : dist.entries()) {
      entries.push_back({{"loc", e.location ? point_json(*e.location) : json(nullptr)}, {"p", e.prob}});
    }
    dists.push_back({{"entries", std::move(entries)}});
  }
  return json{{"d", instance.dim()}, {"distributions", std::move(dists)}}.dump();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InstanceError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace probball::io
