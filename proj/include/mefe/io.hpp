#ifndef MEFE_IO_HPP
#define MEFE_IO_HPP

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "mefe/error.hpp"
#include "mefe/instance.hpp"
#include "mefe/rational.hpp"
#include "mefe/verify.hpp"

namespace mefe::io {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

inline Rational rational_from_json(const json& j) {
  try {
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  } catch (const std::invalid_argument& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
  throw Error(ErrorKind::Parse, "expected a rational string \"p/q\", got " + j.dump());
}

inline std::string rational_to_json(const Rational& r) { return r.pretty(); }

inline Value integer_from_json(const json& j, const char* what) {
  if (!j.is_number_integer()) throw Error(ErrorKind::Parse, std::string(what) + " must be an integer, got " + j.dump());
  return j.get<Value>();
}

inline const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::Parse, std::string("missing field '") + key + "'");
  return j.at(key);
}

inline Instance instance_from_json(const json& doc, Instance::Options options = {}) {
  InstanceBuilder b;
  const json& courses = require(doc, "courses");
  const json& tas = require(doc, "tas");
  if (!courses.is_array() || !tas.is_array()) throw Error(ErrorKind::Parse, "'courses' and 'tas' must be arrays");
  b.set_k(doc.contains("k") ? rational_from_json(doc.at("k")) : Rational(0));
  std::unordered_map<std::string, int> course_index;
  std::unordered_map<std::string, int> ta_index;
  for (const auto& c : courses) {
    const std::string id = require(c, "id").get<std::string>();
    const Value cap = integer_from_json(require(c, "capacity"), "capacity");
    if (cap < 1 || cap > 1'000'000) throw Error(ErrorKind::InvalidInstance, "course '" + id + "' has invalid capacity");
    course_index.emplace(id, b.add_course(id, static_cast<int>(cap)));
  }
  for (const auto& t : tas) {
    const std::string id = require(t, "id").get<std::string>();
    ta_index.emplace(id, b.add_ta(id));
  }
  auto lookup = [](const std::unordered_map<std::string, int>& index, const std::string& id, const char* side) {
    auto it = index.find(id);
    if (it == index.end()) throw Error(ErrorKind::Parse, std::string("unknown ") + side + " id '" + id + "'");
    return it->second;
  };
  for (const auto& c : courses) {
    const int x = lookup(course_index, c.at("id").get<std::string>(), "course");
    if (!c.contains("valuations")) continue;
    for (const auto& [tid, v] : c.at("valuations").items()) {
      b.set_value(x, lookup(ta_index, tid, "TA"), integer_from_json(v, "valuation"));
    }
  }
  for (const auto& t : tas) {
    const int ti = lookup(ta_index, t.at("id").get<std::string>(), "TA");
    if (t.contains("utilities")) {
      for (const auto& [cid, u] : t.at("utilities").items()) {
        b.set_utility(ti, lookup(course_index, cid, "course"), integer_from_json(u, "utility"));
      }
    }
    if (t.contains("grades")) {
      for (const auto& [cid, g] : t.at("grades").items()) {
        b.set_grade(ti, lookup(course_index, cid, "course"), rational_from_json(g));
      }
    }
  }
  return b.build(options);
}

inline ordered_json instance_to_json(const Instance& inst) {
  ordered_json doc;
  doc["k"] = rational_to_json(inst.k());
  doc["courses"] = ordered_json::array();
  for (int x = 0; x < inst.num_courses(); ++x) {
    ordered_json c;
    c["id"] = inst.course_id(x);
    c["capacity"] = inst.capacity(x);
    c["valuations"] = ordered_json::object();
    for (int t = 0; t < inst.num_tas(); ++t) {
      if (inst.value(x, t) != 0) c["valuations"][inst.ta_id(t)] = inst.value(x, t);
    }
    doc["courses"].push_back(std::move(c));
  }
  doc["tas"] = ordered_json::array();
  for (int t = 0; t < inst.num_tas(); ++t) {
    ordered_json a;
    a["id"] = inst.ta_id(t);
    a["utilities"] = ordered_json::object();
    a["grades"] = ordered_json::object();
    for (int x = 0; x < inst.num_courses(); ++x) {
      if (inst.utility(t, x) != 0) a["utilities"][inst.course_id(x)] = inst.utility(t, x);
      if (inst.grade(t, x) != Rational(0)) a["grades"][inst.course_id(x)] = rational_to_json(inst.grade(t, x));
    }
    doc["tas"].push_back(std::move(a));
  }
  return doc;
}

/// TAs missing from the assignment are unassigned; unknown ids are rejected.
inline Matching matching_from_json(const Instance& inst, const json& doc) {
  const json& assignment = require(doc, "assignment");
  if (!assignment.is_object()) throw Error(ErrorKind::Parse, "'assignment' must be an object");
  Matching mu(inst.num_tas());
  for (const auto& [tid, cid] : assignment.items()) {
    const auto t = inst.find_ta(tid);
    if (!t) throw Error(ErrorKind::InvalidMatching, "unknown TA id '" + tid + "'");
    if (cid.is_null()) continue;
    if (!cid.is_string()) throw Error(ErrorKind::Parse, "course id for '" + tid + "' must be a string or null");
    const auto x = inst.find_course(cid.get<std::string>());
    if (!x) throw Error(ErrorKind::InvalidMatching, "unknown course id '" + cid.get<std::string>() + "'");
    mu.assign(*t, *x);
  }
  return mu;
}

inline ordered_json matching_to_json(const Instance& inst, const Matching& mu) {
  ordered_json doc;
  doc["assignment"] = ordered_json::object();
  for (int t = 0; t < inst.num_tas(); ++t) {
    if (mu.assigned(t)) {
      doc["assignment"][inst.ta_id(t)] = inst.course_id(mu.course_of(t));
    } else {
      doc["assignment"][inst.ta_id(t)] = nullptr;
    }
  }
  return doc;
}

inline ordered_json report_to_json(const Instance& inst, const VerificationReport& r) {
  ordered_json doc;
  doc["feasible"] = r.feasible;
  doc["is_mefe"] = r.is_mefe;
  doc["avg_utils"] = ordered_json::object();
  for (int x = 0; x < inst.num_courses(); ++x) doc["avg_utils"][inst.course_id(x)] = rational_to_json(r.avg_utils[x]);
  doc["envy_pairs"] = ordered_json::array();
  for (const auto& [t, s] : r.envy_pairs) doc["envy_pairs"].push_back({inst.ta_id(t), inst.ta_id(s)});
  doc["violations"] = ordered_json::array();
  for (const auto& v : r.violations) {
    ordered_json item;
    item["kind"] = to_string(v.kind);
    if (v.course >= 0) item["course"] = inst.course_id(v.course);
    if (v.ta >= 0) item["ta"] = inst.ta_id(v.ta);
    if (v.other_ta >= 0) item["envied"] = inst.ta_id(v.other_ta);
    doc["violations"].push_back(std::move(item));
  }
  return doc;
}

inline json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_text(buffer.str());
}

}  // namespace mefe::io

#endif  // MEFE_IO_HPP
