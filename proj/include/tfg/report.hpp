#ifndef TFG_REPORT_HPP
#define TFG_REPORT_HPP

#include <json.hpp>

#include <chrono>
#include <string>
#include <vector>

#include "tfg/circle_set.hpp"
#include "tfg/odometer.hpp"
#include "tfg/rotation_group.hpp"

namespace tfg {

using Json = nlohmann::json;

enum class Status { Verified, Refuted, Inconclusive, Error };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::Verified: return "VERIFIED";
    case Status::Refuted: return "REFUTED";
    case Status::Inconclusive: return "INCONCLUSIVE";
    default: return "ERROR";
  }
}

inline int status_exit_code(Status s) {
  switch (s) {
    case Status::Verified: return 0;
    case Status::Refuted:
    case Status::Inconclusive: return 1;
    default: return 2;
  }
}

inline Json to_json(const ClopenSet& s) {
  Json arr = Json::array();
  for (const auto& a : s.arcs()) arr.push_back({a.lo.str(), a.hi.str()});
  return arr;
}

inline Json to_json(const RotElement& g) {
  Json arr = Json::array();
  for (const auto& p : g.pieces())
    arr.push_back({{p.arc.lo.str(), p.arc.hi.str()}, p.jump.str()});
  return arr;
}

inline Json to_json(const OdoElement& g) {
  Json j;
  j["level"] = g.level();
  j["cocycle"] = g.cocycle();
  return j;
}

struct Instance {
  std::string name;
  bool ok = true;
  std::string expected, got, note;
  Json expected_json, got_json;  // structured forms, filled on failure

  Json to_json() const {
    Json j;
    j["name"] = name;
    j["status"] = ok ? "pass" : "fail";
    if (!expected.empty()) j["expected"] = expected;
    if (!got.empty()) j["got"] = got;
    if (!note.empty()) j["note"] = note;
    return j;
  }
};

// Instance comparing two full-group elements canonically; a failure
// carries both sides as (arc, cocycle) lists.
inline Instance element_check(std::string name, const RotElement& expected,
                              const RotElement& got, std::string note = "") {
  Instance i{std::move(name), expected == got,
             expected.str(),  got.str(),
             std::move(note), Json(),
             Json()};
  if (!i.ok) {
    i.expected_json = to_json(expected);
    i.got_json = to_json(got);
  }
  return i;
}

// One claim's verification run: the instance list plus an overall verdict.
// VERIFIED means every instance passed; a refutation always carries the
// failing instances as serialized witnesses.
struct Report {
  std::string claim;
  std::string statement;
  Json config = Json::object();
  Json details = Json::object();
  std::vector<Instance> instances;
  Json witnesses = Json::array();
  Status status = Status::Verified;
  std::string note;

  void add(Instance inst) {
    if (!inst.ok) {
      Json w;
      w["instance"] = inst.name;
      w["expected"] = inst.expected;
      w["got"] = inst.got;
      if (!inst.expected_json.is_null()) w["expected_element"] = inst.expected_json;
      if (!inst.got_json.is_null()) w["got_element"] = inst.got_json;
      if (!inst.note.empty()) w["note"] = inst.note;
      witnesses.push_back(w);
    }
    instances.push_back(std::move(inst));
  }

  void add_check(const std::string& name, bool ok, const std::string& expected,
                 const std::string& got, const std::string& note = "") {
    add(Instance{name, ok, expected, got, note});
  }

  // Overall verdict; Error and Inconclusive set explicitly stay sticky.
  void finalize() {
    if (status != Status::Verified) return;
    for (const auto& i : instances)
      if (!i.ok) {
        status = Status::Refuted;
        return;
      }
  }

  int exit_code() const { return status_exit_code(status); }

  Json to_json(bool deterministic) const {
    Json j;
    j["claim"] = claim;
    j["statement"] = statement;
    j["config"] = config;
    if (!details.empty()) j["details"] = details;
    Json arr = Json::array();
    for (const auto& i : instances) arr.push_back(i.to_json());
    j["instances"] = arr;
    j["instance_count"] = instances.size();
    j["witnesses"] = witnesses;
    j["status"] = status_name(status);
    if (!note.empty()) j["note"] = note;
    if (!deterministic) {
      auto now = std::chrono::system_clock::now().time_since_epoch();
      j["timestamp_ms"] =
          std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
    }
    return j;
  }
};

}  // namespace tfg

#endif
