#pragma once

#include <algorithm>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sdg/harness/config.hpp"

namespace sdg::harness {

struct CaseRecord {
  std::string law;
  std::string anchor;
  std::size_t case_index = 0;
  bool passed = true;
  std::optional<nlohmann::json> counterexample;  // serialized inputs plus a failure detail
};

struct Report {
  std::string suite;
  std::string groupoid;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::vector<CaseRecord> cases;

  bool ok() const {
    return std::all_of(cases.begin(), cases.end(), [](const CaseRecord& c) { return c.passed; });
  }
};

/// {suite, groupoid, seed, trials, cases:[{law, anchor, case, status, counterexample?}], ok}
inline nlohmann::json to_json(const Report& r) {
  nlohmann::json cases = nlohmann::json::array();
  for (const auto& c : r.cases) {
    nlohmann::json j = {{"law", c.law}, {"anchor", c.anchor}, {"case", c.case_index},
                        {"status", c.passed ? "pass" : "fail"}};
    if (c.counterexample) j["counterexample"] = *c.counterexample;
    cases.push_back(std::move(j));
  }
  return {{"suite", r.suite}, {"groupoid", r.groupoid}, {"seed", r.seed},
          {"trials", r.trials}, {"cases", std::move(cases)}, {"ok", r.ok()}};
}

/// One line per law with its pass count; the first counterexample of each
/// failing law is printed below it.
inline std::string to_text(const Report& r) {
  struct Tally {
    std::string anchor;
    std::size_t passed = 0, total = 0;
    const CaseRecord* first_failure = nullptr;
  };
  std::vector<std::string> order;
  std::map<std::string, Tally> laws;
  for (const auto& c : r.cases) {
    auto [it, fresh] = laws.try_emplace(c.law);
    if (fresh) {
      order.push_back(c.law);
      it->second.anchor = c.anchor;
    }
    ++it->second.total;
    if (c.passed)
      ++it->second.passed;
    else if (!it->second.first_failure)
      it->second.first_failure = &c;
  }
  std::ostringstream os;
  os << "suite " << r.suite << "  groupoid " << r.groupoid << "  seed " << r.seed << "  trials " << r.trials << '\n';
  for (const auto& name : order) {
    const Tally& t = laws.at(name);
    os << (t.passed == t.total ? "PASS " : "FAIL ") << name << "  [" << t.anchor << "]  " << t.passed << '/'
       << t.total << '\n';
    if (t.first_failure)
      os << "     case " << t.first_failure->case_index << ": " << t.first_failure->counterexample->dump() << '\n';
  }
  os << (r.ok() ? "ok" : "FAILED") << '\n';
  return os.str();
}

}  // namespace sdg::harness
