#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace glhat {

// Outcome of one verification check. `checked` counts identity instances;
// the first counterexample, if any, is kept as structured data.
struct Report {
    std::string check;
    nlohmann::json params = nlohmann::json::object();
    bool pass = true;
    long checked = 0;
    std::optional<nlohmann::json> counterexample;
    std::vector<std::string> notes;

    void count() { ++checked; }
    void fail(nlohmann::json cx) {
        if (pass) counterexample = std::move(cx);
        pass = false;
    }
    void merge(const Report& o) {
        checked += o.checked;
        if (!o.pass && pass) counterexample = o.counterexample;
        pass = pass && o.pass;
        notes.insert(notes.end(), o.notes.begin(), o.notes.end());
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["check"] = check;
        j["params"] = params;
        j["result"] = pass ? "pass" : "fail";
        j["checked"] = checked;
        if (counterexample) j["counterexample"] = *counterexample;
        if (!notes.empty()) j["notes"] = notes;
        return j;
    }
};

}  // namespace glhat
