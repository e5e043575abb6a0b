#pragma once

#include "tetra/scalars.hpp"

#include "json.hpp"

#include <chrono>
#include <functional>
#include <string>
#include <vector>

namespace tetra {

using Json = nlohmann::ordered_json;

struct CaseResult {
    std::string name;
    std::string status = "pass";  // pass, fail, skipped
    std::string residual = "0";
    Json diagnostics = Json::object();
    double time_ms = 0;
};

struct Report {
    std::string suite;
    Json config = Json::object();
    std::vector<CaseResult> cases;

    bool passed() const {
        for (auto& c : cases)
            if (c.status == "fail") return false;
        return true;
    }

    const CaseResult* find(const std::string& name) const {
        for (auto& c : cases)
            if (c.name == name) return &c;
        return nullptr;
    }

    Json to_json() const {
        Json j;
        j["suite"] = suite;
        j["config"] = config;
        j["status"] = passed() ? "pass" : "fail";
        j["cases"] = Json::array();
        for (auto& c : cases)
            j["cases"].push_back({{"name", c.name},
                                  {"status", c.status},
                                  {"residual", c.residual},
                                  {"diagnostics", c.diagnostics},
                                  {"time_ms", c.time_ms}});
        return j;
    }
};

// Run fn, time it and append the result under the given name.
inline CaseResult& run_case(Report& rep, const std::string& name, const std::function<void(CaseResult&)>& fn) {
    CaseResult c;
    c.name = name;
    auto t0 = std::chrono::steady_clock::now();
    fn(c);
    c.time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    rep.cases.push_back(std::move(c));
    return rep.cases.back();
}

inline std::string residual_str(const Real& r) { return r == 0 ? std::string("0") : real_str(r, 6); }

}  // namespace tetra
