#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace chevsuper {

struct CaseResult {
    std::string id;
    bool ok = false;
    std::string detail;
};

/// Per-identity verification record: {suite, family, cases: [{id, status, detail}]}.
struct Report {
    std::string suite;
    std::string family;
    std::vector<CaseResult> cases;

    void add(std::string id, bool ok, std::string detail = {}) {
        cases.push_back({std::move(id), ok, std::move(detail)});
    }
    void append(const Report& other) {
        cases.insert(cases.end(), other.cases.begin(), other.cases.end());
    }
    bool passed() const {
        for (const auto& c : cases) {
            if (!c.ok) return false;
        }
        return true;
    }
    std::size_t failures() const {
        std::size_t n = 0;
        for (const auto& c : cases) n += c.ok ? 0 : 1;
        return n;
    }
    nlohmann::json to_json() const {
        auto arr = nlohmann::json::array();
        for (const auto& c : cases) {
            arr.push_back({{"id", c.id}, {"status", c.ok ? "pass" : "fail"}, {"detail", c.detail}});
        }
        return {{"suite", suite}, {"family", family}, {"cases", arr}};
    }
};

}  // namespace chevsuper
