#pragma once

#include <cstdint>
#include <string>
#include <utility>

namespace treeprod {

enum class Status { pass, fail, inconclusive, expected_fail };

std::string to_string(Status s);

// Outcome of one exhaustive or sampled property check.
struct CheckResult {
    CheckResult() = default;
    explicit CheckResult(std::string name) : id(std::move(name)) {}

    std::string id;
    std::uint64_t checked = 0;
    std::uint64_t violations = 0;
    std::uint64_t inconclusive = 0;
    std::string first_violation;
    bool negative_control = false;

    void record(bool ok, const std::string& what) {
        ++checked;
        if (!ok) {
            if (violations == 0) first_violation = what;
            ++violations;
        }
    }
    // Builds the description only for the first violation.
    template <class Describe>
    void record_with(bool ok, Describe&& describe) {
        ++checked;
        if (!ok) {
            if (violations == 0) first_violation = describe();
            ++violations;
        }
    }
    void merge(const CheckResult& other) {
        checked += other.checked;
        inconclusive += other.inconclusive;
        if (violations == 0 && other.violations) first_violation = other.first_violation;
        violations += other.violations;
    }
    bool ok() const { return violations == 0; }
    Status status() const;
};

}  // namespace treeprod
