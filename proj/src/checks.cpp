#include "treeprod/checks.hpp"

namespace treeprod {

std::string to_string(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::inconclusive: return "inconclusive";
        case Status::expected_fail: return "expected-fail";
    }
    return "?";
}

Status CheckResult::status() const {
    if (negative_control) return violations ? Status::expected_fail : Status::fail;
    if (violations) return Status::fail;
    if (checked == 0 && inconclusive > 0) return Status::inconclusive;
    return Status::pass;
}

}  // namespace treeprod
