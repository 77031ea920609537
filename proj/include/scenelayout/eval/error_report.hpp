#pragma once

// Thresholded violation counts for a layout.

#include <json.hpp>

#include "scenelayout/geometry.hpp"
#include "scenelayout/loss.hpp"

namespace scenelayout::eval {

struct ErrorReportOptions {
    double tau = 0.01;
    // Categories folded into all_count besides bound and overlap.
    bool count_standing = true;
    bool count_mounted = true;
    LossOptions loss;
};

struct ErrorReport {
    int bound_count = 0;     // objects with protrusion > tau
    int overlap_count = 0;   // pairs with mean intersection extent > tau
    int standing_count = 0;  // standing objects whose support gap > tau
    int mounted_count = 0;   // wall-mounted objects whose wall gap > tau
    int all_count = 0;

    friend bool operator==(const ErrorReport&, const ErrorReport&) = default;
};

ErrorReport error_report(const Layout& layout, const ErrorReportOptions& options = {});
ErrorReport error_report(const Layout& layout, double tau);

// Per-object flag: the object takes part in at least one counted violation.
std::vector<bool> violating_objects(const Layout& layout, const ErrorReportOptions& options = {});

nlohmann::json to_json(const ErrorReport& report);

}  // namespace scenelayout::eval
