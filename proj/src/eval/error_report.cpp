#include "scenelayout/eval/error_report.hpp"

#include <stdexcept>

namespace scenelayout::eval {

namespace {

struct Flags {
    ErrorReport report;
    std::vector<bool> objects;
};

Flags evaluate_flags(const Layout& layout, const ErrorReportOptions& options) {
    if (!(options.tau >= 0.0)) throw std::invalid_argument("tau must be non-negative");
    const LossBreakdown b = loss_breakdown(layout, options.loss);
    const double tau = options.tau;
    Flags f;
    f.objects.assign(layout.placements.size(), false);
    for (std::size_t i = 0; i < b.protrusion.size(); ++i) {
        if (b.protrusion[i] > tau) {
            ++f.report.bound_count;
            f.objects[i] = true;
        }
    }
    for (const auto& p : b.overlaps) {
        if (p.mean_extent > tau) {
            ++f.report.overlap_count;
            f.objects[p.first] = f.objects[p.second] = true;
        }
    }
    for (std::size_t i = 0; i < b.standing_gap.size(); ++i) {
        if (b.standing_gap[i] > tau) {
            ++f.report.standing_count;
            if (options.count_standing) f.objects[i] = true;
        }
        if (b.mounted_gap[i] > tau) {
            ++f.report.mounted_count;
            if (options.count_mounted) f.objects[i] = true;
        }
    }
    f.report.all_count = f.report.bound_count + f.report.overlap_count +
                         (options.count_standing ? f.report.standing_count : 0) +
                         (options.count_mounted ? f.report.mounted_count : 0);
    return f;
}

}  // namespace

ErrorReport error_report(const Layout& layout, const ErrorReportOptions& options) {
    return evaluate_flags(layout, options).report;
}

ErrorReport error_report(const Layout& layout, double tau) {
    ErrorReportOptions options;
    options.tau = tau;
    return error_report(layout, options);
}

std::vector<bool> violating_objects(const Layout& layout, const ErrorReportOptions& options) {
    return evaluate_flags(layout, options).objects;
}

nlohmann::json to_json(const ErrorReport& r) {
    return {{"all", r.all_count},
            {"bound", r.bound_count},
            {"ovl", r.overlap_count},
            {"standing", r.standing_count},
            {"mounted", r.mounted_count}};
}

}  // namespace scenelayout::eval
