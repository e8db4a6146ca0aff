#include "biharm/report.hpp"

#include <cmath>
#include <limits>

namespace biharm {

void attach_errors(ReconstructionReport& report, const SourceConfig& truth)
{
    std::vector<SourceError> errors;
    errors.reserve(report.positions.size());
    for (std::size_t i = 0; i < report.positions.size(); ++i) {
        SourceError e;
        e.position_error = std::numeric_limits<double>::infinity();
        for (std::size_t m = 0; m < truth.size(); ++m) {
            const double d = distance(report.positions[i], truth[m].position);
            if (d < e.position_error) {
                e.position_error = d;
                e.matched_truth = m;
            }
        }
        if (!truth.empty() && i < report.strengths.size()) {
            e.strength_error = std::abs(report.strengths[i] - truth[e.matched_truth].strength);
        }
        errors.push_back(e);
    }
    report.errors = std::move(errors);
}

}  // namespace biharm
