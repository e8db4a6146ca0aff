#pragma once

#include <optional>
#include <string>
#include <vector>

#include "biharm/types.hpp"

namespace biharm {

struct SourceError {
    std::size_t matched_truth = 0;  // index into the ground-truth configuration
    double position_error = 0.0;
    double strength_error = 0.0;  // |tau_hat - tau|
};

/// Output of every inversion driver.
struct ReconstructionReport {
    std::size_t estimated_count = 0;
    std::vector<Point> positions;
    std::vector<Complex> strengths;
    /// Present iff ground truth was supplied (see attach_errors).
    std::optional<std::vector<SourceError>> errors;
    std::vector<std::string> warnings;
    double runtime_seconds = 0.0;
};

/// Matches each estimate to its nearest true source and records the errors.
/// The matching rule is for error reporting only.
void attach_errors(ReconstructionReport& report, const SourceConfig& truth);

}  // namespace biharm
