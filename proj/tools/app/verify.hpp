#pragma once

#include <string>
#include <vector>

namespace biharm::app {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Property suite: phaseless f/g signs, the three-frequency exponential
/// identity, PDE residual convergence (3D and 2D), the I2 closed form and the
/// circle counts. Fixed seeds, so repeated runs give identical results.
std::vector<CheckResult> run_verify();

/// One line per check plus a closing "N/M checks passed" line.
std::string format_verify(const std::vector<CheckResult>& results);

}  // namespace biharm::app
