#pragma once

#include <optional>
#include <string>

#include "deblur/cg.hpp"
#include "deblur/direct.hpp"
#include "deblur/image.hpp"

namespace deblur {

/// frobenius_norm(restored - truth) / frobenius_norm(truth).
/// Throws std::invalid_argument on shape mismatch or zero truth.
double relative_error(const Image& restored, const Image& truth);

/// Everything one restoration run reports. `parameter` is mu for the direct
/// methods and the iteration count for CG.
struct DeblurReport {
    std::string method;                    // pseudo-inverse | tikhonov | cg
    std::string criterion;                 // selection rule or stopping rule tag
    double parameter = 0.0;
    std::optional<double> relative_error;  // present when ground truth known
    double residual_norm = 0.0;
    double wall_time = 0.0;                // seconds
    std::optional<MuSelection> selection;
    std::optional<CgTrace> trace;
};

}  // namespace deblur
