#include "deblur/metrics.hpp"

#include <stdexcept>

namespace deblur {

double relative_error(const Image& restored, const Image& truth) {
    if (!restored.same_shape(truth))
        throw std::invalid_argument("relative_error: shape mismatch");
    double truth_norm = frobenius_norm(truth);
    if (truth_norm == 0.0)
        throw std::invalid_argument("relative_error: true image is identically zero");
    return frobenius_norm(subtract(restored, truth)) / truth_norm;
}

}  // namespace deblur
