#include "deblur/phantom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace deblur {

namespace {

constexpr double tau = 2.0 * std::numbers::pi;

bool in_disk(double u, double v, double cu, double cv, double r) {
    double du = u - cu, dv = v - cv;
    return du * du + dv * dv <= r * r;
}

bool in_box(double u, double v, double u0, double u1, double v0, double v1) {
    return u >= u0 && u <= u1 && v >= v0 && v <= v1;
}

}  // namespace

Image make_phantom(int rows, int cols) {
    Image img(rows, cols);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            // Normalized coordinates, resolution-independent scene layout.
            double u = (r + 0.5) / rows;
            double v = (c + 0.5) / cols;

            double val = 60.0 + 80.0 * u + 40.0 * v;  // illumination gradient

            if (in_disk(u, v, 0.32, 0.28, 0.18)) val += 70.0;
            if (in_disk(u, v, 0.62, 0.60, 0.24)) val -= 45.0;
            if (in_disk(u, v, 0.70, 0.74, 0.10)) val += 95.0;

            // ring
            {
                double du = u - 0.35, dv = v - 0.72;
                double d = std::sqrt(du * du + dv * dv);
                if (d >= 0.10 && d <= 0.145) val += 80.0;
            }

            if (in_box(u, v, 0.78, 0.84, 0.08, 0.46)) val += 75.0;
            if (in_box(u, v, 0.70, 0.95, 0.52, 0.56)) val -= 40.0;

            // small bright squares of decreasing size (resolution targets)
            if (in_box(u, v, 0.10, 0.18, 0.55, 0.63)) val += 60.0;
            if (in_box(u, v, 0.10, 0.15, 0.70, 0.75)) val += 60.0;
            if (in_box(u, v, 0.10, 0.13, 0.82, 0.85)) val += 60.0;

            // mild global texture
            val += 9.0 * std::sin(tau * 12.0 * u + 0.7) * std::cos(tau * 10.0 * v + 0.3);

            img(r, c) = std::clamp(val, 0.0, 255.0);
        }
    }
    return img;
}

}  // namespace deblur
