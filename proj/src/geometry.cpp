#include "ghacpp/geometry.hpp"

#include <stdexcept>

namespace ghacpp {

int dir8_from_delta(int dx, int dy) {
    for (int d = 0; d < 8; ++d) {
        if (kDir8DX[d] == dx && kDir8DY[d] == dy) return d;
    }
    throw std::invalid_argument("dir8_from_delta: delta is not a unit 8-neighbour step");
}

double wrap_angle(double a) {
    double w = std::fmod(a, 2.0 * kPi);
    if (w < 0.0) w += 2.0 * kPi;
    return w;
}

double quantize_heading(double heading) {
    double step = kPi / 4.0;
    double k = std::round(wrap_angle(heading) / step);
    return wrap_angle(k * step);
}

double heading_diff(double a, double b) {
    double d = std::fabs(wrap_angle(a) - wrap_angle(b));
    if (d > kPi) d = 2.0 * kPi - d;
    return d;
}

} // namespace ghacpp
