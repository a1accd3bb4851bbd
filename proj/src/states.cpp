#include "coinflip/states.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace coinflip {

ProtocolParams ProtocolParams::checked(int n, double theta) {
    if (n < 1) throw SizingError("need n >= 1");
    if (n > max_register_qubits())
        throw SizingError("n = " + std::to_string(n) + " exceeds register cap " +
                          std::to_string(max_register_qubits()));
    if (!(theta > 0.0 && theta < std::numbers::pi / 2))
        throw UsageError("theta must lie strictly inside (0, pi/2), got " + std::to_string(theta));
    return {n, theta};
}

Vec qubit_state(double theta, int basis, int outcome) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    if (basis == 0) return outcome == 0 ? Vec{c, s} : Vec{-s, c};
    return outcome == 0 ? Vec{c, -s} : Vec{s, c};
}

Vec prep_state(int n, double theta, PreparationLabel label) {
    Vec v{1.0};
    for (int i = 0; i < n; ++i)
        v = kron_vec(v, qubit_state(theta, bit_at(label.basis, i, n), bit_at(label.outcome, i, n)));
    return v;
}

double unit_step(double x, AtZero at_zero) {
    if (x > 0.0) return 1.0;
    if (x < 0.0) return 0.0;
    return at_zero == AtZero::One ? 1.0 : 0.0;
}

double deg2rad(double deg) { return deg * std::numbers::pi / 180.0; }
double rad2deg(double rad) { return rad * 180.0 / std::numbers::pi; }

}  // namespace coinflip
