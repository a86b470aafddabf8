#include "densewlan/units.hpp"

#include <cmath>

namespace dw {

double db_to_linear(Decibel x) { return std::pow(10.0, x.value / 10.0); }

Decibel linear_to_db(double x) { return {10.0 * std::log10(x)}; }

} // namespace dw
