#pragma once

#include <functional>

namespace dhc {

// Problem data enter the library as black-box evaluable functions.
// An empty std::function is treated as identically zero wherever a zero
// default makes sense (forcing, history, boundaries); an empty target means
// "no target state supplied".
using SpaceFn = std::function<double(double)>;        // g(x)
using TimeFn = std::function<double(double)>;         // g(t)
using SpaceTimeFn = std::function<double(double, double)>;  // g(x, t)

}  // namespace dhc
