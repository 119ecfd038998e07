#pragma once

#include <string>

namespace droplab {

// Full-precision decimal (17 significant digits), locale-independent.
std::string fmt17(double v);

}  // namespace droplab
