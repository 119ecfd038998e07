#include "droplab/io_util.hpp"

#include <cstdio>

namespace droplab {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace droplab
