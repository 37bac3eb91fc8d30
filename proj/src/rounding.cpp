#include "pcenter/rounding.hpp"

#include <stdexcept>

namespace pcenter {

int initial_alpha(Distance ub) {
    if (ub < 1) throw std::invalid_argument("initial_alpha needs a positive upper bound");
    int digits = 0;
    for (Distance v = ub; v > 0; v /= 10) ++digits;
    return digits - 1;
}

}  // namespace pcenter
