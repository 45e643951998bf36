#include "zlrr/bigint.hpp"

#include <cmath>

namespace zlrr {

double log_int(const Int& v) {
    signed long exp = 0;
    double mantissa = mpz_get_d_2exp(&exp, v.get_mpz_t());
    return std::log(mantissa) + static_cast<double>(exp) * std::log(2.0);
}

}  // namespace zlrr
