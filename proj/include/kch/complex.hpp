#pragma once

#include <cmath>
#include <complex>

namespace kch {

using Cplx = std::complex<double>;

/// Integer exponent power of a complex number, by squaring.
inline Cplx cpow_int(Cplx base, long e) {
    if (e == 0) return Cplx(1.0, 0.0);
    bool neg = e < 0;
    unsigned long k = neg ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    Cplx acc(1.0, 0.0);
    Cplx b = base;
    while (k) {
        if (k & 1) acc *= b;
        b *= b;
        k >>= 1;
    }
    return neg ? Cplx(1.0, 0.0) / acc : acc;
}

} // namespace kch
