#pragma once

#include <quadmath.h>

namespace qha {

// Minimal quad-precision complex arithmetic for the few series whose terms
// cancel beyond what double precision can absorb. Only the operations those
// series need are provided.
struct QC {
    __float128 re, im;
};
inline QC operator+(QC x, QC y) { return {x.re + y.re, x.im + y.im}; }
inline QC operator*(QC x, QC y) {
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
}
inline QC operator*(QC x, __float128 s) { return {x.re * s, x.im * s}; }
inline __float128 qnorm(QC x) { return x.re * x.re + x.im * x.im; }

}  // namespace qha
