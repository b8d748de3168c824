#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace treecat {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// binomial(n, k) with the convention that out-of-range arguments give 0
inline Int binomial(long long n, long long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    Int r = 1;
    for (long long j = 1; j <= k; ++j) {
        r *= (n - k + j);
        r /= j;
    }
    return r;
}

inline Int factorial(long long n) {
    Int r = 1;
    for (long long j = 2; j <= n; ++j) r *= j;
    return r;
}

inline Int ipow(Int base, long long e) {
    Int r = 1;
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

// number of monomials of given degree in `vars` variables
inline Int monomial_count(long long vars, long long degree) {
    if (degree < 0) return 0;
    if (degree == 0) return 1;
    if (vars == 0) return 0;
    return binomial(vars + degree - 1, degree);
}

}  // namespace treecat
