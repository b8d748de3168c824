#pragma once

#include <map>
#include <string>
#include <vector>

#include "treecat/errors.hpp"
#include "treecat/numeric.hpp"

namespace treecat {

// dense univariate polynomial over Z, trimmed so c.back() != 0; empty = 0
struct IntPolynomial {
    std::vector<Int> c;

    IntPolynomial() = default;
    explicit IntPolynomial(Int constant);
    static IntPolynomial monomial(const Int& coeff, int power);

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    Int coefficient(int k) const;
    void trim();

    IntPolynomial operator+(const IntPolynomial& o) const;
    IntPolynomial operator-(const IntPolynomial& o) const;
    IntPolynomial operator*(const IntPolynomial& o) const;
    IntPolynomial operator-() const;
    IntPolynomial scaled(const Int& k) const;
    IntPolynomial shifted(int k) const;  // multiply by t^k
    IntPolynomial reversed(int top) const;  // t^top * p(1/t); requires top >= degree
    bool operator==(const IntPolynomial&) const = default;

    Int eval(const Int& x) const;
    std::string to_string(const std::string& var = "t") const;
};

struct MultiPoly {
    int nvars = 0;
    std::map<std::vector<int>, Rat> terms;  // exponents -> nonzero coefficient

    void add_term(const std::vector<int>& exps, const Rat& coeff);
    int total_degree() const;  // -1 for the zero polynomial
    std::vector<int> variable_degrees() const;
    Rat eval(const std::vector<Int>& x) const;
    bool operator==(const MultiPoly&) const = default;
    std::string to_string(const std::vector<std::string>& names) const;
};

// coefficient of t^n in numerator/denominator; denominator(0) must be a unit
Int series_coefficient(const IntPolynomial& numerator, const IntPolynomial& denominator,
                       long long n);

// exact integer samples over an inclusive box, row-major with the last axis fastest
struct GridSamples {
    std::vector<long long> lo, hi;
    std::vector<Int> values;

    int axes() const { return static_cast<int>(lo.size()); }
    long long axis_points(int a) const { return hi[a] - lo[a] + 1; }
    size_t total_points() const;
    size_t index(const std::vector<long long>& coord) const;
    const Int& at(const std::vector<long long>& coord) const { return values[index(coord)]; }
    void validate() const;
};

struct FitResult {
    bool stable = false;
    MultiPoly poly;
    std::vector<int> variable_degrees;
    int total_degree = -1;
};

// Newton forward-difference interpolation on the top (degree+1)^r corner of the
// window; stable iff the fit reproduces the top (degree+1+margin)^r sub-window.
FitResult fit_polynomial(const GridSamples& samples, int degree, int margin = 2);

}  // namespace treecat
