#include "treecat/poly.hpp"

#include <algorithm>
#include <sstream>

namespace treecat {

IntPolynomial::IntPolynomial(Int constant) {
    if (constant != 0) c.push_back(std::move(constant));
}

IntPolynomial IntPolynomial::monomial(const Int& coeff, int power) {
    IntPolynomial p;
    if (coeff == 0) return p;
    p.c.assign(power + 1, Int(0));
    p.c[power] = coeff;
    return p;
}

Int IntPolynomial::coefficient(int k) const {
    if (k < 0 || k >= static_cast<int>(c.size())) return 0;
    return c[k];
}

void IntPolynomial::trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

IntPolynomial IntPolynomial::operator+(const IntPolynomial& o) const {
    IntPolynomial r;
    r.c.resize(std::max(c.size(), o.c.size()), Int(0));
    for (size_t i = 0; i < c.size(); ++i) r.c[i] += c[i];
    for (size_t i = 0; i < o.c.size(); ++i) r.c[i] += o.c[i];
    r.trim();
    return r;
}

IntPolynomial IntPolynomial::operator-(const IntPolynomial& o) const { return *this + (-o); }

IntPolynomial IntPolynomial::operator-() const {
    IntPolynomial r = *this;
    for (Int& v : r.c) v = -v;
    return r;
}

IntPolynomial IntPolynomial::operator*(const IntPolynomial& o) const {
    IntPolynomial r;
    if (is_zero() || o.is_zero()) return r;
    r.c.assign(c.size() + o.c.size() - 1, Int(0));
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        for (size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
    }
    r.trim();
    return r;
}

IntPolynomial IntPolynomial::scaled(const Int& k) const {
    IntPolynomial r;
    if (k == 0) return r;
    r.c = c;
    for (Int& v : r.c) v *= k;
    return r;
}

IntPolynomial IntPolynomial::shifted(int k) const {
    IntPolynomial r;
    if (is_zero()) return r;
    r.c.assign(c.size() + k, Int(0));
    for (size_t i = 0; i < c.size(); ++i) r.c[i + k] = c[i];
    return r;
}

IntPolynomial IntPolynomial::reversed(int top) const {
    if (top < degree())
        throw ValidationError("BadReversal", "reversal bound below polynomial degree");
    IntPolynomial r;
    if (is_zero()) return r;
    r.c.assign(top + 1, Int(0));
    for (size_t i = 0; i < c.size(); ++i) r.c[top - i] = c[i];
    r.trim();
    return r;
}

Int IntPolynomial::eval(const Int& x) const {
    Int acc = 0;
    for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
}

std::string IntPolynomial::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        Int v = c[i];
        if (first) {
            if (v < 0) os << "-";
        } else {
            os << (v < 0 ? " - " : " + ");
        }
        Int av = abs(v);
        if (av != 1 || i == 0) os << av.str();
        if (i > 0) {
            if (av != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

void MultiPoly::add_term(const std::vector<int>& exps, const Rat& coeff) {
    if (static_cast<int>(exps.size()) != nvars)
        throw ValidationError("BadTerm", "exponent tuple arity mismatch");
    if (coeff == 0) return;
    auto it = terms.find(exps);
    if (it == terms.end()) {
        terms.emplace(exps, coeff);
    } else {
        it->second += coeff;
        if (it->second == 0) terms.erase(it);
    }
}

int MultiPoly::total_degree() const {
    int d = -1;
    for (auto& [e, v] : terms) {
        int s = 0;
        for (int k : e) s += k;
        d = std::max(d, s);
    }
    return d;
}

std::vector<int> MultiPoly::variable_degrees() const {
    std::vector<int> d(nvars, 0);
    for (auto& [e, v] : terms)
        for (int i = 0; i < nvars; ++i) d[i] = std::max(d[i], e[i]);
    return d;
}

Rat MultiPoly::eval(const std::vector<Int>& x) const {
    if (static_cast<int>(x.size()) != nvars)
        throw ValidationError("BadTerm", "evaluation arity mismatch");
    Rat acc = 0;
    for (auto& [e, v] : terms) {
        Rat term = v;
        for (int i = 0; i < nvars; ++i)
            for (int k = 0; k < e[i]; ++k) term *= Rat(x[i]);
        acc += term;
    }
    return acc;
}

std::string MultiPoly::to_string(const std::vector<std::string>& names) const {
    if (static_cast<int>(names.size()) != nvars)
        throw ValidationError("BadTerm", "one name per variable required");
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [e, v] : terms) {
        Rat av = v < 0 ? Rat(-v) : v;
        if (first) {
            if (v < 0) os << "-";
        } else {
            os << (v < 0 ? " - " : " + ");
        }
        bool has_var = std::any_of(e.begin(), e.end(), [](int k) { return k > 0; });
        if (av != 1 || !has_var) {
            os << av.str();
            if (has_var) os << "*";
        }
        bool first_var = true;
        for (int i = 0; i < nvars; ++i) {
            if (e[i] == 0) continue;
            if (!first_var) os << "*";
            os << names[i];
            if (e[i] > 1) os << "^" << e[i];
            first_var = false;
        }
        first = false;
    }
    return os.str();
}

Int series_coefficient(const IntPolynomial& numerator, const IntPolynomial& denominator,
                       long long n) {
    Int d0 = denominator.coefficient(0);
    if (d0 != 1 && d0 != -1)
        throw ValidationError("NonUnitConstantTerm",
                              "denominator constant term must be 1 or -1");
    if (n < 0) return 0;
    std::vector<Int> coeffs(n + 1);
    for (long long k = 0; k <= n; ++k) {
        Int acc = numerator.coefficient(static_cast<int>(k));
        for (long long j = 1; j <= k; ++j)
            acc -= denominator.coefficient(static_cast<int>(j)) * coeffs[k - j];
        coeffs[k] = d0 == 1 ? acc : -acc;
    }
    return coeffs[n];
}

size_t GridSamples::total_points() const {
    size_t n = 1;
    for (int a = 0; a < axes(); ++a) n *= static_cast<size_t>(axis_points(a));
    return n;
}

size_t GridSamples::index(const std::vector<long long>& coord) const {
    if (coord.size() != lo.size())
        throw ValidationError("BadCoordinate", "coordinate arity mismatch");
    size_t idx = 0;
    for (int a = 0; a < axes(); ++a) {
        if (coord[a] < lo[a] || coord[a] > hi[a])
            throw ValidationError("BadCoordinate", "coordinate outside window");
        idx = idx * static_cast<size_t>(axis_points(a)) +
              static_cast<size_t>(coord[a] - lo[a]);
    }
    return idx;
}

void GridSamples::validate() const {
    if (lo.size() != hi.size())
        throw ValidationError("BadWindow", "window bound arity mismatch");
    if (lo.empty()) throw ValidationError("BadWindow", "empty window");
    for (size_t a = 0; a < lo.size(); ++a)
        if (hi[a] < lo[a]) throw ValidationError("BadWindow", "inverted window axis");
    if (values.size() != total_points())
        throw ValidationError("BadWindow", "sample count does not match window");
}

namespace {

// coefficients of (x - s)(x - s - 1)...(x - s - k + 1) in x
std::vector<Rat> falling_factorial(long long s, int k) {
    std::vector<Rat> p{Rat(1)};
    for (int j = 0; j < k; ++j) {
        std::vector<Rat> q(p.size() + 1);
        Rat shift(-Int(s + j));
        for (size_t i = 0; i < p.size(); ++i) {
            q[i + 1] += p[i];
            q[i] += p[i] * shift;
        }
        p = std::move(q);
    }
    return p;
}

}  // namespace

FitResult fit_polynomial(const GridSamples& samples, int degree, int margin) {
    samples.validate();
    if (degree < 0) throw ValidationError("BadDegree", "negative degree");
    if (margin < 0) throw ValidationError("BadDegree", "negative margin");
    int r = samples.axes();
    long long need = degree + 1 + margin;
    for (int a = 0; a < r; ++a)
        if (samples.axis_points(a) < need)
            throw ValidationError(
                "WindowTooSmall",
                "axis needs at least " + std::to_string(need) + " sample points");

    std::vector<long long> start(r);
    for (int a = 0; a < r; ++a) start[a] = samples.hi[a] - degree;

    // mixed forward differences on the (degree+1)^r top corner
    int side = degree + 1;
    size_t corner = 1;
    for (int a = 0; a < r; ++a) corner *= static_cast<size_t>(side);
    std::vector<Rat> table(corner);
    std::vector<long long> coord(r);
    for (size_t p = 0; p < corner; ++p) {
        size_t rem = p;
        for (int a = r - 1; a >= 0; --a) {
            coord[a] = start[a] + static_cast<long long>(rem % side);
            rem /= side;
        }
        table[p] = Rat(samples.at(coord));
    }
    size_t stride = 1;
    for (int a = r - 1; a >= 0; --a) {
        for (int pass = 1; pass < side; ++pass)
            for (size_t p = corner; p-- > 0;) {
                int pos_a = static_cast<int>((p / stride) % side);
                if (pos_a >= pass) table[p] -= table[p - stride];
            }
        stride *= static_cast<size_t>(side);
    }

    // Newton coefficient for multi-order k̄ is Δ^k̄ f(start) / Π k_a!
    FitResult out;
    out.poly.nvars = r;
    std::vector<std::vector<std::vector<Rat>>> basis(r);
    for (int a = 0; a < r; ++a) {
        basis[a].resize(side);
        for (int k = 0; k < side; ++k) basis[a][k] = falling_factorial(start[a], k);
    }
    for (size_t p = 0; p < corner; ++p) {
        if (table[p] == 0) continue;
        std::vector<int> k(r);
        size_t rem = p;
        for (int a = r - 1; a >= 0; --a) {
            k[a] = static_cast<int>(rem % side);
            rem /= side;
        }
        Rat coeff = table[p];
        for (int a = 0; a < r; ++a) coeff /= Rat(factorial(k[a]));
        // expand Π_a basis[a][k_a] into monomials
        std::map<std::vector<int>, Rat> expanded{{std::vector<int>(r, 0), coeff}};
        for (int a = 0; a < r; ++a) {
            std::map<std::vector<int>, Rat> next;
            for (auto& [e, v] : expanded)
                for (size_t i = 0; i < basis[a][k[a]].size(); ++i) {
                    if (basis[a][k[a]][i] == 0) continue;
                    auto e2 = e;
                    e2[a] += static_cast<int>(i);
                    next[e2] += v * basis[a][k[a]][i];
                }
            expanded = std::move(next);
        }
        for (auto& [e, v] : expanded) out.poly.add_term(e, v);
    }

    out.variable_degrees = out.poly.variable_degrees();
    out.total_degree = out.poly.total_degree();

    // stability: the fit must reproduce the top (degree+1+margin)^r sub-window
    out.stable = true;
    std::vector<long long> slo(r);
    for (int a = 0; a < r; ++a) slo[a] = samples.hi[a] - (need - 1);
    std::vector<long long> cur = slo;
    for (;;) {
        std::vector<Int> x(r);
        for (int a = 0; a < r; ++a) x[a] = cur[a];
        if (out.poly.eval(x) != Rat(samples.at(cur))) {
            out.stable = false;
            break;
        }
        int a = r - 1;
        while (a >= 0 && cur[a] == samples.hi[a]) {
            cur[a] = slo[a];
            --a;
        }
        if (a < 0) break;
        ++cur[a];
    }
    return out;
}

}  // namespace treecat
