#pragma once

#include <vector>

#include "treecat/errors.hpp"
#include "treecat/numeric.hpp"

namespace treecat {

struct IntMatrix {
    int rows = 0, cols = 0;
    std::vector<Int> a;

    IntMatrix() = default;
    IntMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
    static IntMatrix identity(int n);

    Int& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Int& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
    IntMatrix mul(const IntMatrix& o) const;
    IntMatrix transpose() const;
    bool is_zero() const;
    bool operator==(const IntMatrix&) const = default;
};

// rows of (column, value) pairs sorted by column, values nonzero
struct SparseIntMatrix {
    int rows = 0, cols = 0;
    std::vector<std::vector<std::pair<int, Int>>> row;

    SparseIntMatrix() = default;
    SparseIntMatrix(int r, int c) : rows(r), cols(c), row(r) {}
    void add(int i, int j, const Int& v);
    void finalize();  // merge duplicate columns, drop zeros
    IntMatrix dense() const;
    SparseIntMatrix transpose() const;
    std::vector<std::vector<std::pair<int, Int>>> columns() const;
    size_t nonzeros() const;
};

struct SmithResult {
    std::vector<Int> diagonal;  // positive, each dividing the next
    int rank = 0;
    bool with_transforms = false;
    IntMatrix u, v;  // unimodular, u * input * v = diagonal when requested
};

SmithResult smith_normal_form(IntMatrix m, bool want_transforms = false);

int rank_over_rationals(const SparseIntMatrix& m);

struct HomologyGroup {
    long long free_rank = 0;
    std::vector<Int> torsion;  // invariant factors > 1, divisibility order
    bool operator==(const HomologyGroup&) const = default;
};

// boundary_in : C_{k+1} -> C_k, boundary_out : C_k -> C_{k-1}
HomologyGroup homology_from_boundaries(const SparseIntMatrix& boundary_out,
                                       const SparseIntMatrix& boundary_in);

struct RatMatrix {
    int rows = 0, cols = 0;
    std::vector<Rat> a;

    RatMatrix() = default;
    RatMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
    static RatMatrix identity(int n);
    static RatMatrix from_int(const IntMatrix& m);

    Rat& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Rat& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
    RatMatrix mul(const RatMatrix& o) const;
    bool operator==(const RatMatrix&) const = default;
};

int rat_rank(RatMatrix m);
RatMatrix rat_kernel(const RatMatrix& m);  // columns form a basis of the null space
std::vector<int> rat_independent_columns(const RatMatrix& m);  // pivot columns

// exact solve m * x = rhs column-wise; false when inconsistent
bool rat_solve(const RatMatrix& m, const RatMatrix& rhs, RatMatrix& out);

}  // namespace treecat
