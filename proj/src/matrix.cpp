#include "treecat/matrix.hpp"

#include <algorithm>
#include <map>

namespace treecat {

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::mul(const IntMatrix& o) const {
    if (cols != o.rows) throw ValidationError("ShapeMismatch", "matrix product shapes");
    IntMatrix r(rows, o.cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) {
            const Int& v = at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < o.cols; ++j) r.at(i, j) += v * o.at(k, j);
        }
    return r;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix r(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
    return r;
}

bool IntMatrix::is_zero() const {
    for (const Int& v : a)
        if (v != 0) return false;
    return true;
}

void SparseIntMatrix::add(int i, int j, const Int& v) {
    if (v == 0) return;
    row[i].emplace_back(j, v);
}

void SparseIntMatrix::finalize() {
    for (auto& r : row) {
        std::sort(r.begin(), r.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<std::pair<int, Int>> merged;
        for (auto& [c, v] : r) {
            if (!merged.empty() && merged.back().first == c)
                merged.back().second += v;
            else
                merged.emplace_back(c, v);
        }
        std::erase_if(merged, [](const auto& p) { return p.second == 0; });
        r = std::move(merged);
    }
}

IntMatrix SparseIntMatrix::dense() const {
    IntMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (auto& [c, v] : row[i]) m.at(i, c) += v;
    return m;
}

SparseIntMatrix SparseIntMatrix::transpose() const {
    SparseIntMatrix t(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (auto& [c, v] : row[i]) t.row[c].emplace_back(i, v);
    for (auto& r : t.row)
        std::sort(r.begin(), r.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
    return t;
}

std::vector<std::vector<std::pair<int, Int>>> SparseIntMatrix::columns() const {
    std::vector<std::vector<std::pair<int, Int>>> cols_(cols);
    for (int i = 0; i < rows; ++i)
        for (auto& [c, v] : row[i]) cols_[c].emplace_back(i, v);
    return cols_;
}

size_t SparseIntMatrix::nonzeros() const {
    size_t n = 0;
    for (auto& r : row) n += r.size();
    return n;
}

SmithResult smith_normal_form(IntMatrix m, bool want_transforms) {
    int rows = m.rows, cols = m.cols;
    SmithResult res;
    res.with_transforms = want_transforms;
    if (want_transforms) {
        res.u = IntMatrix::identity(rows);
        res.v = IntMatrix::identity(cols);
    }

    auto row_sub = [&](int i, int j, const Int& q) {  // row_i -= q * row_j
        if (q == 0) return;
        for (int k = 0; k < cols; ++k) m.at(i, k) -= q * m.at(j, k);
        if (want_transforms)
            for (int k = 0; k < rows; ++k) res.u.at(i, k) -= q * res.u.at(j, k);
    };
    auto col_sub = [&](int j, int i, const Int& q) {  // col_j -= q * col_i
        if (q == 0) return;
        for (int k = 0; k < rows; ++k) m.at(k, j) -= q * m.at(k, i);
        if (want_transforms)
            for (int k = 0; k < cols; ++k) res.v.at(k, j) -= q * res.v.at(k, i);
    };
    auto row_swap = [&](int i, int j) {
        if (i == j) return;
        for (int k = 0; k < cols; ++k) std::swap(m.at(i, k), m.at(j, k));
        if (want_transforms)
            for (int k = 0; k < rows; ++k) std::swap(res.u.at(i, k), res.u.at(j, k));
    };
    auto col_swap = [&](int i, int j) {
        if (i == j) return;
        for (int k = 0; k < rows; ++k) std::swap(m.at(k, i), m.at(k, j));
        if (want_transforms)
            for (int k = 0; k < cols; ++k) std::swap(res.v.at(k, i), res.v.at(k, j));
    };
    auto row_negate = [&](int i) {
        for (int k = 0; k < cols; ++k) m.at(i, k) = -m.at(i, k);
        if (want_transforms)
            for (int k = 0; k < rows; ++k) res.u.at(i, k) = -res.u.at(i, k);
    };

    int bound = std::min(rows, cols);
    for (int t = 0; t < bound; ++t) {
        int pi = -1, pj = -1;
        int best_fill = 0;
        std::vector<int> rnnz(rows, 0), cnnz(cols, 0);
        for (int i = t; i < rows; ++i)
            for (int j = t; j < cols; ++j)
                if (m.at(i, j) != 0) {
                    ++rnnz[i];
                    ++cnnz[j];
                }
        for (int i = t; i < rows; ++i)
            for (int j = t; j < cols; ++j) {
                if (m.at(i, j) == 0) continue;
                int fill = rnnz[i] + cnnz[j];
                if (pi < 0 || abs(m.at(i, j)) < abs(m.at(pi, pj)) ||
                    (abs(m.at(i, j)) == abs(m.at(pi, pj)) && fill < best_fill)) {
                    pi = i;
                    pj = j;
                    best_fill = fill;
                }
            }
        if (pi < 0) break;
        row_swap(t, pi);
        col_swap(t, pj);

        for (;;) {
            int i = -1, j = -1;
            for (int k = t + 1; k < rows && i < 0; ++k)
                if (m.at(k, t) != 0) i = k;
            if (i >= 0) {
                Int q = m.at(i, t) / m.at(t, t);
                row_sub(i, t, q);
                if (m.at(i, t) != 0) row_swap(i, t);
                continue;
            }
            for (int k = t + 1; k < cols && j < 0; ++k)
                if (m.at(t, k) != 0) j = k;
            if (j >= 0) {
                Int q = m.at(t, j) / m.at(t, t);
                col_sub(j, t, q);
                if (m.at(t, j) != 0) col_swap(j, t);
                continue;
            }
            // pivot clean; enforce divisibility into the remaining block
            int bi = -1, bj = -1;
            for (int x = t + 1; x < rows && bi < 0; ++x)
                for (int y = t + 1; y < cols && bi < 0; ++y)
                    if (m.at(x, y) % m.at(t, t) != 0) {
                        bi = x;
                        bj = y;
                    }
            if (bi < 0) break;
            row_sub(t, bi, Int(-1));
        }
        if (m.at(t, t) < 0) row_negate(t);
    }

    for (int t = 0; t < bound; ++t)
        if (m.at(t, t) != 0) res.diagonal.push_back(m.at(t, t));
    res.rank = static_cast<int>(res.diagonal.size());
    return res;
}

int rank_over_rationals(const SparseIntMatrix& m0) {
    SparseIntMatrix work = (m0.rows > m0.cols) ? m0.transpose() : m0;
    auto rows = work.row;
    int ncols = work.cols;

    auto normalize = [](std::vector<std::pair<int, Int>>& r) {
        if (r.empty()) return;
        Int g = 0;
        for (auto& [c, v] : r) g = gcd(g, v);
        if (g > 1)
            for (auto& [c, v] : r) v /= g;
        if (r.front().second < 0)
            for (auto& [c, v] : r) v = -v;
    };
    for (auto& r : rows) normalize(r);

    std::vector<int> colcount(ncols, 0);
    std::vector<char> active(rows.size(), 1);
    for (auto& r : rows)
        for (auto& [c, v] : r) ++colcount[c];

    int rank = 0;
    for (;;) {
        int pi = -1, pc = -1;
        bool best_nonunit = true;
        long long best_score = 0;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (!active[i] || rows[i].empty()) continue;
            long long rw = static_cast<long long>(rows[i].size()) - 1;
            for (auto& [c, v] : rows[i]) {
                bool nonunit = !(v == 1 || v == -1);
                long long score = rw * (colcount[c] - 1);
                if (pi < 0 || std::make_pair(nonunit, score) <
                                  std::make_pair(best_nonunit, best_score)) {
                    pi = static_cast<int>(i);
                    pc = c;
                    best_nonunit = nonunit;
                    best_score = score;
                }
            }
            if (!best_nonunit && best_score == 0) break;
        }
        if (pi < 0) break;
        ++rank;
        active[pi] = 0;
        auto pivot = rows[pi];
        for (auto& [c, v] : pivot) --colcount[c];
        Int pv = 0;
        for (auto& [c, v] : pivot)
            if (c == pc) pv = v;

        for (size_t i = 0; i < rows.size(); ++i) {
            if (!active[i]) continue;
            auto it = std::lower_bound(rows[i].begin(), rows[i].end(), pc,
                                       [](const auto& p, int c) { return p.first < c; });
            if (it == rows[i].end() || it->first != pc) continue;
            Int rv = it->second;
            Int g = gcd(pv, rv);
            Int a = pv / g, b = rv / g;
            // new = a * row_i - b * pivot
            std::vector<std::pair<int, Int>> merged;
            merged.reserve(rows[i].size() + pivot.size());
            auto x = rows[i].begin(), xe = rows[i].end();
            auto y = pivot.begin(), ye = pivot.end();
            while (x != xe || y != ye) {
                if (y == ye || (x != xe && x->first < y->first)) {
                    merged.emplace_back(x->first, a * x->second);
                    ++x;
                } else if (x == xe || y->first < x->first) {
                    merged.emplace_back(y->first, -b * y->second);
                    ++y;
                } else {
                    Int v = a * x->second - b * y->second;
                    if (v != 0) merged.emplace_back(x->first, v);
                    ++x;
                    ++y;
                }
            }
            for (auto& [c, v] : rows[i]) --colcount[c];
            normalize(merged);
            rows[i] = std::move(merged);
            for (auto& [c, v] : rows[i]) ++colcount[c];
        }
    }
    return rank;
}

HomologyGroup homology_from_boundaries(const SparseIntMatrix& boundary_out,
                                       const SparseIntMatrix& boundary_in) {
    if (boundary_out.cols != boundary_in.rows)
        throw ValidationError("ShapeMismatch", "boundary maps do not share a middle degree");
    auto out_cols = boundary_out.columns();
    auto in_cols = boundary_in.columns();
    for (auto& col : in_cols) {
        std::map<int, Int> acc;
        for (auto& [k, v] : col)
            for (auto& [i, w] : out_cols[k]) acc[i] += v * w;
        for (auto& [i, v] : acc)
            if (v != 0)
                throw ValidationError("NotAComplex", "composite boundary map is nonzero");
    }

    HomologyGroup h;
    int rk_out = rank_over_rationals(boundary_out);
    int rk_in = rank_over_rationals(boundary_in);
    h.free_rank = static_cast<long long>(boundary_out.cols) - rk_out - rk_in;
    if (h.free_rank < 0)
        throw InternalError("NegativeRank", "rank bookkeeping failed");

    if (rk_in > 0) {
        size_t cells = static_cast<size_t>(boundary_in.rows) * boundary_in.cols;
        if (cells > 4'000'000)
            throw GuardError("TooLarge",
                             "integral torsion computation too large; use rational coefficients");
        auto snf = smith_normal_form(boundary_in.dense());
        for (const Int& d : snf.diagonal)
            if (d > 1) h.torsion.push_back(d);
    }
    return h;
}

RatMatrix RatMatrix::identity(int n) {
    RatMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::from_int(const IntMatrix& m) {
    RatMatrix r(m.rows, m.cols);
    for (size_t i = 0; i < m.a.size(); ++i) r.a[i] = Rat(m.a[i]);
    return r;
}

RatMatrix RatMatrix::mul(const RatMatrix& o) const {
    if (cols != o.rows) throw ValidationError("ShapeMismatch", "matrix product shapes");
    RatMatrix r(rows, o.cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) {
            const Rat& v = at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < o.cols; ++j) r.at(i, j) += v * o.at(k, j);
        }
    return r;
}

namespace {

// returns pivot columns; m becomes reduced row echelon
std::vector<int> rref(RatMatrix& m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int p = -1;
        for (int i = r; i < m.rows; ++i)
            if (m.at(i, c) != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(r, j));
        Rat inv = m.at(r, c);
        for (int j = c; j < m.cols; ++j) m.at(r, j) /= inv;
        for (int i = 0; i < m.rows; ++i) {
            if (i == r || m.at(i, c) == 0) continue;
            Rat f = m.at(i, c);
            for (int j = c; j < m.cols; ++j) m.at(i, j) -= f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

int rat_rank(RatMatrix m) { return static_cast<int>(rref(m).size()); }

RatMatrix rat_kernel(const RatMatrix& m0) {
    RatMatrix m = m0;
    auto pivots = rref(m);
    std::vector<char> is_pivot(m.cols, 0);
    for (int c : pivots) is_pivot[c] = 1;
    std::vector<int> free_cols;
    for (int c = 0; c < m.cols; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    RatMatrix k(m.cols, static_cast<int>(free_cols.size()));
    for (size_t f = 0; f < free_cols.size(); ++f) {
        int fc = free_cols[f];
        k.at(fc, static_cast<int>(f)) = 1;
        for (size_t r = 0; r < pivots.size(); ++r)
            k.at(pivots[r], static_cast<int>(f)) = -m.at(static_cast<int>(r), fc);
    }
    return k;
}

std::vector<int> rat_independent_columns(const RatMatrix& m) {
    RatMatrix copy = m;
    return rref(copy);
}

bool rat_solve(const RatMatrix& m, const RatMatrix& rhs, RatMatrix& out) {
    if (m.rows != rhs.rows) throw ValidationError("ShapeMismatch", "solve shapes");
    RatMatrix aug(m.rows, m.cols + rhs.cols);
    for (int i = 0; i < m.rows; ++i) {
        for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
        for (int j = 0; j < rhs.cols; ++j) aug.at(i, m.cols + j) = rhs.at(i, j);
    }
    auto pivots = rref(aug);
    for (int c : pivots)
        if (c >= m.cols) return false;
    out = RatMatrix(m.cols, rhs.cols);
    for (size_t r = 0; r < pivots.size(); ++r)
        for (int j = 0; j < rhs.cols; ++j)
            out.at(pivots[r], j) = aug.at(static_cast<int>(r), m.cols + j);
    return true;
}

}  // namespace treecat
