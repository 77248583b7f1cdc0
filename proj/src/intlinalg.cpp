#include "okh/intlinalg.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <set>
#include <sstream>
#include <tuple>

namespace okh {

namespace {

std::atomic<bool> g_verify{false};

std::string shape_msg(const char* what, int rows, int cols, size_t got) {
    std::ostringstream os;
    os << what << ": matrix is " << rows << "x" << cols << ", vector has " << got << " entries";
    return os.str();
}

} // namespace

void set_test_verification(bool on) { g_verify.store(on); }
bool test_verification_enabled() { return g_verify.load(); }

// ---------------------------------------------------------------------------
// IntMatrix basics

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.row_data[i][i] = 1;
    return m;
}

Int IntMatrix::get(int i, int j) const {
    const auto& row = row_data[i];
    auto it = row.find(j);
    return it == row.end() ? Int(0) : it->second;
}

void IntMatrix::set(int i, int j, Int v) {
    if (v == 0)
        row_data[i].erase(j);
    else
        row_data[i][j] = std::move(v);
}

void IntMatrix::add_at(int i, int j, const Int& v) {
    if (v == 0) return;
    auto& row = row_data[i];
    auto [it, fresh] = row.try_emplace(j, v);
    if (!fresh) {
        it->second += v;
        if (it->second == 0) row.erase(it);
    }
}

long long IntMatrix::nonzeros() const {
    long long n = 0;
    for (const auto& row : row_data) n += static_cast<long long>(row.size());
    return n;
}

IntMatrix mul(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols != b.rows) throw ShapeError("matrix product shape mismatch");
    IntMatrix out(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i) {
        for (const auto& [k, v] : a.row_data[i]) {
            for (const auto& [j, w] : b.row_data[k]) out.add_at(i, j, v * w);
        }
    }
    return out;
}

IntMatrix transpose(const IntMatrix& a) {
    IntMatrix out(a.cols, a.rows);
    for (int i = 0; i < a.rows; ++i)
        for (const auto& [j, v] : a.row_data[i]) out.row_data[j][i] = v;
    return out;
}

std::vector<Int> apply(const IntMatrix& a, const std::vector<Int>& x) {
    if (static_cast<int>(x.size()) != a.cols)
        throw ShapeError(shape_msg("apply", a.rows, a.cols, x.size()));
    std::vector<Int> y(a.rows, Int(0));
    for (int i = 0; i < a.rows; ++i)
        for (const auto& [j, v] : a.row_data[i]) y[i] += v * x[j];
    return y;
}

Int determinant(const IntMatrix& a) {
    if (a.rows != a.cols) throw ShapeError("determinant of a non-square matrix");
    const int n = a.rows;
    if (n == 0) return 1;
    std::vector<std::vector<Int>> m(n, std::vector<Int>(n, Int(0)));
    for (int i = 0; i < n; ++i)
        for (const auto& [j, v] : a.row_data[i]) m[i][j] = v;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int i = k; i < n; ++i)
            if (m[i][k] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) return 0;
        if (piv != k) {
            std::swap(m[piv], m[k]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign < 0 ? Int(-m[n - 1][n - 1]) : m[n - 1][n - 1];
}

// ---------------------------------------------------------------------------
// Dense Smith reduction (workhorse for the public decomposition and for the
// small cores left over by the sparse pass)

namespace {

using Dense = std::vector<std::vector<Int>>;

struct DenseSnf {
    Dense d, s, t;  // s, t empty unless transforms requested
    int rank = 0;
};

Dense dense_identity(int n) {
    Dense m(n, std::vector<Int>(n, Int(0)));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

// In-place Smith reduction with smallest-magnitude pivoting. Row operations
// mirror onto s, column operations onto t (when present).
DenseSnf dense_smith(Dense a, bool with_transforms) {
    const int rows = static_cast<int>(a.size());
    const int cols = rows ? static_cast<int>(a[0].size()) : 0;
    DenseSnf out;
    if (with_transforms) {
        out.s = dense_identity(rows);
        out.t = dense_identity(cols);
    }
    Dense& s = out.s;
    Dense& t = out.t;

    auto row_sub = [&](int dst, int src, const Int& q) {
        for (int j = 0; j < cols; ++j) a[dst][j] -= q * a[src][j];
        if (with_transforms)
            for (int j = 0; j < rows; ++j) s[dst][j] -= q * s[src][j];
    };
    auto col_sub = [&](int dst, int src, const Int& q) {
        for (int i = 0; i < rows; ++i) a[i][dst] -= q * a[i][src];
        if (with_transforms)
            for (int i = 0; i < cols; ++i) t[i][dst] -= q * t[i][src];
    };
    auto row_swap = [&](int i, int j) {
        std::swap(a[i], a[j]);
        if (with_transforms) std::swap(s[i], s[j]);
    };
    auto col_swap = [&](int i, int j) {
        for (int r = 0; r < rows; ++r) std::swap(a[r][i], a[r][j]);
        if (with_transforms)
            for (int r = 0; r < cols; ++r) std::swap(t[r][i], t[r][j]);
    };

    const int limit = std::min(rows, cols);
    int k = 0;
    for (; k < limit; ++k) {
        // Smallest nonzero magnitude in the trailing submatrix.
        int pi = -1, pj = -1;
        for (int i = k; i < rows; ++i)
            for (int j = k; j < cols; ++j)
                if (a[i][j] != 0 &&
                    (pi < 0 || mpz_cmpabs(a[i][j].get_mpz_t(), a[pi][pj].get_mpz_t()) < 0))
                    pi = i, pj = j;
        if (pi < 0) break;
        if (pi != k) row_swap(pi, k);
        if (pj != k) col_swap(pj, k);

        while (true) {
            // Clear column k then row k; a remainder smaller than the pivot
            // is swapped into the pivot position and the pass restarts.
            bool dirty = true;
            while (dirty) {
                dirty = false;
                for (int i = k + 1; i < rows; ++i) {
                    if (a[i][k] == 0) continue;
                    Int q = a[i][k] / a[k][k];
                    if (q != 0) row_sub(i, k, q);
                    if (a[i][k] != 0) {
                        row_swap(i, k);
                        dirty = true;
                    }
                }
                for (int j = k + 1; j < cols; ++j) {
                    if (a[k][j] == 0) continue;
                    Int q = a[k][j] / a[k][k];
                    if (q != 0) col_sub(j, k, q);
                    if (a[k][j] != 0) {
                        col_swap(j, k);
                        dirty = true;
                    }
                }
            }
            // The pivot must divide every remaining entry; if not, fold the
            // offending row into row k and reduce again.
            int vi = -1;
            for (int i = k + 1; i < rows && vi < 0; ++i)
                for (int j = k + 1; j < cols; ++j)
                    if (a[i][j] % a[k][k] != 0) {
                        vi = i;
                        break;
                    }
            if (vi < 0) break;
            row_sub(k, vi, Int(-1));  // row k += row vi
        }

        if (a[k][k] < 0) {
            for (int j = 0; j < cols; ++j) a[k][j] = -a[k][j];
            if (with_transforms)
                for (int j = 0; j < rows; ++j) s[k][j] = -s[k][j];
        }
    }
    out.rank = k;
    out.d = std::move(a);
    return out;
}

Dense to_dense(const IntMatrix& a) {
    Dense m(a.rows, std::vector<Int>(a.cols, Int(0)));
    for (int i = 0; i < a.rows; ++i)
        for (const auto& [j, v] : a.row_data[i]) m[i][j] = v;
    return m;
}

IntMatrix from_dense(const Dense& m, int rows, int cols) {
    IntMatrix out(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            if (m[i][j] != 0) out.row_data[i][j] = m[i][j];
    return out;
}

void verify_snf(const IntMatrix& a, const SnfResult& r) {
    if (mul(mul(r.s, a), r.t) != r.d) throw Error("Smith self-check failed: S*A*T != D");
    Int ds = determinant(r.s), dt = determinant(r.t);
    if (ds != 1 && ds != -1) throw Error("Smith self-check failed: det S not a unit");
    if (dt != 1 && dt != -1) throw Error("Smith self-check failed: det T not a unit");
    for (int i = 0; i < r.d.rows; ++i)
        for (const auto& [j, v] : r.d.row_data[i])
            if (i != j && v != 0) throw Error("Smith self-check failed: D not diagonal");
    for (size_t i = 0; i < r.diagonal.size(); ++i) {
        if (r.diagonal[i] < 0) throw Error("Smith self-check failed: negative diagonal");
        if (i + 1 < r.diagonal.size()) {
            const Int& x = r.diagonal[i];
            const Int& y = r.diagonal[i + 1];
            bool ok = (x == 0) ? (y == 0) : (y % x == 0);
            if (!ok) throw Error("Smith self-check failed: divisibility chain broken");
        }
    }
}

} // namespace

SnfResult smith_normal_form(const IntMatrix& a) {
    DenseSnf ds = dense_smith(to_dense(a), true);
    SnfResult r;
    r.s = from_dense(ds.s, a.rows, a.rows);
    r.t = from_dense(ds.t, a.cols, a.cols);
    r.d = from_dense(ds.d, a.rows, a.cols);
    r.rank = ds.rank;
    const int limit = std::min(a.rows, a.cols);
    for (int i = 0; i < limit; ++i) r.diagonal.push_back(ds.d[i][i]);
    if (test_verification_enabled()) verify_snf(a, r);
    return r;
}

// ---------------------------------------------------------------------------
// Sparse elimination: +-1 pivots first (with Markowitz-style fill control),
// dense Smith on whatever core remains.

namespace {

struct SparseElim {
    std::vector<std::map<int, Int>> rows;      // working copy
    std::vector<std::set<int>> col_rows;       // col -> active rows with entry
    std::vector<bool> row_active, col_active;
    int nrows = 0, ncols = 0;

    explicit SparseElim(const IntMatrix& a)
        : rows(a.row_data),
          col_rows(a.cols),
          row_active(a.rows, true),
          col_active(a.cols, true),
          nrows(a.rows),
          ncols(a.cols) {
        for (int i = 0; i < nrows; ++i)
            for (const auto& [j, v] : rows[i]) {
                (void)v;
                col_rows[j].insert(i);
            }
    }

    // dst -= c * src (both row indices); keeps the column index in sync.
    void row_sub(int dst, int src, const Int& c) {
        if (c == 0) return;
        for (const auto& [j, v] : rows[src]) {
            auto& row = rows[dst];
            auto [it, fresh] = row.try_emplace(j, 0);
            it->second -= c * v;
            if (it->second == 0) {
                row.erase(it);
                col_rows[j].erase(dst);
            } else if (fresh) {
                col_rows[j].insert(dst);
            }
        }
    }

    // Best +-1 pivot by (row_nnz-1)*(col_nnz-1), ties by (row, col).
    // Returns {row, col} or {-1, -1}.
    std::pair<int, int> find_unit_pivot() const {
        long long best = -1;
        int bi = -1, bj = -1;
        for (int i = 0; i < nrows; ++i) {
            if (!row_active[i]) continue;
            const long long rn = static_cast<long long>(rows[i].size()) - 1;
            for (const auto& [j, v] : rows[i]) {
                if (v != 1 && v != -1) continue;
                const long long score = rn * (static_cast<long long>(col_rows[j].size()) - 1);
                if (best < 0 || score < best) {
                    best = score;
                    bi = i;
                    bj = j;
                }
            }
        }
        return {bi, bj};
    }

    // Eliminate column `pj` using unit entry at (pi, pj); deactivates both.
    // Returns the rows that were modified (for callers tracking a vector).
    void eliminate(int pi, int pj, const std::function<void(int, const Int&)>& on_row_sub) {
        const Int v = rows[pi].at(pj);  // +-1
        std::vector<int> targets(col_rows[pj].begin(), col_rows[pj].end());
        for (int r : targets) {
            if (r == pi || !row_active[r]) continue;
            Int c = rows[r].at(pj) * v;
            row_sub(r, pi, c);
            if (on_row_sub) on_row_sub(r, c);
        }
        row_active[pi] = false;
        col_active[pj] = false;
        // Scrub the pivot row out of the column index so later passes skip it.
        for (const auto& [j, w] : rows[pi]) {
            (void)w;
            col_rows[j].erase(pi);
        }
    }

    std::vector<int> active_rows() const {
        std::vector<int> out;
        for (int i = 0; i < nrows; ++i)
            if (row_active[i]) out.push_back(i);
        return out;
    }
    std::vector<int> active_cols() const {
        std::vector<int> out;
        for (int j = 0; j < ncols; ++j)
            if (col_active[j]) out.push_back(j);
        return out;
    }
};

} // namespace

DiagonalSummary snf_diagonal(const IntMatrix& a) {
    SparseElim e(a);
    int unit_rank = 0;
    while (true) {
        auto [pi, pj] = e.find_unit_pivot();
        if (pi < 0) break;
        e.eliminate(pi, pj, nullptr);
        ++unit_rank;
    }

    const auto arows = e.active_rows();
    const auto acols = e.active_cols();
    std::map<int, int> colmap;
    for (size_t j = 0; j < acols.size(); ++j) colmap[acols[j]] = static_cast<int>(j);
    Dense core(arows.size(), std::vector<Int>(acols.size(), Int(0)));
    for (size_t i = 0; i < arows.size(); ++i)
        for (const auto& [j, v] : e.rows[arows[i]]) core[i][colmap.at(j)] = v;

    DenseSnf ds = dense_smith(std::move(core), false);
    DiagonalSummary out;
    out.rank = unit_rank + ds.rank;
    for (int i = 0; i < ds.rank; ++i)
        if (ds.d[i][i] >= 2) out.torsion.push_back(ds.d[i][i]);

    if (test_verification_enabled() &&
        static_cast<long long>(a.rows) * a.cols <= 20000) {
        SnfResult full = smith_normal_form(a);
        std::vector<Int> full_torsion;
        for (const Int& d : full.diagonal)
            if (d >= 2) full_torsion.push_back(d);
        if (full.rank != out.rank || full_torsion != out.torsion)
            throw Error("sparse diagonal reduction disagrees with full Smith form");
    }
    return out;
}

MinMultiple solve_min_multiple(const IntMatrix& a, const std::vector<Int>& y) {
    if (static_cast<int>(y.size()) != a.rows)
        throw ShapeError(shape_msg("solve_min_multiple", a.rows, a.cols, y.size()));

    SparseElim e(a);
    std::vector<Int> yv = y;
    // Column operations deferred to witness reconstruction: (dst, src, w)
    // meaning col_dst -= w * col_src, in application order.
    std::vector<std::tuple<int, int, Int>> col_log;
    std::vector<std::tuple<int, int, Int>> pivots;  // (row, col, value)

    while (true) {
        auto [pi, pj] = e.find_unit_pivot();
        if (pi < 0) break;
        const Int v = e.rows[pi].at(pj);
        for (const auto& [q, w] : e.rows[pi])
            if (q != pj) col_log.emplace_back(q, pj, w * v);
        e.eliminate(pi, pj, [&](int r, const Int& c) { yv[r] -= c * yv[pi]; });
        pivots.emplace_back(pi, pj, v);
    }

    const auto arows = e.active_rows();
    const auto acols = e.active_cols();
    std::map<int, int> colmap;
    for (size_t j = 0; j < acols.size(); ++j) colmap[acols[j]] = static_cast<int>(j);
    Dense core(arows.size(), std::vector<Int>(acols.size(), Int(0)));
    for (size_t i = 0; i < arows.size(); ++i)
        for (const auto& [j, v] : e.rows[arows[i]]) core[i][colmap.at(j)] = v;

    DenseSnf ds = dense_smith(std::move(core), true);
    const int core_rows = static_cast<int>(arows.size());
    const int core_cols = static_cast<int>(acols.size());

    std::vector<Int> ycore(core_rows, Int(0));
    for (int i = 0; i < core_rows; ++i) {
        for (int j = 0; j < core_rows; ++j)
            if (ds.s[i][j] != 0) ycore[i] += ds.s[i][j] * yv[arows[j]];
    }

    MinMultiple out;
    bool solvable = true;
    for (int i = ds.rank; i < core_rows; ++i)
        if (ycore[i] != 0) {
            solvable = false;
            Int g;
            mpz_gcd(g.get_mpz_t(), out.residual_gcd.get_mpz_t(), ycore[i].get_mpz_t());
            out.residual_gcd = g;
        }
    for (int i = 0; i < ds.rank; ++i) {
        const Int& d = ds.d[i][i];
        if (d >= 2) {
            Int rem = ycore[i] % d;
            if (rem < 0) rem += d;
            out.torsion_coords.emplace_back(d, rem);
        }
    }
    if (!solvable) return out;

    Int n = 1;
    for (int i = 0; i < ds.rank; ++i) {
        if (ycore[i] == 0) continue;
        const Int& d = ds.d[i][i];
        Int g;
        mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), ycore[i].get_mpz_t());
        Int factor = d / g;
        mpz_lcm(n.get_mpz_t(), n.get_mpz_t(), factor.get_mpz_t());
    }
    out.multiple = n;

    // Witness: solve the diagonalized system, then undo the column moves.
    std::vector<Int> x(a.cols, Int(0));
    std::vector<Int> z(core_cols, Int(0));
    for (int i = 0; i < ds.rank; ++i) z[i] = n * ycore[i] / ds.d[i][i];
    for (int j = 0; j < core_cols; ++j) {
        Int acc = 0;
        for (int k = 0; k < core_cols; ++k)
            if (ds.t[j][k] != 0) acc += ds.t[j][k] * z[k];
        x[acols[j]] = acc;
    }
    for (const auto& [pi, pj, v] : pivots) x[pj] = n * yv[pi] * v;
    for (auto it = col_log.rbegin(); it != col_log.rend(); ++it) {
        const auto& [dst, src, w] = *it;
        x[src] -= w * x[dst];
    }

    // A witness is cheap to check, so always check it.
    std::vector<Int> ax = okh::apply(a, x);
    for (int i = 0; i < a.rows; ++i)
        if (ax[i] != n * y[i]) throw Error("min-multiple witness failed verification");
    out.witness = std::move(x);
    return out;
}

// ---------------------------------------------------------------------------
// Field reductions

namespace {

long long mod_reduce(const Int& v, long long p) {
    return static_cast<long long>(mpz_fdiv_ui(v.get_mpz_t(), static_cast<unsigned long>(p)));
}

long long mul_mod(long long a, long long b, long long p) {
    return static_cast<long long>(static_cast<__int128>(a) * b % p);
}

long long inv_mod(long long a, long long p) {
    long long t = 0, nt = 1, r = p, nr = a % p;
    while (nr != 0) {
        long long q = r / nr;
        t -= q * nt;
        std::swap(t, nt);
        r -= q * nr;
        std::swap(r, nr);
    }
    if (r != 1) throw Error("modulus is not prime: " + std::to_string(p) + " has zero divisors");
    return ((t % p) + p) % p;
}

void check_modulus(long long p) {
    if (p < 2) throw Error("field modulus must be at least 2");
    if (p > (1LL << 31)) throw Error("field modulus too large");
    Int pz(std::to_string(p));
    if (mpz_probab_prime_p(pz.get_mpz_t(), 30) == 0)
        throw Error("field modulus must be prime, got " + std::to_string(p));
}

} // namespace

RowEchelon row_reduce(const IntMatrix& a, long long p) {
    RowEchelon e;
    e.p = p;
    e.rows = a.rows;
    e.cols = a.cols;
    if (p == 0) {
        std::vector<std::vector<Rat>> m(a.rows, std::vector<Rat>(a.cols, Rat(0)));
        for (int i = 0; i < a.rows; ++i)
            for (const auto& [j, v] : a.row_data[i]) m[i][j] = Rat(v);
        std::vector<std::vector<Rat>> tr(a.rows, std::vector<Rat>(a.rows, Rat(0)));
        for (int i = 0; i < a.rows; ++i) tr[i][i] = 1;
        int r = 0;
        for (int j = 0; j < a.cols && r < a.rows; ++j) {
            int piv = -1;
            for (int i = r; i < a.rows; ++i)
                if (m[i][j] != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) continue;
            std::swap(m[piv], m[r]);
            std::swap(tr[piv], tr[r]);
            Rat inv = 1 / m[r][j];
            for (auto& v : m[r]) v *= inv;
            for (auto& v : tr[r]) v *= inv;
            for (int i = 0; i < a.rows; ++i) {
                if (i == r || m[i][j] == 0) continue;
                Rat c = m[i][j];
                for (int q = 0; q < a.cols; ++q) m[i][q] -= c * m[r][q];
                for (int q = 0; q < a.rows; ++q) tr[i][q] -= c * tr[r][q];
            }
            e.pivot_cols.push_back(j);
            ++r;
        }
        e.rank = r;
        e.rref_q = std::move(m);
        e.transform_q = std::move(tr);
        return e;
    }

    check_modulus(p);
    std::vector<std::vector<long long>> m(a.rows, std::vector<long long>(a.cols, 0));
    for (int i = 0; i < a.rows; ++i)
        for (const auto& [j, v] : a.row_data[i]) m[i][j] = mod_reduce(v, p);
    std::vector<std::vector<long long>> tr(a.rows, std::vector<long long>(a.rows, 0));
    for (int i = 0; i < a.rows; ++i) tr[i][i] = 1;
    int r = 0;
    for (int j = 0; j < a.cols && r < a.rows; ++j) {
        int piv = -1;
        for (int i = r; i < a.rows; ++i)
            if (m[i][j] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[piv], m[r]);
        std::swap(tr[piv], tr[r]);
        long long inv = inv_mod(m[r][j], p);
        for (auto& v : m[r]) v = mul_mod(v, inv, p);
        for (auto& v : tr[r]) v = mul_mod(v, inv, p);
        for (int i = 0; i < a.rows; ++i) {
            if (i == r || m[i][j] == 0) continue;
            long long c = m[i][j];
            for (int q = 0; q < a.cols; ++q)
                m[i][q] = ((m[i][q] - mul_mod(c, m[r][q], p)) % p + p) % p;
            for (int q = 0; q < a.rows; ++q)
                tr[i][q] = ((tr[i][q] - mul_mod(c, tr[r][q], p)) % p + p) % p;
        }
        e.pivot_cols.push_back(j);
        ++r;
    }
    e.rank = r;
    e.rref_p = std::move(m);
    e.transform_p = std::move(tr);
    return e;
}

std::optional<std::vector<Rat>> echelon_solve(const RowEchelon& e, const std::vector<Rat>& rhs) {
    if (e.p != 0) throw Error("echelon_solve requires rational echelon data");
    if (static_cast<int>(rhs.size()) != e.rows)
        throw ShapeError(shape_msg("echelon_solve", e.rows, e.cols, rhs.size()));
    std::vector<Rat> r(e.rows, Rat(0));
    for (int i = 0; i < e.rows; ++i)
        for (int j = 0; j < e.rows; ++j)
            if (e.transform_q[i][j] != 0) r[i] += e.transform_q[i][j] * rhs[j];
    for (int i = e.rank; i < e.rows; ++i)
        if (r[i] != 0) return std::nullopt;
    std::vector<Rat> x(e.cols, Rat(0));
    for (int i = 0; i < e.rank; ++i) x[e.pivot_cols[i]] = r[i];
    return x;
}

std::optional<std::vector<long long>> echelon_solve_mod(const RowEchelon& e,
                                                        const std::vector<Int>& rhs) {
    if (e.p == 0) throw Error("echelon_solve_mod requires prime-field echelon data");
    if (static_cast<int>(rhs.size()) != e.rows)
        throw ShapeError(shape_msg("echelon_solve_mod", e.rows, e.cols, rhs.size()));
    std::vector<long long> r(e.rows, 0);
    for (int i = 0; i < e.rows; ++i) {
        for (int j = 0; j < e.rows; ++j)
            if (e.transform_p[i][j] != 0)
                r[i] = (r[i] + mul_mod(e.transform_p[i][j], mod_reduce(rhs[j], e.p), e.p)) % e.p;
    }
    for (int i = e.rank; i < e.rows; ++i)
        if (r[i] != 0) return std::nullopt;
    std::vector<long long> x(e.cols, 0);
    for (int i = 0; i < e.rank; ++i) x[e.pivot_cols[i]] = r[i];
    return x;
}

int field_rank(const IntMatrix& a, long long p) {
    if (p == 0) return snf_diagonal(a).rank;
    check_modulus(p);

    // Sparse elimination mod p; any nonzero entry is invertible.
    std::vector<std::map<int, long long>> rows(a.rows);
    std::vector<std::set<int>> col_rows(a.cols);
    for (int i = 0; i < a.rows; ++i)
        for (const auto& [j, v] : a.row_data[i]) {
            long long rv = mod_reduce(v, p);
            if (rv != 0) {
                rows[i][j] = rv;
                col_rows[j].insert(i);
            }
        }
    std::vector<bool> row_active(a.rows, true);
    int rank = 0;
    while (true) {
        long long best = -1;
        int pi = -1, pj = -1;
        for (int i = 0; i < a.rows; ++i) {
            if (!row_active[i] || rows[i].empty()) continue;
            const long long rn = static_cast<long long>(rows[i].size()) - 1;
            for (const auto& [j, v] : rows[i]) {
                (void)v;
                const long long score = rn * (static_cast<long long>(col_rows[j].size()) - 1);
                if (best < 0 || score < best) {
                    best = score;
                    pi = i;
                    pj = j;
                }
            }
        }
        if (pi < 0) break;
        const long long inv = inv_mod(rows[pi].at(pj), p);
        std::vector<int> targets(col_rows[pj].begin(), col_rows[pj].end());
        for (int r : targets) {
            if (r == pi || !row_active[r]) continue;
            const long long c = mul_mod(rows[r].at(pj), inv, p);
            for (const auto& [j, v] : rows[pi]) {
                auto [it, fresh] = rows[r].try_emplace(j, 0);
                it->second = ((it->second - mul_mod(c, v, p)) % p + p) % p;
                if (it->second == 0) {
                    rows[r].erase(it);
                    col_rows[j].erase(r);
                } else if (fresh) {
                    col_rows[j].insert(r);
                }
            }
        }
        row_active[pi] = false;
        for (const auto& [j, v] : rows[pi]) {
            (void)v;
            col_rows[j].erase(pi);
        }
        ++rank;
    }
    return rank;
}

} // namespace okh
