#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "okh/errors.hpp"

namespace okh {

using Int = mpz_class;
using Rat = mpq_class;

// Exact integer matrix with row-wise sparse storage. Entries are arbitrary
// precision; absent entries are zero. Row/column indices are 0-based.
struct IntMatrix {
    int rows = 0, cols = 0;
    std::vector<std::map<int, Int>> row_data;

    IntMatrix() = default;
    IntMatrix(int r, int c) : rows(r), cols(c), row_data(r) {}

    static IntMatrix identity(int n);

    Int get(int i, int j) const;
    void set(int i, int j, Int v);            // storing 0 erases the entry
    void add_at(int i, int j, const Int& v);  // entry += v
    long long nonzeros() const;

    bool operator==(const IntMatrix&) const = default;
};

IntMatrix mul(const IntMatrix& a, const IntMatrix& b);
IntMatrix transpose(const IntMatrix& a);
std::vector<Int> apply(const IntMatrix& a, const std::vector<Int>& x);

// Determinant by fraction-free (Bareiss) elimination; square input required.
Int determinant(const IntMatrix& a);

// When enabled, every Smith decomposition re-multiplies S*A*T and checks it
// against D, checks the divisibility chain, and checks det S, det T = +-1;
// diagonal-only reductions are cross-checked against the full decomposition
// on small inputs. Off by default; the test suites switch it on.
void set_test_verification(bool on);
bool test_verification_enabled();

struct SnfResult {
    IntMatrix s, d, t;          // s * a * t == d
    int rank = 0;               // number of nonzero diagonal entries
    std::vector<Int> diagonal;  // min(rows, cols) diagonal entries of d
};

// Smith normal form with unimodular transforms. Diagonal entries are
// nonnegative and each divides the next. Pivoting picks the smallest
// nonzero magnitude to limit coefficient growth.
SnfResult smith_normal_form(const IntMatrix& a);

struct DiagonalSummary {
    int rank = 0;
    std::vector<Int> torsion;  // diagonal entries >= 2, in chain order
};

// Diagonal of the Smith form without transforms. Uses sparse elimination on
// +-1 pivots first and a dense reduction on the small remaining core, so it
// scales to chain-complex differentials.
DiagonalSummary snf_diagonal(const IntMatrix& a);

struct MinMultiple {
    std::optional<Int> multiple;  // smallest n >= 1 with a x = n y solvable
    std::vector<Int> witness;     // x with a x = multiple * y, when solvable
    // Diagnostics in the Smith basis of the target: gcd of the transformed
    // right-hand side beyond rank(a) (0 when y lies in the saturation), and
    // the (d_i, y'_i mod d_i) pairs over diagonal entries d_i >= 2.
    Int residual_gcd{0};
    std::vector<std::pair<Int, Int>> torsion_coords;
};

// Smallest positive n with a x = n y solvable over the integers: transform
// y into the Smith basis, require it to vanish beyond the rank, and take
// n = lcm_i(d_i / gcd(d_i, y'_i)). Witness verified by multiplication.
MinMultiple solve_min_multiple(const IntMatrix& a, const std::vector<Int>& y);

// Reduced row echelon data over a field: rationals when p == 0, the prime
// field Z/p otherwise (the modulus is a plain runtime value). `transform`
// rows satisfy transform * a = rref, which is what a solve needs.
struct RowEchelon {
    long long p = 0;
    int rows = 0, cols = 0, rank = 0;
    std::vector<int> pivot_cols;
    std::vector<std::vector<Rat>> rref_q, transform_q;
    std::vector<std::vector<long long>> rref_p, transform_p;
};

RowEchelon row_reduce(const IntMatrix& a, long long p = 0);

// Solve a x = rhs from the echelon data (free variables set to 0);
// nullopt when inconsistent.
std::optional<std::vector<Rat>> echelon_solve(const RowEchelon& e, const std::vector<Rat>& rhs);
std::optional<std::vector<long long>> echelon_solve_mod(const RowEchelon& e,
                                                        const std::vector<Int>& rhs);

// Rank over Q (p == 0) or over Z/p. The rational rank is computed through
// the integer reduction (rank = number of nonzero Smith diagonal entries).
int field_rank(const IntMatrix& a, long long p = 0);

} // namespace okh
