#include "okh/cube.hpp"

#include <algorithm>
#include <sstream>

#include "okh/exterior.hpp"

namespace okh {

SignedCube::SignedCube(BraidWord b) : braid_(std::move(b)), ctx_(braid_), n_(braid_.length()) {
    if (n_ == 0) return;
    if (n_ <= 20)
        table_ = std::make_shared<std::vector<std::atomic<std::int8_t>>>(
            static_cast<size_t>(1u << n_) * n_);
    else
        map_memo_ = std::make_shared<MapMemo>();
}

int SignedCube::compute_sign(std::uint32_t vertex, int crossing) const {
    int s = 1;
    std::uint32_t beta = vertex;
    for (int t = n_ - 1; t > crossing; --t) {
        if (!((beta >> t) & 1u)) continue;
        beta &= ~(1u << t);
        s *= -square_sign(ctx_.square(beta, crossing, t));
    }
    return s;
}

int SignedCube::sign(std::uint32_t vertex, int crossing) const {
    if (crossing < 0 || crossing >= n_ || ((vertex >> crossing) & 1u))
        throw NoArcAtSite("no cube edge at crossing " + std::to_string(crossing));
    if (table_) {
        std::atomic<std::int8_t>& cell = (*table_)[static_cast<size_t>(vertex) * n_ + crossing];
        int s = cell.load(std::memory_order_relaxed);
        if (s == 0) {
            s = compute_sign(vertex, crossing);
            cell.store(static_cast<std::int8_t>(s), std::memory_order_relaxed);
        }
        return s;
    }
    const std::uint64_t key = (static_cast<std::uint64_t>(vertex) << 5) | crossing;
    {
        std::lock_guard<std::mutex> lock(map_memo_->mu);
        auto it = map_memo_->memo.find(key);
        if (it != map_memo_->memo.end()) return it->second;
    }
    const int s = compute_sign(vertex, crossing);
    std::lock_guard<std::mutex> lock(map_memo_->mu);
    return map_memo_->memo.emplace(key, static_cast<std::int8_t>(s)).first->second;
}

EdgeAction SignedCube::action(std::uint32_t vertex, int crossing) const {
    return ctx_.action(vertex, crossing);
}

SquareType SignedCube::square(std::uint32_t root, int c1, int c2) const {
    return ctx_.square(root, c1, c2);
}

SignedCube build_cube(BraidWord b) { return SignedCube(std::move(b)); }

namespace {

// Signed two-edge compositions around the square at (root; c1, c2), checked
// on every monomial of the touched circles' exterior algebra.
bool square_anticommutes(const SignedCube& cube, std::uint32_t root, int c1, int c2,
                         int flip_sign_1, int flip_sign_2) {
    const PlanarContext& ctx = cube.context();
    const EdgeAction a1 = ctx.action(root, c1);
    const EdgeAction a2 = ctx.action(root, c2);
    const EdgeAction b1 = ctx.action(root | (1u << c1), c2);
    const EdgeAction b2 = ctx.action(root | (1u << c2), c1);
    const long long s1 =
        static_cast<long long>(cube.sign(root, c1)) * cube.sign(root | (1u << c1), c2) * flip_sign_1;
    const long long s2 =
        static_cast<long long>(cube.sign(root, c2)) * cube.sign(root | (1u << c2), c1) * flip_sign_2;

    std::vector<int> touched{a1.in1, a2.in1};
    if (a1.merge) touched.push_back(a1.in2);
    if (a2.merge) touched.push_back(a2.in2);
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());

    for (std::uint32_t mask = 0; mask < (1u << touched.size()); ++mask) {
        Mono mono;
        for (size_t i = 0; i < touched.size(); ++i)
            if (mask & (1u << i)) mono.push_back(touched[i]);
        Poly p;
        p[mono] = 1;
        Poly r1 = apply_action(b1, apply_action(a1, p));
        Poly r2 = apply_action(b2, apply_action(a2, p));
        for (auto& [m, c] : r1) c *= s1;
        for (auto& [m, c] : r2) c *= s2;
        if (r1 != poly_negate(r2)) return false;
    }
    return true;
}

bool verify_skew_impl(const SignedCube& cube, std::int64_t flip_edge) {
    const int n = cube.crossings();
    for (std::uint32_t root = 0; root < (1u << n); ++root) {
        for (int c1 = 0; c1 < n; ++c1) {
            if ((root >> c1) & 1u) continue;
            for (int c2 = c1 + 1; c2 < n; ++c2) {
                if ((root >> c2) & 1u) continue;
                int f1 = 1, f2 = 1;
                if (flip_edge >= 0) {
                    const std::uint32_t fv = static_cast<std::uint32_t>(flip_edge >> 5);
                    const int fc = static_cast<int>(flip_edge & 31);
                    if ((fv == root && fc == c1) || (fv == (root | (1u << c1)) && fc == c2))
                        f1 = -1;
                    if ((fv == root && fc == c2) || (fv == (root | (1u << c2)) && fc == c1))
                        f2 = -1;
                }
                if (!square_anticommutes(cube, root, c1, c2, f1, f2)) return false;
            }
        }
    }
    return true;
}

} // namespace

bool verify_skew(const SignedCube& cube) { return verify_skew_impl(cube, -1); }

bool verify_skew_with_flip(const SignedCube& cube, std::uint32_t vertex, int crossing) {
    return verify_skew_impl(cube, (static_cast<std::int64_t>(vertex) << 5) | crossing);
}

std::string dump_cube(const SignedCube& cube) {
    std::ostringstream os;
    const int n = cube.crossings();
    for (std::uint32_t v = 0; v < (1u << n); ++v) {
        for (int c = 0; c < n; ++c) {
            if ((v >> c) & 1u) continue;
            std::string bits(n, '0');
            for (int j = 0; j < n; ++j)
                if ((v >> j) & 1u) bits[j] = '1';
            const EdgeAction a = cube.action(v, c);
            os << bits << ' ' << c << ' ' << (cube.sign(v, c) > 0 ? "+1" : "-1") << ' ';
            if (a.merge)
                os << "merge(" << a.in1 << ',' << a.in2 << "->" << a.out1 << ")";
            else
                os << "split(" << a.in1 << "->" << a.out1 << ',' << a.out2 << ")";
            os << '\n';
        }
    }
    return os.str();
}

} // namespace okh
