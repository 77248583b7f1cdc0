#include "okh/planar.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "okh/exterior.hpp"

namespace okh {

int square_sign(SquareType t) {
    return (t == SquareType::A || t == SquareType::X) ? -1 : +1;
}

char square_letter(SquareType t) {
    switch (t) {
        case SquareType::A: return 'A';
        case SquareType::C: return 'C';
        case SquareType::X: return 'X';
        default: return 'Y';
    }
}

namespace {

long long pt_key(const LatticePoint& p) {
    return ((p.x + (1LL << 20)) << 26) | (p.y + (1LL << 20));
}

LatticePoint midpoint(const LatticePoint& a, const LatticePoint& b) {
    return {(a.x + b.x) / 2, (a.y + b.y) / 2};
}

long long visual_area2(const std::vector<LatticePoint>& poly) {
    // Shoelace in screen coordinates (y grows downward), negated so that a
    // visually counterclockwise polygon comes out positive.
    long long raw = 0;
    const size_t m = poly.size();
    for (size_t i = 0; i < m; ++i) {
        const auto& u = poly[i];
        const auto& v = poly[(i + 1) % m];
        raw += u.x * v.y - v.x * u.y;
    }
    return -raw;
}

bool point_inside(const LatticePoint& p, const std::vector<LatticePoint>& poly) {
    // Even-odd ray cast toward +x. Probe points have odd coordinates and the
    // polygon only even ones, so no boundary case arises.
    int crossings = 0;
    const size_t m = poly.size();
    for (size_t i = 0; i < m; ++i) {
        const auto& u = poly[i];
        const auto& v = poly[(i + 1) % m];
        if (u.x != v.x) continue;  // horizontal edges never cross an odd-y ray
        if (u.x <= p.x) continue;
        const long long lo = std::min(u.y, v.y), hi = std::max(u.y, v.y);
        if (lo < p.y && p.y < hi) ++crossings;
    }
    return crossings % 2 == 1;
}

} // namespace

// ---------------------------------------------------------------------------

struct PlanarContext::Impl {
    BraidWord braid;
    int b = 1, n = 0;
    std::vector<int> site;  // crossing -> left strand (1-based)

    struct Seg {
        std::vector<LatticePoint> pts;
    };
    std::vector<Seg> segs;  // persistent first, then 4 smoothing slots/crossing
    int pcount = 0;
    std::unordered_map<long long, std::vector<int>> at_point;

    mutable std::mutex trace_mu, square_mu;
    mutable std::unordered_map<std::uint32_t, VertexCircles> traces;
    mutable std::unordered_map<std::uint64_t, SquareType> squares;

    explicit Impl(BraidWord bw) : braid(std::move(bw)) {
        b = braid.strands;
        n = braid.length();
        if (n > 30) throw Error("braid word too long for 32-bit resolution masks");
        site.resize(n);
        for (int j = 0; j < n; ++j) site[j] = std::abs(braid.letters[j]);
        build_segments();
    }

    void add_seg(std::vector<LatticePoint> pts) {
        const int id = static_cast<int>(segs.size());
        at_point[pt_key(pts.front())].push_back(id);
        at_point[pt_key(pts.back())].push_back(id);
        segs.push_back(Seg{std::move(pts)});
    }

    // Strand i occupies column x=2i; crossing j the box y in [4j+2, 4j+4].
    // Persistent segments (strand gaps and closure returns) get the low ids,
    // in strand order, so canonical labels at the braid-axis vertex come out
    // in strand order too.
    void build_segments() {
        for (int i = 1; i <= b; ++i) {
            const long long x = 2 * i;
            long long y = 0;
            for (int j = 0; j < n; ++j) {
                if (site[j] == i || site[j] + 1 == i) {
                    add_seg({{x, y}, {x, 4LL * j + 2}});
                    y = 4LL * j + 4;
                }
            }
            add_seg({{x, y}, {x, 4LL * n + 2}});
            // Closure returns nest like a rainbow: the rightmost strand takes
            // the innermost, shallowest detour so the arcs never cross.
            const long long depth = b + 1 - i;
            add_seg({{x, 4LL * n + 2},
                     {x, 4LL * n + 2 + 2 * depth},
                     {2LL * (2 * b + 1 - i), 4LL * n + 2 + 2 * depth},
                     {2LL * (2 * b + 1 - i), -2LL * depth},
                     {x, -2LL * depth},
                     {x, 0}});
        }
        pcount = static_cast<int>(segs.size());
        for (int j = 0; j < n; ++j) {
            const long long xl = 2 * site[j], xr = xl + 2;
            const long long yt = 4LL * j + 2, yb = 4LL * j + 4;
            add_seg({{xl, yt}, {xl, yb}});  // slot 0: identity, left strand
            add_seg({{xr, yt}, {xr, yb}});  // slot 1: identity, right strand
            add_seg({{xl, yt}, {xr, yt}});  // slot 2: cap-cup, top chord
            add_seg({{xl, yb}, {xr, yb}});  // slot 3: cap-cup, bottom chord
        }
    }

    int smoothing_seg(int crossing, int slot) const { return pcount + 4 * crossing + slot; }

    bool seg_active(int id, std::uint32_t v) const {
        if (id < pcount) return true;
        const int rel = id - pcount, j = rel / 4, slot = rel % 4;
        const bool positive = braid.letters[j] > 0;
        const bool identity_now = (((v >> j) & 1u) == 0) == positive;
        return (slot < 2) ? identity_now : !identity_now;
    }

    int next_at(const LatticePoint& p, int cur, std::uint32_t v) const {
        for (int cand : at_point.at(pt_key(p)))
            if (cand != cur && seg_active(cand, v)) return cand;
        throw Error("internal: open strand end while tracing a resolution");
    }

    const VertexCircles& vertex_circles(std::uint32_t v) const {
        {
            std::lock_guard lock(trace_mu);
            auto it = traces.find(v);
            if (it != traces.end()) return it->second;
        }
        VertexCircles out;
        out.segment_circle.assign(segs.size(), -1);
        std::vector<char> visited(segs.size(), 0);
        std::vector<int> mins;                    // per raw circle
        std::vector<std::vector<int>> members;
        for (int s = 0; s < static_cast<int>(segs.size()); ++s) {
            if (visited[s] || !seg_active(s, v)) continue;
            int minid = s;
            std::vector<int> circle;
            int cur = s;
            LatticePoint entry = segs[s].pts.front();
            do {
                visited[cur] = 1;
                circle.push_back(cur);
                minid = std::min(minid, cur);
                const auto& sp = segs[cur].pts;
                const LatticePoint exit = (entry == sp.front()) ? sp.back() : sp.front();
                cur = next_at(exit, cur, v);
                entry = exit;
            } while (cur != s);
            mins.push_back(minid);
            members.push_back(std::move(circle));
        }
        std::vector<int> order(mins.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
        std::sort(order.begin(), order.end(), [&](int a, int c) { return mins[a] < mins[c]; });
        out.count = static_cast<int>(order.size());
        for (size_t rank = 0; rank < order.size(); ++rank) {
            out.labels.push_back(mins[order[rank]]);
            for (int seg : members[order[rank]])
                out.segment_circle[seg] = static_cast<int>(rank);
        }
        std::lock_guard lock(trace_mu);
        return traces.emplace(v, std::move(out)).first->second;
    }

    EdgeAction action(std::uint32_t v, int c) const {
        if (c < 0 || c >= n || ((v >> c) & 1u))
            throw NoArcAtSite("no surgery arc at crossing " + std::to_string(c));
        const VertexCircles& info = vertex_circles(v);
        const bool positive = braid.letters[c] > 0;
        const int tailseg = smoothing_seg(c, positive ? 0 : 2);
        const int headseg = smoothing_seg(c, positive ? 1 : 3);
        const int lt = info.labels[info.segment_circle[tailseg]];
        const int lh = info.labels[info.segment_circle[headseg]];
        EdgeAction act;
        if (lt != lh) {
            act.merge = true;
            act.in1 = std::min(lt, lh);
            act.in2 = std::max(lt, lh);
            act.out1 = act.in1;
            return act;
        }
        // Split: read the two offspring off the flipped resolution. Rotating
        // the arc 90deg counterclockwise (on screen) points it at the a1
        // offspring: for a positive site (arc pointing right) that is the
        // top chord's circle, for a negative site (arc pointing down) the
        // right identity strand's circle.
        const VertexCircles& tinfo = vertex_circles(v | (1u << c));
        const int a0seg = smoothing_seg(c, positive ? 3 : 0);
        const int a1seg = smoothing_seg(c, positive ? 2 : 1);
        act.merge = false;
        act.in1 = lt;
        act.out1 = tinfo.labels[tinfo.segment_circle[a0seg]];
        act.out2 = tinfo.labels[tinfo.segment_circle[a1seg]];
        return act;
    }

    std::pair<LatticePoint, LatticePoint> arc_ends(int c) const {
        const long long xl = 2 * site[c], xr = xl + 2;
        const long long yt = 4LL * c + 2, yb = 4LL * c + 4;
        if (braid.letters[c] > 0) return {{xl, yt + 1}, {xr, yt + 1}};
        return {{xl + 1, yt}, {xl + 1, yb}};
    }

    PlanarResolution full_resolution(std::uint32_t v) const {
        PlanarResolution res;
        res.braid = braid;
        res.vertex = v;
        const VertexCircles& info = vertex_circles(v);

        std::vector<char> visited(segs.size(), 0);
        std::vector<Circle> raw;
        std::vector<int> mins;
        for (int s = 0; s < static_cast<int>(segs.size()); ++s) {
            if (visited[s] || !seg_active(s, v)) continue;
            Circle circ;
            int minid = s;
            int cur = s;
            LatticePoint entry = segs[s].pts.front();
            do {
                visited[cur] = 1;
                minid = std::min(minid, cur);
                const auto& sp = segs[cur].pts;
                const bool fwd = (entry == sp.front());
                // append all but the exit point; junctions appear once
                if (fwd)
                    circ.polygon.insert(circ.polygon.end(), sp.begin(), sp.end() - 1);
                else
                    circ.polygon.insert(circ.polygon.end(), sp.rbegin(), sp.rend() - 1);
                const LatticePoint exit = fwd ? sp.back() : sp.front();
                cur = next_at(exit, cur, v);
                entry = exit;
            } while (cur != s);
            circ.label = minid;
            raw.push_back(std::move(circ));
            mins.push_back(minid);
        }
        std::vector<int> order(raw.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
        std::sort(order.begin(), order.end(), [&](int a, int c) { return mins[a] < mins[c]; });
        for (int idx : order) res.circles.push_back(std::move(raw[idx]));

        res.arcs.resize(n);
        for (int c = 0; c < n; ++c) {
            if ((v >> c) & 1u) continue;
            SurgeryArc arc;
            arc.crossing = c;
            std::tie(arc.tail, arc.head) = arc_ends(c);
            const bool positive = braid.letters[c] > 0;
            const int lt = info.labels[info.segment_circle[smoothing_seg(c, positive ? 0 : 2)]];
            const int lh = info.labels[info.segment_circle[smoothing_seg(c, positive ? 1 : 3)]];
            arc.touched.push_back(std::min(lt, lh));
            if (lt != lh) arc.touched.push_back(std::max(lt, lh));
            res.arcs[c] = std::move(arc);
        }
        return res;
    }

    SquareType square(std::uint32_t root, int c1, int c2) const {
        if (c1 > c2) std::swap(c1, c2);
        if (c1 < 0 || c2 >= n || c1 == c2 || ((root >> c1) & 1u) || ((root >> c2) & 1u))
            throw NotASquareRoot("square root must have state 0 at two distinct crossings");
        const std::uint64_t key =
            (static_cast<std::uint64_t>(root) << 20) | (static_cast<std::uint64_t>(c1) << 10) |
            static_cast<std::uint64_t>(c2);
        {
            std::lock_guard lock(square_mu);
            auto it = squares.find(key);
            if (it != squares.end()) return it->second;
        }
        const SquareType t = classify(root, c1, c2);
        std::lock_guard lock(square_mu);
        return squares.emplace(key, t).first->second;
    }

    SquareType classify(std::uint32_t root, int c1, int c2) const {
        const EdgeAction a1 = action(root, c1);
        const EdgeAction a2 = action(root, c2);
        const EdgeAction b1 = action(root | (1u << c1), c2);
        const EdgeAction b2 = action(root | (1u << c2), c1);

        std::vector<int> touched{a1.in1, a2.in1};
        if (a1.merge) touched.push_back(a1.in2);
        if (a2.merge) touched.push_back(a2.in2);
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());

        bool all_equal = true, all_opposite = true, any_nonzero = false;
        const size_t tcount = touched.size();
        for (std::uint32_t mask = 0; mask < (1u << tcount); ++mask) {
            Mono mono;
            for (size_t i = 0; i < tcount; ++i)
                if (mask & (1u << i)) mono.push_back(touched[i]);
            Poly p;
            p[mono] = 1;
            const Poly r1 = apply_action(b1, apply_action(a1, p));
            const Poly r2 = apply_action(b2, apply_action(a2, p));
            if (!r1.empty() || !r2.empty()) any_nonzero = true;
            if (r1 != r2) all_equal = false;
            if (r1 != poly_negate(r2)) all_opposite = false;
        }
        if (any_nonzero) {
            if (all_equal) return SquareType::C;
            if (all_opposite) return SquareType::A;
            throw Error("internal: square compositions neither equal nor opposite");
        }

        // Both compositions vanish: one circle, two interleaved split arcs,
        // one inside and one outside. Walk the circle counterclockwise from
        // the inside arc's tail; meeting the outside arc's tail first is X,
        // its head first is Y.
        if (a1.merge || a2.merge || a1.in1 != a2.in1)
            throw Error("internal: zero square without the one-circle split pattern");
        const PlanarResolution res = full_resolution(root);
        const Circle* circle = nullptr;
        for (const Circle& c : res.circles)
            if (c.label == a1.in1) circle = &c;
        if (!circle) throw Error("internal: parent circle missing from resolution");

        const SurgeryArc& arc1 = *res.arcs[c1];
        const SurgeryArc& arc2 = *res.arcs[c2];
        const bool in1 = point_inside(midpoint(arc1.tail, arc1.head), circle->polygon);
        const bool in2 = point_inside(midpoint(arc2.tail, arc2.head), circle->polygon);
        if (in1 == in2) throw Error("internal: interleaved arcs not separated by the circle");
        const SurgeryArc& inner = in1 ? arc1 : arc2;
        const SurgeryArc& outer = in1 ? arc2 : arc1;

        std::vector<LatticePoint> poly = circle->polygon;
        if (visual_area2(poly) < 0) std::reverse(poly.begin(), poly.end());

        const size_t m = poly.size();
        std::vector<long long> prefix(m + 1, 0);
        for (size_t i = 0; i < m; ++i) {
            const auto& u = poly[i];
            const auto& v = poly[(i + 1) % m];
            prefix[i + 1] = prefix[i] + std::llabs(v.x - u.x) + std::llabs(v.y - u.y);
        }
        const long long total = prefix[m];
        auto locate = [&](const LatticePoint& p) -> long long {
            for (size_t i = 0; i < m; ++i) {
                const auto& u = poly[i];
                const auto& v = poly[(i + 1) % m];
                if (u.x == v.x && p.x == u.x) {
                    const long long lo = std::min(u.y, v.y), hi = std::max(u.y, v.y);
                    if (lo < p.y && p.y < hi) return prefix[i] + std::llabs(p.y - u.y);
                } else if (u.y == v.y && p.y == u.y) {
                    const long long lo = std::min(u.x, v.x), hi = std::max(u.x, v.x);
                    if (lo < p.x && p.x < hi) return prefix[i] + std::llabs(p.x - u.x);
                }
            }
            throw Error("internal: arc endpoint not on its circle");
        };
        const long long t0 = locate(inner.tail);
        const long long dt = ((locate(outer.tail) - t0) % total + total) % total;
        const long long dh = ((locate(outer.head) - t0) % total + total) % total;
        return dt < dh ? SquareType::X : SquareType::Y;
    }
};

PlanarContext::PlanarContext(BraidWord b) : impl_(std::make_shared<Impl>(std::move(b))) {}

const BraidWord& PlanarContext::braid() const { return impl_->braid; }
int PlanarContext::crossings() const { return impl_->n; }

const VertexCircles& PlanarContext::vertex_circles(std::uint32_t vertex) const {
    return impl_->vertex_circles(vertex);
}

EdgeAction PlanarContext::action(std::uint32_t vertex, int crossing) const {
    return impl_->action(vertex, crossing);
}

SquareType PlanarContext::square(std::uint32_t root, int c1, int c2) const {
    return impl_->square(root, c1, c2);
}

PlanarResolution PlanarContext::full_resolution(std::uint32_t vertex) const {
    return impl_->full_resolution(vertex);
}

std::uint32_t alpha_prime(const BraidWord& b) {
    std::uint32_t v = 0;
    for (int j = 0; j < b.length(); ++j)
        if (b.letters[j] < 0) v |= (1u << j);
    return v;
}

PlanarResolution resolve(const BraidWord& b, std::uint32_t vertex) {
    if (b.length() < 32 && (vertex >> b.length()) != 0)
        throw IndexError("resolution bitmask wider than the crossing count");
    return PlanarContext(b).full_resolution(vertex);
}

EdgeAction arc_action(const PlanarResolution& res, int crossing) {
    return PlanarContext(res.braid).action(res.vertex, crossing);
}

SquareType classify_square(const BraidWord& b, std::uint32_t root, int c1, int c2) {
    return PlanarContext(b).square(root, c1, c2);
}

} // namespace okh
