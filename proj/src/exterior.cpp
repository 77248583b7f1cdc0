#include "okh/exterior.hpp"

#include <algorithm>

namespace okh {

bool mono_has(const Mono& m, int x) {
    return std::binary_search(m.begin(), m.end(), x);
}

void poly_add(Poly& p, const Mono& m, long long c) {
    if (c == 0) return;
    auto [it, fresh] = p.try_emplace(m, 0);
    it->second += c;
    if (it->second == 0) p.erase(it);
}

Poly poly_negate(Poly p) {
    for (auto& [m, c] : p) c = -c;
    return p;
}

bool mono_substitute(const Mono& in, int from, int to, Mono& out, int& parity) {
    out = in;
    parity = 1;
    if (from < 0 || from == to) return true;
    auto it = std::find(out.begin(), out.end(), from);
    const int i = static_cast<int>(it - out.begin());
    out.erase(it);
    if (mono_has(out, to)) return false;
    const int j = static_cast<int>(std::lower_bound(out.begin(), out.end(), to) - out.begin());
    out.insert(out.begin() + j, to);
    if ((i - j) % 2 != 0) parity = -1;
    return true;
}

void wedge_add(Poly& p, int x, const Mono& m, long long c) {
    if (mono_has(m, x)) return;
    const int j = static_cast<int>(std::lower_bound(m.begin(), m.end(), x) - m.begin());
    Mono out = m;
    out.insert(out.begin() + j, x);
    poly_add(p, out, (j % 2 == 0) ? c : -c);
}

Poly apply_action(const EdgeAction& a, const Poly& p) {
    Poly out;
    for (const auto& [mono, c] : p) {
        if (a.merge) {
            const bool h1 = mono_has(mono, a.in1), h2 = mono_has(mono, a.in2);
            if (h1 && h2) continue;  // repeated label after identification
            Mono m2;
            int par = 1;
            if (!mono_substitute(mono, h2 ? a.in2 : -1, a.out1, m2, par)) continue;
            poly_add(out, m2, c * par);
        } else {
            Mono m2;
            int par = 1;
            // Either offspring may stand in for the parent; the wedge in
            // front makes the choice immaterial.
            if (!mono_substitute(mono, mono_has(mono, a.in1) ? a.in1 : -1, a.out1, m2, par))
                continue;
            wedge_add(out, a.out1, m2, c * par);
            wedge_add(out, a.out2, m2, -c * par);
        }
    }
    return out;
}

} // namespace okh
