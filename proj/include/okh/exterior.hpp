#pragma once

#include <map>
#include <vector>

#include "okh/planar.hpp"

namespace okh {

// Elements of an exterior algebra on integer circle labels: a sorted label
// list (a square-free monomial) mapped to its integer coefficient. The zero
// element stores nothing.
using Mono = std::vector<int>;
using Poly = std::map<Mono, long long>;

bool mono_has(const Mono& m, int x);
void poly_add(Poly& p, const Mono& m, long long c);
Poly poly_negate(Poly p);

// Replace label `from` by `to` in a sorted monomial, recording the parity
// of the resort. `from < 0` means no substitution. Returns false when `to`
// already appears (the monomial dies).
bool mono_substitute(const Mono& in, int from, int to, Mono& out, int& parity);

// p += c * (v_x wedge m); drops the term if x already appears in m.
void wedge_add(Poly& p, int x, const Mono& m, long long c);

// The unsigned chain map of one cube edge on exterior monomials: a merge
// identifies the two incoming labels (squares die), a split substitutes the
// parent and wedges (v_a0 - v_a1) on the left.
Poly apply_action(const EdgeAction& a, const Poly& p);

} // namespace okh
