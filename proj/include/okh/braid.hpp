#pragma once

#include <string>
#include <vector>

#include "okh/errors.hpp"

namespace okh {

// A word in the braid group B_b. Letters are nonzero integers: letter k > 0
// is the positive Artin generator sigma_k crossing strands k and k+1 (strand
// k passes over), letter -k is its inverse. Strands are numbered 1..b left
// to right; a valid letter satisfies 1 <= |letter| <= b-1.
struct BraidWord {
    std::vector<int> letters;
    int strands = 1;

    int length() const { return static_cast<int>(letters.size()); }
    int positive_count() const;
    int negative_count() const;

    // Writhe-corrected self-linking number of the braid closure as a
    // transverse link: -strands + (#positive) - (#negative).
    int self_linking() const;

    bool operator==(const BraidWord&) const = default;
};

// Validates and builds a braid word. If strands == 0 the strand count is
// inferred as max|letter| + 1 (1 for the empty word). Throws MalformedWord
// on a zero letter or strands < 1, StrandOutOfRange when a letter needs more
// strands than requested.
BraidWord make_braid(std::vector<int> letters, int strands = 0);

// Text form: comma-separated letters, with "@b" appended when b differs
// from the inferred strand count (e.g. "1,-2,1" or "1@3" or "@2").
std::string to_text(const BraidWord& b);
BraidWord parse_braid(const std::string& text);

// Letter-level edits. Indices are 0-based; delete_letter keeps the strand
// count even if the deleted letter was the only one on its strand pair.
BraidWord mirror(const BraidWord& b);
BraidWord reverse(const BraidWord& b);
BraidWord delete_letter(const BraidWord& b, int index);

// Closure connect sum: the second word's strands are spliced after the
// first's (letters shifted by b1-1), giving b1+b2-1 strands.
BraidWord connect_sum(const BraidWord& b1, const BraidWord& b2);

// Markov moves and braid-group rewrites. All return new words.
//
// conjugate: prepend -k and append k (1 <= |k| <= strands-1).
// stabilize_positive/negative: append +/-b on a new strand b+1.
// braid_relation: at `site`, apply far commutation (swap two letters on
// strand pairs at distance >= 2) or the two-generator relation (rewrite
// a,b,a -> b,a,b for same-sign letters on adjacent strand pairs); throws
// RelationNotApplicable if neither pattern matches.
BraidWord conjugate(const BraidWord& b, int k);
BraidWord stabilize_positive(const BraidWord& b);
BraidWord stabilize_negative(const BraidWord& b);
BraidWord braid_relation(const BraidWord& b, int site);

} // namespace okh
