#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "okh/braid.hpp"
#include "okh/planar.hpp"

namespace okh {

// The resolution hypercube of a braid closure with the edge signs that make
// every square face anticommute. Edge (vertex, crossing) is the arrow from
// `vertex` (state 0 at `crossing`) to `vertex` with that bit set.
//
// Signs come from the recursion on the last crossing: the sub-cube where it
// stays 0 keeps its own signs, an edge with the last crossing already
// flipped gets -(sign of its shadow edge) * sgn(square spanned by the two
// crossings), and the connecting edges get +1. Signs are computed on demand
// and memoized, so partial traversals of large cubes stay cheap.
class SignedCube {
  public:
    explicit SignedCube(BraidWord b);

    const BraidWord& braid() const { return braid_; }
    int crossings() const { return n_; }
    const PlanarContext& context() const { return ctx_; }

    int sign(std::uint32_t vertex, int crossing) const;
    EdgeAction action(std::uint32_t vertex, int crossing) const;
    SquareType square(std::uint32_t root, int c1, int c2) const;

  private:
    int compute_sign(std::uint32_t vertex, int crossing) const;

    BraidWord braid_;
    PlanarContext ctx_;
    int n_ = 0;
    // Flat memo for cubes whose table fits comfortably; 0 = not yet computed.
    std::shared_ptr<std::vector<std::atomic<std::int8_t>>> table_;
    // Fallback memo for very wide words.
    struct MapMemo {
        std::mutex mu;
        std::unordered_map<std::uint64_t, std::int8_t> memo;
    };
    std::shared_ptr<MapMemo> map_memo_;
};

SignedCube build_cube(BraidWord b);

// True iff every square anticommutes after signing: the signed composition
// around one side equals minus the other, as exterior-algebra maps.
bool verify_skew(const SignedCube& cube);

// Variant used by tests: report whether the cube would still verify after
// flipping one edge's sign (it must not, on a commuting-type square).
bool verify_skew_with_flip(const SignedCube& cube, std::uint32_t vertex, int crossing);

// Debug listing, one line per edge: "vertex-bitstring crossing sign action",
// sorted by (vertex, crossing); crossing 0 is the leftmost bit.
std::string dump_cube(const SignedCube& cube);

} // namespace okh
