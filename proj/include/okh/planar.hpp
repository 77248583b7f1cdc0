#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "okh/braid.hpp"
#include "okh/errors.hpp"

namespace okh {

// Geometry of one resolved braid-closure diagram. The braid is laid out on
// an integer lattice: strand i runs down column x = 2i, crossing j occupies
// the box y in [4j+2, 4j+4] between its two strand columns, and the closure
// arcs return around the right of the diagram. The doubling keeps every
// probe point (arc endpoints, arc midpoints) at odd coordinates while all
// circle material stays at even ones, so inside/outside tests never hit a
// degenerate ray.
struct LatticePoint {
    long long x = 0, y = 0;
    bool operator==(const LatticePoint&) const = default;
};

// One resolved circle: its canonical label (the smallest identifier among
// the layout segments it traverses) and its closed lattice polygon.
struct Circle {
    int label = 0;
    std::vector<LatticePoint> polygon;
};

// The surgery arc sitting at a 0-state crossing site: where the other
// smoothing would cut. Its endpoints and direction drive the merge/split
// bookkeeping. `touched` lists the labels of the circles its endpoints lie
// on (one label for a split site, two for a merge site).
struct SurgeryArc {
    int crossing = 0;
    LatticePoint tail, head;
    std::vector<int> touched;
};

struct PlanarResolution {
    BraidWord braid;
    std::uint32_t vertex = 0;
    std::vector<Circle> circles;                  // label-ascending
    std::vector<std::optional<SurgeryArc>> arcs;  // one slot per crossing
};

// What flipping a 0-state crossing does to the circles.
//   merge: in1 < in2 are the two joined labels; out1 is the kept label
//          (always in1, the smaller).
//   split: in1 is the parent label; out1 is the circle on the arc's tail
//          side under the induced-arrow rule (rotate the arc 90deg
//          counterclockwise; the side it then points away from), out2 the
//          head side.
struct EdgeAction {
    bool merge = false;
    int in1 = 0, in2 = 0, out1 = 0, out2 = 0;
};

// Commutation type of a square face of the resolution cube. sgn values:
// A and X faces carry -1, C and Y faces +1.
enum class SquareType { A, C, X, Y };
int square_sign(SquareType t);
char square_letter(SquareType t);

// Lightweight per-vertex circle data used by cube assembly: count, sorted
// labels, and the circle index of every active layout segment.
struct VertexCircles {
    int count = 0;
    std::vector<int> labels;
    std::vector<int> segment_circle;  // segment id -> index into labels, -1 inactive
};

// Shared geometry engine for one braid word: owns the segment layout and
// caches per-vertex traces and square classifications. Safe for concurrent
// readers.
class PlanarContext {
  public:
    explicit PlanarContext(BraidWord b);

    const BraidWord& braid() const;
    int crossings() const;

    const VertexCircles& vertex_circles(std::uint32_t vertex) const;
    EdgeAction action(std::uint32_t vertex, int crossing) const;
    SquareType square(std::uint32_t root, int c1, int c2) const;
    PlanarResolution full_resolution(std::uint32_t vertex) const;

  private:
    struct Impl;
    std::shared_ptr<Impl> impl_;
};

// The vertex where every positive crossing takes its 0-smoothing and every
// negative crossing its 1-smoothing; the braid axis separates the resolved
// diagram into parallel bands there.
std::uint32_t alpha_prime(const BraidWord& b);

// One-shot conveniences over a fresh PlanarContext.
PlanarResolution resolve(const BraidWord& b, std::uint32_t vertex);
EdgeAction arc_action(const PlanarResolution& res, int crossing);
SquareType classify_square(const BraidWord& b, std::uint32_t root, int c1, int c2);

} // namespace okh
