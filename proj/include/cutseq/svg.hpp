#pragma once

#include "cutseq/farey.hpp"

#include <optional>
#include <string>

namespace cutseq {

struct DrawOptions {
    int depth = 3;                      // combinatorial radius around the base triangle
    double xmin = -2.0, xmax = 3.0;     // boundary window
    double ymax = 2.5;                  // height cutoff
    std::optional<Geodesic> geodesic;   // optional arc to draw on top
};

struct DrawResult {
    std::string svg;
    size_t edge_count = 0;   // edges emitted, equals the class="edge" paths
    std::string letters;     // letters annotated along the geodesic, in order
};

// Renders the tessellation ball of the given depth (triangles within that
// many reflections of the base triangle), clipped to the window. When a
// geodesic in the coding set is supplied, its forward letters are annotated
// at the hyperbolic midpoints of the crossing segments for as long as the
// crossed triangle is part of the rendered ball.
DrawResult render_tessellation(const DrawOptions& opts);

}  // namespace cutseq
