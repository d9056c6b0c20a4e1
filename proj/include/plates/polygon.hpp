#pragma once

#include <vector>

#include "plates/types.hpp"

namespace plates {

// Convex polygons, counter-clockwise vertex order.
using Polygon = std::vector<Vec2>;

double poly_area(const Polygon& p);

// Keeps the part of p where values[v] (a signed level function evaluated at
// each vertex, linear along edges) is <= 0. Vertex values are supplied by the
// caller so that degenerate cases can be classified exactly (e.g. integer
// lattice coincidences snapped to 0 beforehand).
Polygon clip_by_values(const Polygon& p, const std::vector<double>& values);

// Convenience: clip against the half-plane n . y <= c.
Polygon clip_halfplane(const Polygon& p, const Vec2& n, double c);

// int over p of cos(w . y + phase) dA, closed form via the divergence theorem.
double poly_cos(const Polygon& p, const Vec2& w, double phase);

// (int y1 dA, int y2 dA) over p.
Vec2 poly_moment1(const Polygon& p);

}  // namespace plates
