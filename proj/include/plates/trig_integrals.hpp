#pragma once

#include "plates/types.hpp"

namespace plates {

// Closed-form integrals of oscillatory factors against constant and linear
// weights. All frequencies are in radians (the 2*pi factors are the caller's).

// int_a^b cos(w t + p) dt
double int_cos(double w, double p, double a, double b);
// int_a^b t cos(w t + p) dt
double int_t_cos(double w, double p, double a, double b);

// int over [a1,b1]x[a2,b2] of cos(w . y + p) dy
double rect_cos(const Vec2& w, double p, const Vec2& lo, const Vec2& hi);

// Gauss-Legendre nodes/weights on [-1,1].
void gauss_rule(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace plates
