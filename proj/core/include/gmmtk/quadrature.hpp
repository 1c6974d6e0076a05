#pragma once

#include <functional>

#include "gmmtk/manifold.hpp"

namespace gmm {

// Adaptive Simpson on [a, b]; throws QuadratureFailure past max depth.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double abs_tol, int max_depth = 40);

// Line integral of a one-form along the projected straight segment from x0
// to x1 (nodes projected to M, derivative by central differences). The
// segment count doubles until the value stabilizes below abs_tol.
double line_integral(const EmbeddedManifold& M, const OneFormFn& alpha,
                     const Vec& x0, const Vec& x1, double abs_tol,
                     int initial_segments = 8);

// Integral along the closed polyline through the given ambient waypoints
// (each consecutive pair handled by line_integral) returning to the start.
double loop_integral(const EmbeddedManifold& M, const OneFormFn& alpha,
                     const std::vector<Vec>& waypoints, double abs_tol);

// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights);

}  // namespace gmm
