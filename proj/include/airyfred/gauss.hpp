#pragma once

#include <vector>

namespace af {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Nodes and weights for an n-point Gauss-Legendre rule, accurate to ~1e-15.
/// Results are cached per n.
const GaussLegendre& gauss_legendre(int n);

/// The same rule mapped to [a, b].
GaussLegendre gauss_legendre_on(int n, double a, double b);

} // namespace af
