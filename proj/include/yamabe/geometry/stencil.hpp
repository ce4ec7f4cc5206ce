#pragma once

#include <span>
#include <vector>

namespace yamabe::geometry {

/// Finite-difference weights (Fornberg's recursion) for derivatives of order
/// 0..max_order at x0 using the given nodes. weights[m][j] multiplies u(nodes[j])
/// in the approximation of the m-th derivative.
std::vector<std::vector<double>> fd_weights(double x0, std::span<const double> nodes, int max_order);

/// Per-node first and second derivative stencils on a 1-D grid.
///
/// Interior nodes use the three-point stencil {i-1, i, i+1}; the first
/// derivative at an end node uses three one-sided points and the second
/// derivative four, so both are second order on uniform grids.
struct NodeStencil {
    int first = 0;              ///< index of the first node used
    std::vector<double> d1;     ///< weights for u', starting at `first`
    std::vector<double> d2;     ///< weights for u'', starting at `first`
};

std::vector<NodeStencil> build_stencils(std::span<const double> grid);

} // namespace yamabe::geometry
