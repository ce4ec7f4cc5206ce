#include "yamabe/geometry/stencil.hpp"

#include "yamabe/errors.hpp"

#include <algorithm>

namespace yamabe::geometry {

std::vector<std::vector<double>> fd_weights(double x0, std::span<const double> nodes, int max_order) {
    const int np = static_cast<int>(nodes.size());
    if (np == 0 || max_order < 0) throw ArgumentError("fd_weights: empty stencil");
    std::vector<std::vector<double>> c(static_cast<std::size_t>(max_order) + 1,
                                       std::vector<double>(nodes.size(), 0.0));
    double c1 = 1.0;
    double c4 = nodes[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i < np; ++i) {
        const int mn = std::min(i, max_order);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = nodes[i] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for (int k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    return c;
}

std::vector<NodeStencil> build_stencils(std::span<const double> grid) {
    const int n = static_cast<int>(grid.size());
    if (n < 4) throw ArgumentError("build_stencils: need at least 4 nodes");
    std::vector<NodeStencil> out(grid.size());
    auto make = [&](int node, int first1, int len1, int first2, int len2) {
        NodeStencil s;
        // Store both stencils over a common window starting at min(first1, first2).
        s.first = std::min(first1, first2);
        const int last = std::max(first1 + len1, first2 + len2);
        const int width = last - s.first;
        s.d1.assign(static_cast<std::size_t>(width), 0.0);
        s.d2.assign(static_cast<std::size_t>(width), 0.0);
        const auto w1 = fd_weights(grid[node], grid.subspan(first1, len1), 1);
        const auto w2 = fd_weights(grid[node], grid.subspan(first2, len2), 2);
        for (int j = 0; j < len1; ++j) s.d1[first1 - s.first + j] = w1[1][j];
        for (int j = 0; j < len2; ++j) s.d2[first2 - s.first + j] = w2[2][j];
        return s;
    };
    out.front() = make(0, 0, 3, 0, 4);
    out.back() = make(n - 1, n - 3, 3, n - 4, 4);
    for (int i = 1; i + 1 < n; ++i) out[i] = make(i, i - 1, 3, i - 1, 3);
    return out;
}

} // namespace yamabe::geometry
