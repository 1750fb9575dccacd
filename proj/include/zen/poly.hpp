#pragma once

#include <vector>

#include <Eigen/Dense>

#include "zen/common.hpp"

namespace zen {

/// Coefficients are ascending: c[0] + c[1] z + ... + c[n] z^n.
inline Cplx poly_eval(const std::vector<Cplx>& c, Cplx z) {
    Cplx acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
}

/// Roots via the companion matrix; leading zero coefficients are trimmed.
inline std::vector<Cplx> poly_roots(const std::vector<Cplx>& coeffs) {
    std::vector<Cplx> c = coeffs;
    while (!c.empty() && std::abs(c.back()) == 0.0) c.pop_back();
    if (c.size() <= 1) return {};
    const int n = static_cast<int>(c.size()) - 1;
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -c[i] / c[n];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, /*computeEigenvectors=*/false);
    std::vector<Cplx> roots(n);
    for (int i = 0; i < n; ++i) roots[i] = es.eigenvalues()(i);
    return roots;
}

} // namespace zen
