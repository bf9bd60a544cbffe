#pragma once

// Classical ground truth for the bracket, computed without any groupoid or
// infinitesimal machinery.

#include <stdexcept>
#include <vector>

#include "sdg/matrix.hpp"
#include "sdg/polynomial.hpp"

namespace sdg::oracle {

/// Polynomial vector field on R^n.
struct PolyVectorField {
  std::size_t dimension;
  std::vector<Polynomial> components;

  PolyVectorField(std::size_t n, std::vector<Polynomial> comps) : dimension(n), components(std::move(comps)) {
    if (components.size() != dimension) throw std::invalid_argument("component count must equal the dimension");
  }
  friend bool operator==(const PolyVectorField&, const PolyVectorField&) = default;
};

/// Jacobi-Lie bracket: [xi, eta]_i = sum_j xi_j d(eta_i)/dx_j - eta_j d(xi_i)/dx_j.
inline PolyVectorField classical_vf_bracket(const PolyVectorField& xi, const PolyVectorField& eta) {
  if (xi.dimension != eta.dimension) throw std::invalid_argument("vector fields of different dimensions");
  const std::size_t n = xi.dimension;
  std::vector<Polynomial> out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out[i] += xi.components[j] * eta.components[i].derivative(j) - eta.components[j] * xi.components[i].derivative(j);
  return PolyVectorField(n, std::move(out));
}

/// Pointwise Y(x) X(x) - X(x) Y(x). The order is the one produced by
/// expanding (I - d2 B)(I - d1 A)(I + d2 B)(I + d1 A) = I + d1 d2 (BA - AB).
inline std::vector<Matrix> matrix_table_bracket(const std::vector<Matrix>& X, const std::vector<Matrix>& Y) {
  if (X.size() != Y.size()) throw std::invalid_argument("matrix tables over different bases");
  std::vector<Matrix> out;
  out.reserve(X.size());
  for (std::size_t x = 0; x < X.size(); ++x) {
    if (X[x].rows() != Y[x].rows() || X[x].cols() != Y[x].cols() || X[x].rows() != X[x].cols())
      throw std::invalid_argument("matrix table shape mismatch");
    out.push_back(Y[x] * X[x] - X[x] * Y[x]);
  }
  return out;
}

}  // namespace sdg::oracle
