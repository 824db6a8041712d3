#pragma once

#include "peakon/grid.hpp"

namespace peakon {

/**
 * Nonlinear fields built from the momentum m at family parameter theta:
 *   Q   = (u + u_x) conj(u - u_x)
 *   Q_x = (u + u_x) conj(m) - conj(u - u_x) m
 *   J   = Re(e^{i theta} Q),   J_x = Re(e^{i theta} Q_x)
 *   K   = i Im(e^{i theta} Q) - J_x
 * J and J_x are stored as real arrays.
 */
struct FieldBundle {
  double theta;
  GridFunction m;
  GridFunction u;
  GridFunction ux;
  ArrayXcd v_plus;
  ArrayXcd v_minus;
  ArrayXcd Q;
  ArrayXcd Qx;
  ArrayXd J;
  ArrayXd Jx;
  ArrayXcd K;

  const Grid& grid() const noexcept { return m.grid(); }
};

// Throws InvalidParameter unless theta lies in [0, pi).
void check_theta(double theta);

FieldBundle assemble_fields(const GridFunction& m, double theta);

// sup |spectral_derivative(Q) - Q_x|
double qx_consistency_residual(const FieldBundle& b);

}  // namespace peakon
