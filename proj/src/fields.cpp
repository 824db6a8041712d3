#include "peakon/fields.hpp"

#include "peakon/errors.hpp"
#include "peakon/helmholtz.hpp"

#include <cmath>

namespace peakon {

void check_theta(double theta) {
  if (!(theta >= 0.0 && theta < kPi)) throw InvalidParameter("theta must lie in [0, pi)");
}

FieldBundle assemble_fields(const GridFunction& m, double theta) {
  check_theta(theta);
  if (!m.is_finite()) throw BlownUpState("fields requested on a non-finite state");
  GridFunction u = u_from_m(m);
  GridFunction ux = ux_from_m(m);
  const cplx e = std::polar(1.0, theta);
  ArrayXcd vp = u.values() + ux.values();
  ArrayXcd vm = u.values() - ux.values();
  ArrayXcd Q = vp * vm.conjugate();
  ArrayXcd Qx = vp * m.values().conjugate() - vm.conjugate() * m.values();
  ArrayXcd eQ = e * Q;
  ArrayXd J = eQ.real();
  ArrayXd Jx = (e * Qx).real();
  ArrayXcd K(m.size());
  K.real() = -Jx;
  K.imag() = eQ.imag();
  return FieldBundle{theta,         m,           std::move(u), std::move(ux), std::move(vp), std::move(vm),
                     std::move(Q),  std::move(Qx), std::move(J), std::move(Jx), std::move(K)};
}

double qx_consistency_residual(const FieldBundle& b) {
  const GridFunction dQ = spectral_derivative(GridFunction(b.grid(), b.Q));
  return (dQ.values() - b.Qx).abs().maxCoeff();
}

}  // namespace peakon
