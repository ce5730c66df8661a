// Coefficients of the published example states, kept in one place.

#include <cmath>

#include "precession/entanglement.hpp"
#include "precession/linalg.hpp"

namespace precession {

namespace {

CVector kron_vec(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a[i] * b;
  return out;
}

}  // namespace

// psi_4 = (sqrt6+1)/6 Phi+ Phi+ + (sqrt6-1)/6 Phi- Phi- + 1/3 Psi+ Psi+
//         + 1/2 (Phi+ Psi+ + Psi+ Phi+)
// Qubit basis (up, down) with m descending. The down vector carries a minus
// sign, which flips the sign of Psi+ and therefore of the two cross terms.
// Under the plain (1, 0), (0, 1) basis the stated scores are not reproduced;
// the two conventions differ by exp(-i pi J_z).
CVector psi4_state() {
  CVector up(2), dn(2);
  up << 1.0, 0.0;
  dn << 0.0, -1.0;
  const double r = 1.0 / std::sqrt(2.0);
  const CVector phi_p = r * (kron_vec(up, up) + kron_vec(dn, dn));
  const CVector phi_m = r * (kron_vec(up, up) - kron_vec(dn, dn));
  const CVector psi_p = r * (kron_vec(up, dn) + kron_vec(dn, up));
  const double s6 = std::sqrt(6.0);
  return (s6 + 1.0) / 6.0 * kron_vec(phi_p, phi_p) + (s6 - 1.0) / 6.0 * kron_vec(phi_m, phi_m) +
         (1.0 / 3.0) * kron_vec(psi_p, psi_p) + 0.5 * (kron_vec(phi_p, psi_p) + kron_vec(psi_p, phi_p));
}

// chi_4 = [2 cos(10/17)|0> - sqrt5 sin(2/3)|1> + 2 sin(10/17)|2> - sqrt5 cos(2/3)|3> + |4>] / sqrt10
// on the collective mode (the other mode is in vacuum). Norm: 4 + 5 + 1 = 10.
// Returned after exp(i pi^2/4 N), i.e. with probing times measured from the
// middle angle.
CVector chi4_state() {
  CVector v(5);
  v << 2.0 * std::cos(10.0 / 17.0), -std::sqrt(5.0) * std::sin(2.0 / 3.0), 2.0 * std::sin(10.0 / 17.0),
      -std::sqrt(5.0) * std::cos(2.0 / 3.0), 1.0;
  v /= std::sqrt(10.0);
  const double shift = kPi * kPi / 4.0;
  for (int n = 0; n < 5; ++n) v[n] *= std::polar(1.0, shift * n);
  return v;
}

}  // namespace precession
