#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace dq {

// Gauge-fixed chart on the configuration space of m interior points and
// n+1 boundary points of the unit disk modulo the disk automorphisms:
// z_1 is pinned at `base`, the boundary point 0 at angle 0 (i.e. at 1).
// Free coordinates, in order: x_2,y_2,...,x_m,y_m, phi_1 < ... < phi_n,
// with boundary points exp(2 pi i phi), phi in (0,1).
struct ConfigChart {
  int m = 1;
  int n = 0;
  std::complex<double> base{0.0, 0.0};

  int dim() const { return 2 * (m - 1) + n; }
  int xi(int k) const { return 2 * (k - 2); }      // x_k slot, k = 2..m
  int phii(int j) const { return 2 * (m - 1) + j - 1; }  // phi_j row, j = 1..n
};

struct ChartPoint {
  std::vector<std::complex<double>> z;   // size m, z[0] = base
  std::vector<double> phi;               // size n+1, phi[0] = 0
  std::vector<std::complex<double>> zb;  // exp(2 pi i phi)
};

// Reference to one configuration point: interior index 0..m-1 or boundary
// index 0..n.
struct PtRef {
  bool boundary = false;
  int idx = 0;
};

using Cov = Eigen::VectorXd;

// theta(z,w,x) = (1/2pi) arg((w-z)(1-conj(z)x) / ((1-conj(z)w)(x-z))),
// normalized to [0,1).
double theta_val(std::complex<double> z, std::complex<double> w, std::complex<double> x);

// Accumulates scale * dtheta(z_anchor, w, x) into `out` (length dim).
// The anchor is the interior point `zi` (0-based).
void accum_dtheta(const ConfigChart& c, const ChartPoint& p, int zi, PtRef w, PtRef x,
                  double scale, Cov& out);
Cov dtheta(const ConfigChart& c, const ChartPoint& p, int zi, PtRef w, PtRef x);

// eta at interior point zi: sum_i theta(z, zb[i+1], zb[i]) dtheta(z, zb[i], zb[0]),
// a single 1-form (indices mod n+1). Identically zero for n = 0.
Cov eta(const ConfigChart& c, const ChartPoint& p, int zi);

// varpi = -d eta = sum_i dtheta(z, zb[i], zb[0]) ^ dtheta(z, zb[i+1], zb[i]),
// returned as the list of decomposable (A,B) summands.
std::vector<std::pair<Cov, Cov>> varpi(const ConfigChart& c, const ChartPoint& p, int zi);

// Orientation sign of the gauge section against the reference orientation
// iota_t iota_s iota_h (dx1 dy1 ... dxm dym dphi0 dphi_1 ... dphi_n):
// the sign of det[h | s | t | chart frame] in the full coordinate basis,
// where h is the rotation generator and s,t the scaling/translation
// generators of the halfplane pulled back through z = (i-w)/(i+w).
int orientation_sign(const ConfigChart& c);

// Global factor pinning the conventions of h,s,t; calibrated so that the
// single-edge graph "1 1 | b1" has weight +1.
inline constexpr double kOrientationCalibration = -1.0;

}  // namespace dq
