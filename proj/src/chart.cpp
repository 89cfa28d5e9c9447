#include "dq/chart.hpp"

#include <cmath>
#include <stdexcept>

namespace dq {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

using C = std::complex<double>;

C point_of(const ChartPoint& p, PtRef r) { return r.boundary ? p.zb[r.idx] : p.z[r.idx]; }

// Adds Im(cDp dp) for the given configuration point into the covector:
// interior points vary in (x,y), boundary points via p = exp(2 pi i phi).
void add_point(const ConfigChart& c, const ChartPoint& p, PtRef r, C cDp, C cDpbar, double sc,
               Cov& out) {
  if (!r.boundary) {
    if (r.idx == 0) return;  // z_1 pinned
    int rx = c.xi(r.idx + 1);
    out[rx] += std::imag(cDp + cDpbar) * sc;
    out[rx + 1] += std::imag(C(0, 1) * cDp - C(0, 1) * cDpbar) * sc;
  } else {
    if (r.idx == 0) return;  // boundary point 0 pinned
    C pt = p.zb[r.idx];
    out[c.phii(r.idx)] += std::imag(cDp * C(0, kTwoPi) * pt + cDpbar * C(0, -kTwoPi) * std::conj(pt)) * sc;
  }
}

}  // namespace

double theta_val(C z, C w, C x) {
  C f = (w - z) * (1.0 - std::conj(z) * x) / ((1.0 - std::conj(z) * w) * (x - z));
  double a = std::arg(f) / kTwoPi;
  if (a < 0) a += 1.0;
  if (a >= 1.0) a -= 1.0;
  return a;
}

void accum_dtheta(const ConfigChart& c, const ChartPoint& p, int zi, PtRef w, PtRef x,
                  double scale, Cov& out) {
  if (w.boundary == x.boundary && w.idx == x.idx) return;
  C z = p.z[zi];
  C zc = std::conj(z);
  C wv = point_of(p, w);
  C xv = point_of(p, x);
  C cDz = -1.0 / (wv - z) + 1.0 / (xv - z);
  C cDzb = -xv / (1.0 - zc * xv) + wv / (1.0 - zc * wv);
  C cDw = 1.0 / (wv - z) + zc / (1.0 - zc * wv);
  C cDx = -zc / (1.0 - zc * xv) - 1.0 / (xv - z);
  double sc = scale / kTwoPi;
  add_point(c, p, PtRef{false, zi}, cDz, cDzb, sc, out);
  add_point(c, p, w, cDw, C(0, 0), sc, out);
  add_point(c, p, x, cDx, C(0, 0), sc, out);
}

Cov dtheta(const ConfigChart& c, const ChartPoint& p, int zi, PtRef w, PtRef x) {
  Cov out = Cov::Zero(c.dim());
  accum_dtheta(c, p, zi, w, x, 1.0, out);
  return out;
}

Cov eta(const ConfigChart& c, const ChartPoint& p, int zi) {
  Cov out = Cov::Zero(c.dim());
  int n = c.n;
  for (int i = 1; i <= n; ++i) {
    double pref = theta_val(p.z[zi], p.zb[(i + 1) % (n + 1)], p.zb[i]);
    accum_dtheta(c, p, zi, PtRef{true, i}, PtRef{true, 0}, pref, out);
  }
  return out;
}

std::vector<std::pair<Cov, Cov>> varpi(const ConfigChart& c, const ChartPoint& p, int zi) {
  std::vector<std::pair<Cov, Cov>> out;
  int n = c.n;
  out.reserve(n);
  for (int i = 1; i <= n; ++i) {
    out.emplace_back(dtheta(c, p, zi, PtRef{true, i}, PtRef{true, 0}),
                     dtheta(c, p, zi, PtRef{true, (i + 1) % (n + 1)}, PtRef{true, i}));
  }
  return out;
}

int orientation_sign(const ConfigChart& c) {
  int m = c.m, n = c.n;
  int D = 2 * m + n + 1;
  // a fixed generic section point
  ChartPoint p;
  p.z.resize(m);
  p.z[0] = c.base;
  for (int k = 1; k < m; ++k) {
    double r = 0.17 + 0.13 * k;
    double t = kTwoPi * (0.31 * k + 0.07);
    p.z[k] = C(r * std::cos(t), r * std::sin(t));
  }
  p.phi.resize(n + 1);
  p.zb.resize(n + 1);
  for (int j = 0; j <= n; ++j) {
    p.phi[j] = (double)j / (n + 1);
    p.zb[j] = std::exp(C(0, kTwoPi * p.phi[j]));
  }

  // full-space row indices in the reference order
  // (x1, y1, ..., xm, ym, phi0, phi_1, ..., phi_n); the ascending phi block
  // is what makes the u-extended weight relations close across different n
  auto rowx = [&](int k) { return 2 * (k - 1); };            // k = 1..m
  auto rowphi = [&](int j) { return 2 * m + j; };

  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(D, D);
  auto w_of = [](C z) { return C(0, 1) * (1.0 - z) / (1.0 + z); };
  auto dz_dw = [&](C z) {
    C w = w_of(z);
    return C(0, -2) / ((C(0, 1) + w) * (C(0, 1) + w));
  };
  auto put_flow = [&](int col, auto zdot_interior, auto zbardot_boundary) {
    for (int k = 1; k <= m; ++k) {
      C zd = zdot_interior(p.z[k - 1]);
      M(rowx(k), col) = std::real(zd);
      M(rowx(k) + 1, col) = std::imag(zd);
    }
    for (int j = 0; j <= n; ++j) {
      C zd = zbardot_boundary(p.zb[j]);
      // zb = exp(2 pi i phi): phidot = Re(zbdot / (2 pi i zb))
      M(rowphi(j), col) = std::real(zd / (C(0, kTwoPi) * p.zb[j]));
    }
  };
  // h: counterclockwise rotation
  put_flow(0, [](C z) { return C(0, 1) * z; }, [](C z) { return C(0, 1) * z; });
  // s: halfplane scaling wdot = w
  put_flow(1, [&](C z) { return dz_dw(z) * w_of(z); }, [&](C z) { return dz_dw(z) * w_of(z); });
  // t: halfplane translation wdot = 1
  put_flow(2, [&](C z) { return dz_dw(z); }, [&](C z) { return dz_dw(z); });
  // chart frame vectors
  int col = 3;
  for (int k = 2; k <= m; ++k) {
    M(rowx(k), col++) = 1.0;
    M(rowx(k) + 1, col++) = 1.0;
  }
  for (int j = 1; j <= n; ++j) M(rowphi(j), col++) = 1.0;
  if (col != D) throw std::logic_error("orientation matrix shape");

  double det = M.determinant();
  if (std::fabs(det) < 1e-12) throw std::runtime_error("degenerate orientation section");
  return det > 0 ? 1 : -1;
}

}  // namespace dq
