#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "dq/chart.hpp"

using namespace dq;
using C = std::complex<double>;

namespace {

constexpr double kTau = 6.283185307179586476925287;

ChartPoint make_point(const ConfigChart& c, const std::vector<double>& coords) {
  ChartPoint p;
  p.z.resize(c.m);
  p.z[0] = c.base;
  for (int k = 2; k <= c.m; ++k) p.z[k - 1] = C(coords[c.xi(k)], coords[c.xi(k) + 1]);
  p.phi.resize(c.n + 1);
  p.phi[0] = 0.0;
  for (int j = 1; j <= c.n; ++j) p.phi[j] = coords[c.phii(j)];
  p.zb.resize(c.n + 1);
  for (int j = 0; j <= c.n; ++j) p.zb[j] = std::polar(1.0, kTau * p.phi[j]);
  return p;
}

C locate(const ChartPoint& p, PtRef r) { return r.boundary ? p.zb[r.idx] : p.z[r.idx]; }

// angle difference wrapped to (-1/2, 1/2]
double wrap(double x) { return x - std::round(x); }

std::vector<double> rand_coords(const ConfigChart& c, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(c.dim());
  for (int k = 2; k <= c.m; ++k) {
    double r = 0.2 + 0.5 * u(rng), a = kTau * u(rng);
    v[c.xi(k)] = r * std::cos(a);
    v[c.xi(k) + 1] = r * std::sin(a);
  }
  // ordered interior angles away from 0 and 1
  std::vector<double> ph(c.n);
  for (auto& x : ph) x = 0.05 + 0.9 * u(rng);
  std::sort(ph.begin(), ph.end());
  for (int j = 1; j <= c.n; ++j) v[c.phii(j)] = ph[j - 1];
  return v;
}

}  // namespace

TEST_CASE("theta oracle at the center") {
  // theta(0, w, x) is the normalized angle from x to w
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int it = 0; it < 100; ++it) {
    double a = u(rng), b = u(rng);
    double t = theta_val(C(0, 0), std::polar(1.0, kTau * a), std::polar(1.0, kTau * b));
    CHECK(t == doctest::Approx(a - b - std::floor(a - b)).epsilon(1e-9));
  }
}

TEST_CASE("theta cocycle and antisymmetry mod 1") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int it = 0; it < 100; ++it) {
    C z = std::polar(0.3 + 0.4 * u(rng), kTau * u(rng));
    C w = std::polar(1.0, kTau * u(rng));
    C x = std::polar(1.0, kTau * u(rng));
    C v = std::polar(1.0, kTau * u(rng));
    double t1 = theta_val(z, w, x), t2 = theta_val(z, x, w);
    CHECK(std::fabs(wrap(t1 + t2)) < 1e-9);
    CHECK(std::fabs(wrap(theta_val(z, w, x) + theta_val(z, x, v) - theta_val(z, w, v))) < 1e-9);
    CHECK(t1 >= 0.0);
    CHECK(t1 < 1.0);
  }
}

TEST_CASE("dtheta against finite differences") {
  std::mt19937 rng(43);
  ConfigChart c{2, 2, C(0, 0)};
  const double h = 1e-6;
  for (int it = 0; it < 20; ++it) {
    std::vector<double> coords = rand_coords(c, rng);
    // a few representative (anchor, w, x) triples
    std::vector<std::tuple<int, PtRef, PtRef>> cases = {
        {0, PtRef{true, 1}, PtRef{true, 0}},
        {0, PtRef{false, 1}, PtRef{true, 2}},
        {1, PtRef{true, 2}, PtRef{true, 1}},
        {1, PtRef{false, 0}, PtRef{true, 0}},
    };
    for (auto& [zi, w, x] : cases) {
      ChartPoint p = make_point(c, coords);
      Cov an = dtheta(c, p, zi, w, x);
      for (int a = 0; a < c.dim(); ++a) {
        auto cp = coords, cm = coords;
        cp[a] += h;
        cm[a] -= h;
        ChartPoint pp = make_point(c, cp), pm = make_point(c, cm);
        double fd = wrap(theta_val(pp.z[zi], locate(pp, w), locate(pp, x)) -
                         theta_val(pm.z[zi], locate(pm, w), locate(pm, x))) /
                    (2 * h);
        CHECK(an[a] == doctest::Approx(fd).epsilon(5e-4).scale(1.0));
      }
    }
  }
}

TEST_CASE("varpi is minus the exterior derivative of eta") {
  std::mt19937 rng(44);
  ConfigChart c{2, 2, C(0, 0)};
  const double h = 1e-5;
  for (int it = 0; it < 10; ++it) {
    std::vector<double> coords = rand_coords(c, rng);
    for (int zi : {0, 1}) {
      ChartPoint p = make_point(c, coords);
      auto vp = varpi(c, p, zi);
      int D = c.dim();
      // analytic 2-form as an antisymmetric matrix
      Eigen::MatrixXd W = Eigen::MatrixXd::Zero(D, D);
      for (auto& [A, B] : vp) W += A * B.transpose() - B * A.transpose();
      // finite-difference d eta
      Eigen::MatrixXd dE = Eigen::MatrixXd::Zero(D, D);
      for (int a = 0; a < D; ++a) {
        auto cp = coords, cm = coords;
        cp[a] += h;
        cm[a] -= h;
        Cov ep = eta(c, make_point(c, cp), zi);
        Cov em = eta(c, make_point(c, cm), zi);
        for (int b = 0; b < D; ++b) dE(a, b) += (ep[b] - em[b]) / (2 * h);
      }
      Eigen::MatrixXd dEanti = dE - dE.transpose();  // (d eta)_{ab} in basis dx^a ^ dx^b
      for (int a = 0; a < D; ++a)
        for (int b = 0; b < D; ++b)
          CHECK(W(a, b) == doctest::Approx(-dEanti(a, b)).epsilon(1e-3).scale(1.0));
    }
  }
}

TEST_CASE("eta matches its defining sum") {
  std::mt19937 rng(45);
  ConfigChart c{1, 3, C(0, 0)};
  for (int it = 0; it < 10; ++it) {
    std::vector<double> coords = rand_coords(c, rng);
    ChartPoint p = make_point(c, coords);
    Cov got = eta(c, p, 0);
    Cov want = Cov::Zero(c.dim());
    for (int i = 0; i <= c.n; ++i) {
      int ip = (i + 1) % (c.n + 1);
      double th = theta_val(p.z[0], p.zb[ip], p.zb[i]);
      want += th * dtheta(c, p, 0, PtRef{true, i}, PtRef{true, 0});
    }
    for (int a = 0; a < c.dim(); ++a) CHECK(got[a] == doctest::Approx(want[a]).epsilon(1e-9));
  }
}

TEST_CASE("orientation sign pins") {
  // together with kOrientationCalibration = -1 the net factor is +1,
  // matching the single-edge anchor weight
  for (int n = 1; n <= 4; ++n) {
    ConfigChart c{1, n, C(0, 0)};
    CHECK(orientation_sign(c) == -1);
  }
  // stable at the alternate base point used for re-verification
  ConfigChart c2{1, 1, C(0, 0.5)};
  CHECK((orientation_sign(c2) == 1 || orientation_sign(c2) == -1));
  CHECK(orientation_sign(c2) == orientation_sign(ConfigChart{1, 1, C(0, 0.5)}));
}
