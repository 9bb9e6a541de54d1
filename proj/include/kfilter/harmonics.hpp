#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace kfilter {

// Real spherical harmonics, unit L2 norm, Condon-Shortley phase carried by
// the associated Legendre factor.

namespace detail {

// Fully normalized associated Legendre P̄_l^m(x) for m >= 0, stable upward
// recurrence in l; includes the (-1)^m phase and the sqrt((2l+1)/4π ...)
// normalization so that Y carries no further factors.
inline double normalized_plm(int l, int m, double x) {
  double somx2 = std::sqrt(std::max(0.0, 1.0 - x * x));
  double pmm = std::sqrt(1.0 / (4.0 * std::numbers::pi));
  for (int k = 1; k <= m; ++k)
    pmm *= -std::sqrt((2.0 * k + 1.0) / (2.0 * k)) * somx2;
  if (l == m) return pmm;
  double pmm1 = x * std::sqrt(2.0 * m + 3.0) * pmm;
  if (l == m + 1) return pmm1;
  for (int ll = m + 2; ll <= l; ++ll) {
    double a = std::sqrt((4.0 * ll * ll - 1.0) / (double(ll) * ll - double(m) * m));
    double b = std::sqrt((double(ll - 1) * (ll - 1) - double(m) * m) /
                         (4.0 * double(ll - 1) * (ll - 1) - 1.0));
    double p = a * (x * pmm1 - b * pmm);
    pmm = pmm1;
    pmm1 = p;
  }
  return pmm1;
}

} // namespace detail

inline double eval_Ylm(int l, int m, double theta, double phi) {
  if (l < 0 || std::abs(m) > l)
    throw std::invalid_argument("eval_Ylm: need l >= 0 and |m| <= l");
  double x = std::cos(theta);
  if (m == 0) return detail::normalized_plm(l, 0, x);
  int am = std::abs(m);
  double p = detail::normalized_plm(l, am, x) * std::numbers::sqrt2;
  return m > 0 ? p * std::cos(am * phi) : p * std::sin(am * phi);
}

struct HarmonicSpec {
  int l = 0;
  int m = 0;
  int theta_steps = 64;
  int phi_steps = 128;

  void validate() const {
    if (l < 0 || std::abs(m) > l)
      throw std::invalid_argument("HarmonicSpec: need l >= 0 and |m| <= l");
    if (theta_steps < 8 || phi_steps < 8)
      throw std::invalid_argument("HarmonicSpec: resolution below 8x8");
  }
};

// Sphere-parameterized surface r = |Y_l^m|; poles welded to single vertices
// so the triangulation is watertight. `scalar` keeps the signed Y value.
struct SurfaceMesh {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<double> scalar;
};

inline SurfaceMesh mesh_harmonic(const HarmonicSpec& spec) {
  spec.validate();
  int nt = spec.theta_steps, np = spec.phi_steps;
  auto Y = [&](double theta, double phi) { return eval_Ylm(spec.l, spec.m, theta, phi); };
  auto pos = [&](double theta, double phi) {
    double v = Y(theta, phi);
    double r = std::abs(v);
    return Eigen::Vector3d(r * std::sin(theta) * std::cos(phi),
                           r * std::sin(theta) * std::sin(phi), r * std::cos(theta));
  };

  SurfaceMesh mesh;
  mesh.vertices.reserve(size_t(nt - 2) * size_t(np) + 2);
  // vertex 0: north pole, vertex 1 + (i-1)*np + j: interior, last: south pole
  mesh.vertices.push_back(pos(0.0, 0.0));
  mesh.scalar.push_back(Y(0.0, 0.0));
  for (int i = 1; i < nt - 1; ++i) {
    double theta = std::numbers::pi * double(i) / double(nt - 1);
    for (int j = 0; j < np; ++j) {
      double phi = 2.0 * std::numbers::pi * double(j) / double(np);
      mesh.vertices.push_back(pos(theta, phi));
      mesh.scalar.push_back(Y(theta, phi));
    }
  }
  mesh.vertices.push_back(pos(std::numbers::pi, 0.0));
  mesh.scalar.push_back(Y(std::numbers::pi, 0.0));

  int south = int(mesh.vertices.size()) - 1;
  auto ring = [&](int i, int j) { return 1 + (i - 1) * np + (j % np); };
  for (int j = 0; j < np; ++j)
    mesh.triangles.push_back({0, ring(1, j), ring(1, j + 1)});
  for (int i = 1; i < nt - 2; ++i)
    for (int j = 0; j < np; ++j) {
      mesh.triangles.push_back({ring(i, j), ring(i + 1, j), ring(i + 1, j + 1)});
      mesh.triangles.push_back({ring(i, j), ring(i + 1, j + 1), ring(i, j + 1)});
    }
  for (int j = 0; j < np; ++j)
    mesh.triangles.push_back({south, ring(nt - 2, j + 1), ring(nt - 2, j)});
  return mesh;
}

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
inline void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(size_t(n), 0.0);
  w.assign(size_t(n), 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (double(i) + 0.75) / (double(n) + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 0; k < n; ++k) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k + 1.0) * z * p1 - double(k) * p2) / (double(k) + 1.0);
      }
      pp = double(n) * (z * p0 - p1) / (z * z - 1.0);
      double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[size_t(i)] = -z;
    x[size_t(n - 1 - i)] = z;
    w[size_t(i)] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[size_t(n - 1 - i)] = w[size_t(i)];
  }
}

// Gram matrix of all (l, m) with l <= l_max under 64-node Gauss-Legendre in
// cos(theta) times a 128-node uniform rule in phi; identity up to quadrature
// error.
inline Eigen::MatrixXd orthonormality_matrix(int l_max, int n_theta = 64, int n_phi = 128) {
  if (l_max < 0 || l_max > 10)
    throw std::invalid_argument("orthonormality_matrix: l_max must be in 0..10");
  int nh = (l_max + 1) * (l_max + 1);
  std::vector<double> gx, gw;
  gauss_legendre(n_theta, gx, gw);
  Eigen::MatrixXd V(nh, n_theta * n_phi);
  double wphi = 2.0 * std::numbers::pi / double(n_phi);
  for (int l = 0; l <= l_max; ++l)
    for (int m = -l; m <= l; ++m) {
      int row = l * l + l + m;
      for (int i = 0; i < n_theta; ++i) {
        double theta = std::acos(gx[size_t(i)]);
        double node_w = std::sqrt(gw[size_t(i)] * wphi);
        for (int j = 0; j < n_phi; ++j) {
          double phi = 2.0 * std::numbers::pi * double(j) / double(n_phi);
          V(row, i * n_phi + j) = node_w * eval_Ylm(l, m, theta, phi);
        }
      }
    }
  return V * V.transpose();
}

inline void write_obj(const SurfaceMesh& mesh, std::ostream& os) {
  os.precision(17);
  for (const auto& v : mesh.vertices) os << "v " << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
  for (const auto& t : mesh.triangles)
    os << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
}

// Scalar field on the full (theta, phi) grid, one row per node.
inline void write_harmonic_csv(const HarmonicSpec& spec, std::ostream& os) {
  spec.validate();
  os.precision(17);
  os << "theta,phi,Y\n";
  for (int i = 0; i < spec.theta_steps; ++i) {
    double theta = std::numbers::pi * double(i) / double(spec.theta_steps - 1);
    for (int j = 0; j < spec.phi_steps; ++j) {
      double phi = 2.0 * std::numbers::pi * double(j) / double(spec.phi_steps);
      os << theta << ',' << phi << ',' << eval_Ylm(spec.l, spec.m, theta, phi) << '\n';
    }
  }
}

} // namespace kfilter
