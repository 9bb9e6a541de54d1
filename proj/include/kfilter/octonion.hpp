#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <vector>

namespace kfilter {

// Octonion as 8 coefficients over the basis e0..e7, e0 the real unit.
struct Octonion {
  std::array<double, 8> c{};

  static Octonion unit() {
    Octonion o;
    o.c[0] = 1;
    return o;
  }
  static Octonion basis(int i) {
    Octonion o;
    o.c[size_t(i)] = 1;
    return o;
  }

  double real() const { return c[0]; }
  Octonion imag() const {
    Octonion o = *this;
    o.c[0] = 0;
    return o;
  }
};

inline Octonion operator+(const Octonion& a, const Octonion& b) {
  Octonion r;
  for (int i = 0; i < 8; ++i) r.c[size_t(i)] = a.c[size_t(i)] + b.c[size_t(i)];
  return r;
}

inline Octonion operator-(const Octonion& a, const Octonion& b) {
  Octonion r;
  for (int i = 0; i < 8; ++i) r.c[size_t(i)] = a.c[size_t(i)] - b.c[size_t(i)];
  return r;
}

inline Octonion operator*(double s, const Octonion& a) {
  Octonion r;
  for (int i = 0; i < 8; ++i) r.c[size_t(i)] = s * a.c[size_t(i)];
  return r;
}

// Oriented Fano lines: e_a e_b = e_c cyclically. This orientation makes both
// automorphism sample matrices in g2.hpp exact; see the orientation search in
// the test suite.
inline const std::array<std::array<int, 3>, 7>& fano_triples() {
  static const std::array<std::array<int, 3>, 7> t = {{{1, 2, 3},
                                                       {1, 4, 5},
                                                       {2, 4, 6},
                                                       {3, 4, 7},
                                                       {2, 5, 7},
                                                       {3, 6, 5},
                                                       {1, 7, 6}}};
  return t;
}

// Structure constants e_i e_j = sign[i][j] * e_{idx[i][j]}; orientation of
// line t can be flipped via the corresponding bit of flip_mask.
struct OctTable {
  int idx[8][8];
  double sign[8][8];

  explicit OctTable(unsigned flip_mask = 0) {
    for (auto& row : idx)
      for (int& v : row) v = 0;
    for (auto& row : sign)
      for (double& v : row) v = 0;
    idx[0][0] = 0;
    sign[0][0] = 1;
    for (int i = 1; i < 8; ++i) {
      idx[0][i] = i;
      sign[0][i] = 1;
      idx[i][0] = i;
      sign[i][0] = 1;
      idx[i][i] = 0;
      sign[i][i] = -1;
    }
    const auto& triples = fano_triples();
    for (size_t t = 0; t < triples.size(); ++t) {
      int a = triples[t][0], b = triples[t][1], c = triples[t][2];
      double s = (flip_mask >> t) & 1u ? -1.0 : 1.0;
      auto set = [&](int x, int y, int z) {
        idx[x][y] = z;
        sign[x][y] = s;
        idx[y][x] = z;
        sign[y][x] = -s;
      };
      set(a, b, c);
      set(b, c, a);
      set(c, a, b);
    }
  }

  Octonion mul(const Octonion& x, const Octonion& y) const {
    Octonion r;
    for (int i = 0; i < 8; ++i) {
      if (x.c[size_t(i)] == 0) continue;
      for (int j = 0; j < 8; ++j)
        r.c[size_t(idx[i][j])] += sign[i][j] * x.c[size_t(i)] * y.c[size_t(j)];
    }
    return r;
  }

  // Exact structural test. The algebra is alternative iff the basis
  // associator is antisymmetric under swapping adjacent arguments
  // (polarization of the two alternative laws); everything here is integer
  // arithmetic on structure constants.
  bool is_alternative() const {
    auto associator = [&](int a, int b, int c, std::array<int, 8>& out) {
      out.fill(0);
      int ab = idx[a][b];
      out[size_t(idx[ab][c])] += int(sign[a][b] * sign[ab][c]);
      int bc = idx[b][c];
      out[size_t(idx[a][bc])] -= int(sign[b][c] * sign[a][bc]);
    };
    std::array<int, 8> x, y;
    for (int a = 0; a < 8; ++a)
      for (int b = 0; b < 8; ++b)
        for (int c = 0; c < 8; ++c) {
          associator(a, b, c, x);
          associator(b, a, c, y);
          for (int k = 0; k < 8; ++k)
            if (x[size_t(k)] != -y[size_t(k)]) return false;
          associator(a, c, b, y);
          for (int k = 0; k < 8; ++k)
            if (x[size_t(k)] != -y[size_t(k)]) return false;
        }
    return true;
  }
};

inline const OctTable& oct_table() {
  static const OctTable t;
  return t;
}

inline Octonion oct_mul(const Octonion& x, const Octonion& y) {
  return oct_table().mul(x, y);
}

inline Octonion oct_conj(const Octonion& x) {
  Octonion r;
  r.c[0] = x.c[0];
  for (int i = 1; i < 8; ++i) r.c[size_t(i)] = -x.c[size_t(i)];
  return r;
}

inline double oct_norm_sq(const Octonion& x) {
  double s = 0;
  for (double v : x.c) s += v * v;
  return s;
}

inline double oct_norm(const Octonion& x) { return std::sqrt(oct_norm_sq(x)); }

// Seven-dimensional cross product: half the commutator of the imaginary
// parts. The commutator of imaginary octonions is purely imaginary; the real
// slot is zeroed to keep that exact.
inline Octonion cross(const Octonion& x, const Octonion& y) {
  Octonion xi = x.imag(), yi = y.imag();
  Octonion r = 0.5 * (oct_mul(xi, yi) - oct_mul(yi, xi));
  r.c[0] = 0;
  return r;
}

struct OctTableRow {
  int i, j, k;
  int sign;
};

// All 49 imaginary products e_i e_j = sign * e_k as a machine-readable fixture.
inline std::vector<OctTableRow> oct_table_rows(const OctTable& t = oct_table()) {
  std::vector<OctTableRow> rows;
  rows.reserve(49);
  for (int i = 1; i < 8; ++i)
    for (int j = 1; j < 8; ++j)
      rows.push_back({i, j, t.idx[i][j], int(t.sign[i][j])});
  return rows;
}

inline void write_oct_table_csv(std::ostream& os, const OctTable& t = oct_table()) {
  os << "i,j,k,sign\n";
  for (const auto& r : oct_table_rows(t))
    os << r.i << ',' << r.j << ',' << r.k << ',' << r.sign << '\n';
}

} // namespace kfilter
