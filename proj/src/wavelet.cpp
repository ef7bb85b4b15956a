#include "partinv/wavelet.hpp"

#include <array>
#include <cmath>

namespace partinv::wavelet {

namespace {

// Daubechies scaling filter with 5 vanishing moments (10 taps), extremal
// phase.  Derived by spectral factorization; sum = sqrt(2), unit energy,
// vanishing even-lag autocorrelation.
constexpr std::array<double, 10> kDb5Lo = {
    0.160102397974192914,    0.603829269797189671,   0.724308528437772928,
    0.138428145901320732,    -0.242294887066382032,  -0.0322448695846383746,
    0.0775714938400457135,   -0.00624149021279827427, -0.0125807519990819995,
    0.00333572528547377128,
};

constexpr int kTaps = 10;

std::array<double, 10> highpass() {
  std::array<double, 10> g{};
  for (int k = 0; k < kTaps; ++k)
    g[k] = (k % 2 == 0 ? 1.0 : -1.0) * kDb5Lo[kTaps - 1 - k];
  return g;
}

const std::array<double, 10> kDb5Hi = highpass();

}  // namespace

DenseMatrix haar_basis(Index n) {
  if (n < 1 || (n & (n - 1)) != 0)
    throw std::invalid_argument("haar_basis: n must be a power of two");
  DenseMatrix psi = DenseMatrix::Zero(n, n);
  psi.col(0).setConstant(1.0 / std::sqrt(static_cast<double>(n)));
  for (Index band = 1; band < n; band *= 2) {
    const Index support = n / band;
    const double amp = 1.0 / std::sqrt(static_cast<double>(support));
    for (Index k = 0; k < band; ++k) {
      const Index start = k * support;
      for (Index t = 0; t < support / 2; ++t) {
        psi(start + t, band + k) = amp;
        psi(start + support / 2 + t, band + k) = -amp;
      }
    }
  }
  return psi;
}

void db5_analysis(const Vector& x, Vector& approx, Vector& detail) {
  const Index n = x.size();
  const Index half = n / 2;
  approx.resize(half);
  detail.resize(half);
  for (Index i = 0; i < half; ++i) {
    double a = 0.0, d = 0.0;
    for (int k = 0; k < kTaps; ++k) {
      const double xv = x[(2 * i + k) % n];
      a += kDb5Lo[static_cast<std::size_t>(k)] * xv;
      d += kDb5Hi[static_cast<std::size_t>(k)] * xv;
    }
    approx[i] = a;
    detail[i] = d;
  }
}

void db5_synthesis(const Vector& approx, const Vector& detail, Vector& x) {
  const Index half = approx.size();
  const Index n = 2 * half;
  x.setZero(n);
  for (Index i = 0; i < half; ++i) {
    const double a = approx[i];
    const double d = detail[i];
    if (a == 0.0 && d == 0.0) continue;
    for (int k = 0; k < kTaps; ++k) {
      const Index j = (2 * i + k) % n;
      x[j] += a * kDb5Lo[static_cast<std::size_t>(k)] +
              d * kDb5Hi[static_cast<std::size_t>(k)];
    }
  }
}

DenseMatrix idwt2(const DenseMatrix& coeff, int levels) {
  DenseMatrix img = coeff;
  const Index side = coeff.rows();
  Index s = side >> levels;
  if (s < 1 || coeff.cols() != side)
    throw std::invalid_argument("idwt2: bad size/levels");
  for (; s < side; s *= 2) {
    const Index out = 2 * s;
    // columns first (undo the vertical split), then rows
    Vector a(s), d(s), full(out);
    for (Index c = 0; c < out; ++c) {
      a = img.block(0, c, s, 1);
      d = img.block(s, c, s, 1);
      db5_synthesis(a, d, full);
      img.block(0, c, out, 1) = full;
    }
    for (Index r = 0; r < out; ++r) {
      a = img.block(r, 0, 1, s).transpose();
      d = img.block(r, s, 1, s).transpose();
      db5_synthesis(a, d, full);
      img.block(r, 0, 1, out) = full.transpose();
    }
  }
  return img;
}

DenseMatrix basis_2d_db5_32() {
  constexpr Index kSide = 32;
  constexpr Index kN = kSide * kSide;
  constexpr int kLevels = 5;
  DenseMatrix psi(kN, kN);
  DenseMatrix coeff = DenseMatrix::Zero(kSide, kSide);
  for (Index c = 0; c < kSide; ++c) {
    for (Index r = 0; r < kSide; ++r) {
      coeff(r, c) = 1.0;
      const DenseMatrix img = idwt2(coeff, kLevels);
      coeff(r, c) = 0.0;
      psi.col(c * kSide + r) = img.reshaped();
    }
  }
  return psi;
}

SetPartition quadtree_partition_32() {
  constexpr Index kSide = 32;
  auto flat = [](Index r, Index c) { return c * kSide + r; };

  SetPartition partition;
  partition.total = kSide * kSide;

  // Coarse block: approx + two coarsest detail scales, rows/cols < 4.
  std::vector<Index> coarse;
  for (Index c = 0; c < 4; ++c)
    for (Index r = 0; r < 4; ++r) coarse.push_back(flat(r, c));
  partition.sets.emplace_back(std::move(coarse));

  // Detail block offsets per orientation at subband size s: (0,s), (s,0), (s,s).
  const Index kRoot = 4;  // third-finest detail subbands are 4x4
  for (int o = 0; o < 3; ++o) {
    const bool row_off = (o != 0);
    const bool col_off = (o != 1);
    for (Index j = 0; j < kRoot; ++j) {
      for (Index i = 0; i < kRoot; ++i) {
        std::vector<Index> tree;
        tree.push_back(flat(i + (row_off ? 4 : 0), j + (col_off ? 4 : 0)));
        for (Index dj = 0; dj < 2; ++dj)
          for (Index di = 0; di < 2; ++di)
            tree.push_back(flat(2 * i + di + (row_off ? 8 : 0),
                                2 * j + dj + (col_off ? 8 : 0)));
        for (Index dj = 0; dj < 4; ++dj)
          for (Index di = 0; di < 4; ++di)
            tree.push_back(flat(4 * i + di + (row_off ? 16 : 0),
                                4 * j + dj + (col_off ? 16 : 0)));
        partition.sets.emplace_back(std::move(tree));
      }
    }
  }
  partition.validate();
  return partition;
}

}  // namespace partinv::wavelet
