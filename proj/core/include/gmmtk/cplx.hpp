#pragma once

#include <complex>

#include "gmmtk/linalg.hpp"

namespace gmm {

// Real vectors carrying complex coordinates as interleaved (re, im) pairs.
namespace cplx {

inline std::complex<double> coord(const Vec& x, int j) {
  return {x[2 * j], x[2 * j + 1]};
}

inline void set_coord(Vec& x, int j, std::complex<double> w) {
  x[2 * j] = w.real();
  x[2 * j + 1] = w.imag();
}

// Multiplication by i on an interleaved block.
inline Vec times_i(const Vec& x) {
  Vec out(x.size());
  for (int j = 0; j * 2 < x.size(); ++j) {
    out[2 * j] = -x[2 * j + 1];
    out[2 * j + 1] = x[2 * j];
  }
  return out;
}

inline Vec scale(std::complex<double> w, const Vec& x) {
  Vec out(x.size());
  for (int j = 0; j * 2 < x.size(); ++j) {
    auto z = w * coord(x, j);
    out[2 * j] = z.real();
    out[2 * j + 1] = z.imag();
  }
  return out;
}

// Hermitian inner product <a, b> = sum conj(a_j) b_j.
inline std::complex<double> hdot(const Vec& a, const Vec& b) {
  std::complex<double> s = 0.0;
  for (int j = 0; j * 2 < a.size(); ++j)
    s += std::conj(coord(a, j)) * coord(b, j);
  return s;
}

// Component orthogonal (over C) to the unit vector z.
inline Vec horizontal(const Vec& z, const Vec& v) {
  return v - scale(hdot(z, v), z);
}

}  // namespace cplx

}  // namespace gmm
