#pragma once

#include <complex>

#include "gmmtk/action.hpp"
#include "gmmtk/manifold.hpp"

namespace gmm {

struct CalabiEckmannParams {
  int n = 1;
  int m = 1;
  std::complex<double> tau{0.0, 1.0};  // a + ib, b != 0

  double a() const { return tau.real(); }
  double b() const { return tau.imag(); }
  void validate() const {
    if (n < 0 || m < 0 || n + m < 1)
      throw Error(ErrorKind::ConfigError, "ce requires n, m >= 0, n + m >= 1");
    if (std::abs(tau.imag()) <= 1e-12)
      throw Error(ErrorKind::ConfigError, "ce requires Im(tau) != 0");
  }
};

// Coordinates (p, s1, q, s2) on S^{2n+1} x R x S^{2m+1} x R, stored as one
// ambient vector: [p | s1 | q | s2] with interleaved complex pairs.
struct CELayout {
  int n, m;
  int p_dim() const { return 2 * n + 2; }
  int q_dim() const { return 2 * m + 2; }
  int s1_index() const { return p_dim(); }
  int q_offset() const { return p_dim() + 1; }
  int s2_index() const { return p_dim() + 1 + q_dim(); }
  int ambient_dim() const { return p_dim() + q_dim() + 2; }

  Vec p(const Vec& x) const { return x.segment(0, p_dim()); }
  double s1(const Vec& x) const { return x[s1_index()]; }
  Vec q(const Vec& x) const { return x.segment(q_offset(), q_dim()); }
  double s2(const Vec& x) const { return x[s2_index()]; }
  Vec assemble(const Vec& p, double s1, const Vec& q, double s2) const;
};

// Per-sphere contact data entering the product metric: the Reeb field, the
// contact form, the transverse endomorphism and its two-form.
struct SasakiData {
  // Evaluators act on the p-block (or q-block) only.
  std::function<Vec(const Vec&)> reeb;                    // X = i z
  std::function<double(const Vec&, const Vec&)> eta;      // <iz, v>
  std::function<Vec(const Vec&, const Vec&)> J;           // i on ker eta, J X = 0
  std::function<double(const Vec&, const Vec&, const Vec&)> Omega;  // g(J-,-)
  std::function<double(const Vec&, const Vec&, const Vec&)> g_prime;  // g - eta (x) eta
};

SasakiData sasaki_standard();

struct CEStructures {
  CalabiEckmannParams params;
  CELayout layout;
  EmbeddedManifold manifold;
  GroupActionSpec action;  // the R-action, complexified to the C-action
  HermitianTriple triple;  // (J, h, omega_h)
  std::function<Vec(const Vec&)> psi;  // a b s1 - b s2, as a 1-vector
  AmbientField V;                      // fundamental field of the R-action
};

// All closed-form evaluators of the product-manifold model.
CEStructures ce_structures(const CalabiEckmannParams& params,
                           const Tolerances& tol = {});

// Tsukada data on S^{2n+1} x S^{2m+1} (block vector [p | q]): the compact
// model the reduction is matched against.
struct TsukadaModel {
  std::function<double(const Vec&, const Vec&, const Vec&)> g;
  std::function<Vec(const Vec&, const Vec&)> J_tau;
  std::function<double(const Vec&, const Vec&, const Vec&)> omega;  // g(J-,-)
};
TsukadaModel tsukada_model(const CalabiEckmannParams& params);

struct CEReductionReport {
  double max_form_dev = 0.0;    // reduced omega vs Tsukada Kaehler form
  double max_metric_dev = 0.0;  // reduced metric vs Tsukada metric
  double max_J_dev = 0.0;       // reduced J vs J_tau through the embedding
  int n_samples = 0;
  double tolerance = 0.0;
  bool pass = false;
};

// Compares the reduction of (Y, J, h) at level c with the Tsukada model
// through the embedding j_{u0}, u0 = -c/b.
CEReductionReport ce_verify_reduction(const CalabiEckmannParams& params,
                                      double c, int n_samples, Rng& rng,
                                      double tolerance,
                                      const Tolerances& tol = {});

}  // namespace gmm
