#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "g2flow/norms.hpp"

namespace g2flow {

/// Runtime constants for the condition monitors. The estimate chain only
/// proves such constants exist; the defaults are calibrated empirically from
/// the randomized-suite Gagliardo-Nirenberg ratios (see estimate_gn_constants
/// and tests/unit/test_diagnostics.cpp) and from the probe calibration runs.
struct MonitorConstants {
  double epsilon = 0.0;   // smallness scale for the global-existence conditions
  double epsilon1 = 0.0;  // L3 bootstrap threshold: ||u||_L3 <= epsilon1 * nu
  double K = 0.0;         // local-existence time scale
  double C_f = 3.0;       // F(t) <= C_f F(0)
  double M = 0.0;         // ||grad u||_L2 ceiling; <= 0 disables the check

  static MonitorConstants defaults();
};

/// One sample of the verification ledger. Several entries (dissipation
/// integral, identity residuals, monitor flags) are trajectory-level and are
/// filled by finalize_diagnostics once the full sample series exists.
struct DiagnosticsRecord {
  double time = 0.0;
  NormReport norms;

  // homogeneous seminorms behind the energy identities
  double grad_l2 = 0.0;         // ||grad u||_L2
  double palap_l2 = 0.0;        // ||P Lap u||_L2
  double omega_alpha_l2 = 0.0;  // ||(1 - alpha Lap) curl u||_L2

  double e_alpha = 0.0;               // ||u||^2 + alpha ||grad u||^2
  double dissipation_integral = 0.0;  // 2 nu int_0^t ||grad u||^2
  double h1_residual = 0.0;

  double h2_lhs = 0.0;  // d/dt (||grad u||^2 + alpha ||P Lap u||^2)/2 + nu ||P Lap u||^2
  double h2_rhs = 0.0;  // int u.grad u . PLap u - alpha int sum_j (PLap u)_j grad u_j . PLap u
  double h2_residual = 0.0;

  double f_value = 0.0;      // ||grad u|| + sqrt(alpha) ||P Lap u|| + ||omega_alpha||
  double lemma1_ratio = 0.0; // f_value / (||u||_H1 + alpha ||u||_H3); 0 for the zero field

  bool cond_lip_ok = true;   // alpha Lip(u) <= nu/2
  bool cond_l3_ok = true;    // ||u||_L3 <= epsilon1 nu
  double cond_lip_margin = 0.0;
  double cond_l3_margin = 0.0;

  bool gronwall_ok = true;    // vacuously true where (cond) has not held on [0,t]
  bool finalbound_ok = true;  // idem

  double cfl = 0.0;  // dt max|u| / (2pi/n) at this sample
  bool cfl_ok = true;
};

// --- field-level monitors -------------------------------------------------

/// F = ||grad u||_L2 + sqrt(alpha) ||P Lap u||_L2 + ||omega_alpha||_L2.
double f_functional(const Field& u, double alpha);

/// F / (||u||_H1 + alpha ||u||_H3). Rejects the zero field.
double lemma1_ratio(const Field& u, double alpha);

struct ConditionFlags {
  bool lip_ok = true;
  bool l3_ok = true;
  bool grad_ok = true;
  double lip_margin = 0.0;   // alpha Lip(u) / (nu/2)
  double l3_margin = 0.0;    // ||u||_L3 / (epsilon1 nu)
  double grad_margin = 0.0;  // ||grad u||_L2 / M (0 when the M check is disabled)
  bool all_ok() const { return lip_ok && l3_ok && grad_ok; }
};

/// Pointwise bootstrap conditions: alpha Lip(u) <= nu/2, ||u||_L3 <= eps1 nu,
/// and optionally ||grad u||_L2 <= M (disabled for M <= 0).
ConditionFlags check_pointwise_conditions(const Field& u, double alpha, double nu,
                                          double epsilon1, TransformPlan& plan, double M = 0.0);
ConditionFlags check_pointwise_conditions(const NormReport& norms, double grad_l2_value,
                                          double alpha, double nu, double epsilon1,
                                          double M = 0.0);

/// Initial-data smallness report. Inequalities, in margin order:
///   0: ||u0||_L2 ||u0||_H1 <= eps^2 nu^2
///   1: ||u0||_L2 ||u0||_H2 <= eps^2 nu^2 alpha^{-1/2}
///   2: ||u0||_H1 ||u0||_H2 <= eps^2 nu^2 alpha^{-1}
///   3: ||u0||_H3          <= eps  nu   alpha^{-5/4}
///   4: ||u0||_H1          <= eps  nu   alpha^{-1/4}
///   5: ||u0||_H3          <= eps  nu   alpha^{-5/4}
/// For alpha = 0 the alpha-weighted conditions (1..5) hold vacuously and the
/// report notes it.
struct SmallnessReport {
  bool small1_ok = true;
  bool small2_ok[3] = {true, true, true};
  bool hyplocal_ok[2] = {true, true};
  double margins[6] = {0, 0, 0, 0, 0, 0};  // LHS/RHS; <= 1 iff the flag is set
  bool alpha_zero_vacuous = false;
  double epsilon = 0.0, epsilon1 = 0.0, K = 0.0;

  bool small_all_ok() const { return small1_ok && small2_ok[0] && small2_ok[1] && small2_ok[2]; }
  bool hyplocal_all_ok() const { return hyplocal_ok[0] && hyplocal_ok[1]; }
};

SmallnessReport check_smallness(const Field& u0, double alpha, double nu,
                                const MonitorConstants& mc);

/// T = nu^3 / (K (||u0||_H1 + sqrt(alpha) ||u0||_H2)^4); +infinity for the
/// zero field.
double local_time_bound(const Field& u0, double alpha, double nu, double K);
double local_time_bound(const NormReport& norms, double alpha, double nu, double K);

/// The two cubic integrals on the H2 balance's right-hand side, computed by
/// exact collocation quadrature (integrands are band-limited):
///   convection = int u.grad u . PLap u
///   stretching = int sum_j (PLap u)_j grad u_j . PLap u
struct H2RhsTerms {
  double convection = 0.0;
  double stretching = 0.0;
  double value(double alpha) const { return convection - alpha * stretching; }
};
H2RhsTerms h2_rhs_terms(const Field& u, TransformPlan& plan);

/// One ledger sample from a velocity snapshot. Trajectory-level entries
/// (dissipation integral, residuals, Gronwall/final-bound flags) stay at
/// their defaults until finalize_diagnostics runs.
DiagnosticsRecord instantaneous_record(const Field& u, double time, double alpha, double nu,
                                       const MonitorConstants& mc, TransformPlan& plan,
                                       double cfl, double cfl_limit);

// --- ledger-level series ---------------------------------------------------

/// 4th-order cumulative integral of uniformly spaced samples (piecewise cubic;
/// falls back to the quadratic and trapezoid rules for very short series).
std::vector<double> cumulative_integral(const std::vector<double>& times,
                                        const std::vector<double>& values);

/// |LHS(t) - RHS| / RHS for the integrated energy identity
/// ||u(t)||^2 + alpha ||grad u(t)||^2 + 2 nu int_0^t ||grad u||^2 = const.
std::vector<double> energy_identity_residual(const std::vector<DiagnosticsRecord>& ledger,
                                             double alpha, double nu);

/// Pointwise relative residual of the H2 balance; time derivative by centered
/// differences (one-sided second order at the ends). Normalized by the sum of
/// the participating terms' magnitudes so it stays meaningful when the
/// nonlinear side vanishes.
std::vector<double> h2_balance_residual(const std::vector<DiagnosticsRecord>& ledger,
                                        double alpha, double nu);

struct CheckSeries {
  std::vector<std::uint8_t> applicable;  // (cond) held on [0, t_j]
  std::vector<std::uint8_t> ok;          // vacuously 1 where not applicable
  bool any_violation() const;
};

/// ||omega_alpha(t)||^2 <= ||omega_alpha(0)||^2 + 4 sup_{s<=t} ||grad u||^2,
/// with tolerance factor (1 + 1e-6), wherever (cond) has held so far.
CheckSeries gronwall_check(const std::vector<DiagnosticsRecord>& ledger);

/// F(t) <= C_f F(0) wherever (cond) has held so far.
CheckSeries final_bound_check(const std::vector<DiagnosticsRecord>& ledger, double C_f);

/// Fills the trajectory-level entries (dissipation integral, h1/h2 residuals,
/// Gronwall and final-bound flags) in place. Samples must be uniformly spaced.
void finalize_diagnostics(std::vector<DiagnosticsRecord>& ledger, double alpha, double nu,
                          const MonitorConstants& mc);

// --- serialization -----------------------------------------------------------

/// CSV columns, fixed order (booleans as 0/1, floats with 17 significant digits).
std::string diagnostics_csv_header();
std::string diagnostics_csv_row(const DiagnosticsRecord& r);
void write_diagnostics_csv(std::ostream& os, const std::vector<DiagnosticsRecord>& ledger);
/// One JSON object per line, keys in column order.
void write_diagnostics_jsonl(std::ostream& os, const std::vector<DiagnosticsRecord>& ledger);

}  // namespace g2flow
