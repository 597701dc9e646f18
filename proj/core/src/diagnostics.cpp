#include "g2flow/diagnostics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "g2flow/operators.hpp"

namespace g2flow {

namespace {

constexpr double kGronwallTolerance = 1e-6;
constexpr double kFinalBoundTolerance = 1e-12;

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void require_uniform(const std::vector<double>& t) {
  if (t.size() < 3) return;
  const double h = t[1] - t[0];
  for (std::size_t j = 1; j + 1 < t.size(); ++j) {
    if (std::abs((t[j + 1] - t[j]) - h) > 1e-9 * std::max(1.0, std::abs(h))) {
      throw std::invalid_argument("diagnostics: sample times must be uniformly spaced");
    }
  }
}

std::vector<double> times_of(const std::vector<DiagnosticsRecord>& ledger) {
  std::vector<double> t(ledger.size());
  for (std::size_t j = 0; j < ledger.size(); ++j) t[j] = ledger[j].time;
  return t;
}

}  // namespace

MonitorConstants MonitorConstants::defaults() {
  // epsilon1 comes from the bound chain on the convection integral:
  //   int u.grad u . PLap u <= C_l6 ||u||_L3 ||grad u||_H1 ||PLap u||
  // with ||grad u||_H1 <= sqrt(2) ||PLap u|| for mean-zero fields, so the
  // absorbed fraction stays <= 1/4 when epsilon1 <= 1/(4 sqrt(2) C_l6).
  // The ratios below are ceilings over the estimate_gn_constants suite at
  // desk scale (2D n=32 and 3D n=16 seeded fields); the unit tests
  // re-estimate them and check these stay conservative.
  constexpr double c_l3 = 0.50;      // measured max 0.47
  constexpr double c_grad_l6 = 0.35; // measured max 0.23
  constexpr double c_lip = 0.65;     // measured max 0.11
  MonitorConstants mc;
  mc.epsilon1 = 1.0 / (4.0 * std::sqrt(2.0) * c_grad_l6);
  mc.epsilon = std::min(mc.epsilon1 / (2.0 * c_l3), 1.0 / (2.0 * c_lip));
  // K calibrated on the probe suite so the predicted lower bound stays below
  // every observed horizon with at least 2x margin (see the acceptance runs).
  mc.K = 0.25;
  mc.C_f = 3.0;
  mc.M = 0.0;  // the ||grad u||_L2 <= M monitor is opt-in
  return mc;
}

double f_functional(const Field& u, double alpha) {
  return grad_l2(u) + std::sqrt(alpha) * projected_laplacian_l2(u) + omega_alpha_l2(u, alpha);
}

double lemma1_ratio(const Field& u, double alpha) {
  const double h1 = sobolev_norm(u, 1);
  const double h3 = sobolev_norm(u, 3);
  const double denom = h1 + alpha * h3;
  if (denom == 0.0) throw std::invalid_argument("lemma1_ratio: zero field");
  return f_functional(u, alpha) / denom;
}

ConditionFlags check_pointwise_conditions(const NormReport& norms, double grad_l2_value,
                                          double alpha, double nu, double epsilon1, double M) {
  ConditionFlags f;
  f.lip_margin = alpha * norms.lip / (0.5 * nu);
  f.l3_margin = norms.l3 / (epsilon1 * nu);
  f.lip_ok = f.lip_margin <= 1.0;
  f.l3_ok = f.l3_margin <= 1.0;
  if (M > 0.0) {
    f.grad_margin = grad_l2_value / M;
    f.grad_ok = f.grad_margin <= 1.0;
  }
  return f;
}

ConditionFlags check_pointwise_conditions(const Field& u, double alpha, double nu,
                                          double epsilon1, TransformPlan& plan, double M) {
  NormReport norms;
  norms.lip = lebesgue_norm(u, LebesgueExponent::inf_grad, plan);
  norms.l3 = lebesgue_norm(u, LebesgueExponent::p3, plan);
  return check_pointwise_conditions(norms, grad_l2(u), alpha, nu, epsilon1, M);
}

SmallnessReport check_smallness(const Field& u0, double alpha, double nu,
                                const MonitorConstants& mc) {
  SmallnessReport r;
  r.epsilon = mc.epsilon;
  r.epsilon1 = mc.epsilon1;
  r.K = mc.K;

  const double l2 = sobolev_norm(u0, 0);
  const double h1 = sobolev_norm(u0, 1);
  const double h2 = sobolev_norm(u0, 2);
  const double h3 = sobolev_norm(u0, 3);
  const double e2n2 = mc.epsilon * mc.epsilon * nu * nu;
  const double en = mc.epsilon * nu;

  r.margins[0] = l2 * h1 / e2n2;
  r.small1_ok = r.margins[0] <= 1.0;

  if (alpha == 0.0) {
    // the alpha-weighted conditions carry negative powers of alpha and hold
    // vacuously in the Navier-Stokes limit
    r.alpha_zero_vacuous = true;
    return r;
  }

  r.margins[1] = l2 * h2 / (e2n2 * std::pow(alpha, -0.5));
  r.margins[2] = h1 * h2 / (e2n2 / alpha);
  r.margins[3] = h3 / (en * std::pow(alpha, -1.25));
  r.margins[4] = h1 / (en * std::pow(alpha, -0.25));
  r.margins[5] = r.margins[3];
  for (int i = 0; i < 3; ++i) r.small2_ok[i] = r.margins[1 + i] <= 1.0;
  r.hyplocal_ok[0] = r.margins[4] <= 1.0;
  r.hyplocal_ok[1] = r.margins[5] <= 1.0;
  return r;
}

double local_time_bound(const NormReport& norms, double alpha, double nu, double K) {
  const double scale = norms.h1 + std::sqrt(alpha) * norms.h2;
  if (scale == 0.0) return std::numeric_limits<double>::infinity();
  return nu * nu * nu / (K * scale * scale * scale * scale);
}

double local_time_bound(const Field& u0, double alpha, double nu, double K) {
  NormReport norms;
  norms.h1 = sobolev_norm(u0, 1);
  norms.h2 = sobolev_norm(u0, 2);
  return local_time_bound(norms, alpha, nu, K);
}

H2RhsTerms h2_rhs_terms(const Field& u, TransformPlan& plan) {
  const auto& g = u.grid();
  const int d = g.dim;
  const std::size_t nm = g.mode_count();

  const Field w = laplacian(u);  // == P Lap u for divergence-free fields
  const PhysicalField u_phys = to_physical(u, plan);
  const PhysicalField w_phys = to_physical(w, plan);
  const PhysicalField jac = to_physical(gradient(u), plan);  // comp c*d+a = d_a u_c

  // Integrands are trig polynomials below the quadrature's alias threshold,
  // so the collocation sums are exact integrals.
  const double cell = g.volume / static_cast<double>(nm);
  KahanSum conv, stretch;
  for (std::size_t x = 0; x < nm; ++x) {
    double cacc = 0.0, sacc = 0.0;
    for (int c = 0; c < d; ++c) {
      double ugradu_c = 0.0;
      for (int a = 0; a < d; ++a) {
        ugradu_c += u_phys.data(a)[x] * jac.data(c * d + a)[x];
      }
      cacc += ugradu_c * w_phys.data(c)[x];
      double wgrad_c = 0.0;  // sum_j w_j d_c u_j
      for (int j = 0; j < d; ++j) {
        wgrad_c += w_phys.data(j)[x] * jac.data(j * d + c)[x];
      }
      sacc += wgrad_c * w_phys.data(c)[x];
    }
    conv.add(cacc);
    stretch.add(sacc);
  }
  H2RhsTerms terms;
  terms.convection = cell * conv.value();
  terms.stretching = cell * stretch.value();
  return terms;
}

DiagnosticsRecord instantaneous_record(const Field& u, double time, double alpha, double nu,
                                       const MonitorConstants& mc, TransformPlan& plan,
                                       double cfl, double cfl_limit) {
  DiagnosticsRecord r;
  r.time = time;
  r.norms = compute_norms(u, plan);
  r.grad_l2 = grad_l2(u);
  r.palap_l2 = projected_laplacian_l2(u);
  r.omega_alpha_l2 = omega_alpha_l2(u, alpha);
  r.e_alpha = r.norms.l2 * r.norms.l2 + alpha * r.grad_l2 * r.grad_l2;
  r.f_value = r.grad_l2 + std::sqrt(alpha) * r.palap_l2 + r.omega_alpha_l2;
  const double lemma1_denom = r.norms.h1 + alpha * r.norms.h3;
  r.lemma1_ratio = lemma1_denom > 0.0 ? r.f_value / lemma1_denom : 0.0;

  const H2RhsTerms rhs = h2_rhs_terms(u, plan);
  r.h2_rhs = rhs.value(alpha);

  const ConditionFlags cond =
      check_pointwise_conditions(r.norms, r.grad_l2, alpha, nu, mc.epsilon1, mc.M);
  r.cond_lip_ok = cond.lip_ok;
  r.cond_l3_ok = cond.l3_ok;
  r.cond_lip_margin = cond.lip_margin;
  r.cond_l3_margin = cond.l3_margin;

  r.cfl = cfl;
  r.cfl_ok = cfl <= cfl_limit;
  return r;
}

std::vector<double> cumulative_integral(const std::vector<double>& times,
                                        const std::vector<double>& f) {
  if (times.size() != f.size()) {
    throw std::invalid_argument("cumulative_integral: size mismatch");
  }
  const std::size_t n = times.size();
  std::vector<double> out(n, 0.0);
  if (n < 2) return out;
  require_uniform(times);
  const double h = times[1] - times[0];

  if (n == 2) {
    out[1] = 0.5 * h * (f[0] + f[1]);
    return out;
  }
  if (n == 3) {
    out[1] = h * (5.0 * f[0] + 8.0 * f[1] - f[2]) / 12.0;
    out[2] = out[1] + h * (-f[0] + 8.0 * f[1] + 5.0 * f[2]) / 12.0;
    return out;
  }

  // piecewise-cubic panels: 4th-order cumulative quadrature
  const std::size_t last = n - 2;  // final panel index
  for (std::size_t j = 0; j + 1 < n; ++j) {
    double panel;
    if (j == 0) {
      panel = h * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]) / 24.0;
    } else if (j == last) {
      panel = h * (f[n - 4] - 5.0 * f[n - 3] + 19.0 * f[n - 2] + 9.0 * f[n - 1]) / 24.0;
    } else {
      panel = h * (-f[j - 1] + 13.0 * f[j] + 13.0 * f[j + 1] - f[j + 2]) / 24.0;
    }
    out[j + 1] = out[j] + panel;
  }
  return out;
}

std::vector<double> energy_identity_residual(const std::vector<DiagnosticsRecord>& ledger,
                                             double alpha, double nu) {
  const std::size_t n = ledger.size();
  std::vector<double> res(n, 0.0);
  if (n == 0) return res;

  std::vector<double> grad2(n);
  for (std::size_t j = 0; j < n; ++j) grad2[j] = ledger[j].grad_l2 * ledger[j].grad_l2;
  const std::vector<double> integral = cumulative_integral(times_of(ledger), grad2);

  const double rhs =
      ledger[0].norms.l2 * ledger[0].norms.l2 + alpha * grad2[0];
  for (std::size_t j = 0; j < n; ++j) {
    const double lhs =
        ledger[j].norms.l2 * ledger[j].norms.l2 + alpha * grad2[j] + 2.0 * nu * integral[j];
    res[j] = rhs > 0.0 ? std::abs(lhs - rhs) / rhs : std::abs(lhs - rhs);
  }
  return res;
}

std::vector<double> h2_balance_residual(const std::vector<DiagnosticsRecord>& ledger,
                                        double alpha, double nu) {
  const std::size_t n = ledger.size();
  std::vector<double> res(n, 0.0);
  if (n < 2) return res;
  require_uniform(times_of(ledger));
  const double h = ledger[1].time - ledger[0].time;

  std::vector<double> g_series(n);
  for (std::size_t j = 0; j < n; ++j) {
    g_series[j] = 0.5 * (ledger[j].grad_l2 * ledger[j].grad_l2 +
                         alpha * ledger[j].palap_l2 * ledger[j].palap_l2);
  }

  auto dgdt = [&](std::size_t j) {
    if (n == 2) return (g_series[1] - g_series[0]) / h;
    if (j == 0) return (-3.0 * g_series[0] + 4.0 * g_series[1] - g_series[2]) / (2.0 * h);
    if (j == n - 1)
      return (3.0 * g_series[n - 1] - 4.0 * g_series[n - 2] + g_series[n - 3]) / (2.0 * h);
    return (g_series[j + 1] - g_series[j - 1]) / (2.0 * h);
  };

  for (std::size_t j = 0; j < n; ++j) {
    const double dg = dgdt(j);
    const double dissipation = nu * ledger[j].palap_l2 * ledger[j].palap_l2;
    const double lhs = dg + dissipation;
    const double rhs = ledger[j].h2_rhs;
    const double denom = std::abs(dg) + dissipation + std::abs(rhs);
    res[j] = denom > 0.0 ? std::abs(lhs - rhs) / denom : 0.0;
  }
  return res;
}

bool CheckSeries::any_violation() const {
  for (std::size_t j = 0; j < ok.size(); ++j) {
    if (applicable[j] && !ok[j]) return true;
  }
  return false;
}

CheckSeries gronwall_check(const std::vector<DiagnosticsRecord>& ledger) {
  CheckSeries s;
  const std::size_t n = ledger.size();
  s.applicable.assign(n, 0);
  s.ok.assign(n, 1);
  if (n == 0) return s;

  const double w0_sq = ledger[0].omega_alpha_l2 * ledger[0].omega_alpha_l2;
  bool prefix = true;
  double sup_grad_sq = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    sup_grad_sq = std::max(sup_grad_sq, ledger[j].grad_l2 * ledger[j].grad_l2);
    prefix = prefix && ledger[j].cond_lip_ok && ledger[j].cond_l3_ok;
    s.applicable[j] = prefix ? 1 : 0;
    if (prefix) {
      const double bound = (w0_sq + 4.0 * sup_grad_sq) * (1.0 + kGronwallTolerance);
      s.ok[j] = (ledger[j].omega_alpha_l2 * ledger[j].omega_alpha_l2 <= bound) ? 1 : 0;
    }
  }
  return s;
}

CheckSeries final_bound_check(const std::vector<DiagnosticsRecord>& ledger, double C_f) {
  CheckSeries s;
  const std::size_t n = ledger.size();
  s.applicable.assign(n, 0);
  s.ok.assign(n, 1);
  if (n == 0) return s;

  const double f0 = ledger[0].f_value;
  bool prefix = true;
  for (std::size_t j = 0; j < n; ++j) {
    prefix = prefix && ledger[j].cond_lip_ok && ledger[j].cond_l3_ok;
    s.applicable[j] = prefix ? 1 : 0;
    if (prefix) {
      s.ok[j] = (ledger[j].f_value <= C_f * f0 * (1.0 + kFinalBoundTolerance)) ? 1 : 0;
    }
  }
  return s;
}

void finalize_diagnostics(std::vector<DiagnosticsRecord>& ledger, double alpha, double nu,
                          const MonitorConstants& mc) {
  const std::size_t n = ledger.size();
  if (n == 0) return;

  std::vector<double> grad2(n);
  for (std::size_t j = 0; j < n; ++j) grad2[j] = ledger[j].grad_l2 * ledger[j].grad_l2;
  const std::vector<double> integral = cumulative_integral(times_of(ledger), grad2);
  for (std::size_t j = 0; j < n; ++j) ledger[j].dissipation_integral = 2.0 * nu * integral[j];

  const std::vector<double> h1 = energy_identity_residual(ledger, alpha, nu);
  const std::vector<double> h2 = h2_balance_residual(ledger, alpha, nu);
  const CheckSeries gron = gronwall_check(ledger);
  const CheckSeries fb = final_bound_check(ledger, mc.C_f);

  const double h = n > 1 ? ledger[1].time - ledger[0].time : 0.0;
  std::vector<double> g_series(n);
  for (std::size_t j = 0; j < n; ++j) {
    g_series[j] = 0.5 * (grad2[j] + alpha * ledger[j].palap_l2 * ledger[j].palap_l2);
  }
  for (std::size_t j = 0; j < n; ++j) {
    ledger[j].h1_residual = h1[j];
    ledger[j].h2_residual = h2[j];
    double dg = 0.0;
    if (n >= 3) {
      if (j == 0)
        dg = (-3.0 * g_series[0] + 4.0 * g_series[1] - g_series[2]) / (2.0 * h);
      else if (j == n - 1)
        dg = (3.0 * g_series[n - 1] - 4.0 * g_series[n - 2] + g_series[n - 3]) / (2.0 * h);
      else
        dg = (g_series[j + 1] - g_series[j - 1]) / (2.0 * h);
    } else if (n == 2) {
      dg = (g_series[1] - g_series[0]) / h;
    }
    ledger[j].h2_lhs = dg + nu * ledger[j].palap_l2 * ledger[j].palap_l2;
    ledger[j].gronwall_ok = gron.ok[j] != 0;
    ledger[j].finalbound_ok = fb.ok[j] != 0;
  }
}

std::string diagnostics_csv_header() {
  return "time,l2,h1,h2,h3,l3,l6,lip,grad_l2,palap_l2,omega_alpha_l2,e_alpha,"
         "dissipation_integral,h1_residual,h2_lhs,h2_rhs,h2_residual,f_value,lemma1_ratio,"
         "cond_lip_ok,cond_l3_ok,cond_lip_margin,cond_l3_margin,gronwall_ok,finalbound_ok,"
         "cfl,cfl_ok";
}

std::string diagnostics_csv_row(const DiagnosticsRecord& r) {
  std::string row;
  row.reserve(512);
  auto add = [&row](const std::string& s) {
    if (!row.empty()) row += ',';
    row += s;
  };
  add(fmt(r.time));
  add(fmt(r.norms.l2));
  add(fmt(r.norms.h1));
  add(fmt(r.norms.h2));
  add(fmt(r.norms.h3));
  add(fmt(r.norms.l3));
  add(fmt(r.norms.l6));
  add(fmt(r.norms.lip));
  add(fmt(r.grad_l2));
  add(fmt(r.palap_l2));
  add(fmt(r.omega_alpha_l2));
  add(fmt(r.e_alpha));
  add(fmt(r.dissipation_integral));
  add(fmt(r.h1_residual));
  add(fmt(r.h2_lhs));
  add(fmt(r.h2_rhs));
  add(fmt(r.h2_residual));
  add(fmt(r.f_value));
  add(fmt(r.lemma1_ratio));
  add(r.cond_lip_ok ? "1" : "0");
  add(r.cond_l3_ok ? "1" : "0");
  add(fmt(r.cond_lip_margin));
  add(fmt(r.cond_l3_margin));
  add(r.gronwall_ok ? "1" : "0");
  add(r.finalbound_ok ? "1" : "0");
  add(fmt(r.cfl));
  add(r.cfl_ok ? "1" : "0");
  return row;
}

void write_diagnostics_csv(std::ostream& os, const std::vector<DiagnosticsRecord>& ledger) {
  os << diagnostics_csv_header() << '\n';
  for (const auto& r : ledger) os << diagnostics_csv_row(r) << '\n';
}

void write_diagnostics_jsonl(std::ostream& os, const std::vector<DiagnosticsRecord>& ledger) {
  for (const auto& r : ledger) {
    os << "{\"time\":" << fmt(r.time) << ",\"l2\":" << fmt(r.norms.l2)
       << ",\"h1\":" << fmt(r.norms.h1) << ",\"h2\":" << fmt(r.norms.h2)
       << ",\"h3\":" << fmt(r.norms.h3) << ",\"l3\":" << fmt(r.norms.l3)
       << ",\"l6\":" << fmt(r.norms.l6) << ",\"lip\":" << fmt(r.norms.lip)
       << ",\"grad_l2\":" << fmt(r.grad_l2) << ",\"palap_l2\":" << fmt(r.palap_l2)
       << ",\"omega_alpha_l2\":" << fmt(r.omega_alpha_l2) << ",\"e_alpha\":" << fmt(r.e_alpha)
       << ",\"dissipation_integral\":" << fmt(r.dissipation_integral)
       << ",\"h1_residual\":" << fmt(r.h1_residual) << ",\"h2_lhs\":" << fmt(r.h2_lhs)
       << ",\"h2_rhs\":" << fmt(r.h2_rhs) << ",\"h2_residual\":" << fmt(r.h2_residual)
       << ",\"f_value\":" << fmt(r.f_value) << ",\"lemma1_ratio\":" << fmt(r.lemma1_ratio)
       << ",\"cond_lip_ok\":" << (r.cond_lip_ok ? "true" : "false")
       << ",\"cond_l3_ok\":" << (r.cond_l3_ok ? "true" : "false")
       << ",\"cond_lip_margin\":" << fmt(r.cond_lip_margin)
       << ",\"cond_l3_margin\":" << fmt(r.cond_l3_margin)
       << ",\"gronwall_ok\":" << (r.gronwall_ok ? "true" : "false")
       << ",\"finalbound_ok\":" << (r.finalbound_ok ? "true" : "false")
       << ",\"cfl\":" << fmt(r.cfl) << ",\"cfl_ok\":" << (r.cfl_ok ? "true" : "false") << "}\n";
  }
}

}  // namespace g2flow
