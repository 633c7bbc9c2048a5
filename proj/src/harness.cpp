// SPDX-License-Identifier: Apache-2.0
#include "sdrkdg/harness.hpp"

#include <cmath>
#include <fstream>
#include <memory>
#include <random>

#include "sdrkdg/dg_core.hpp"
#include "sdrkdg/experiments.hpp"
#include "sdrkdg/spectral.hpp"

#ifndef SDRKDG_VERSION
#define SDRKDG_VERSION "0.0.0"
#endif

namespace sdrkdg {

const char* version() { return SDRKDG_VERSION; }

namespace {

std::vector<Variant> variants(VariantSelect v) {
  switch (v) {
    case VariantSelect::standard: return {Variant::standard};
    case VariantSelect::sdA: return {Variant::sdA};
    case VariantSelect::both: break;
  }
  return {Variant::standard, Variant::sdA};
}

TimestepSpec timestep(const RunConfig& c) {
  TimestepSpec t;
  switch (c.tau_rule) {
    case TauRule::paper: t.rule = TimestepRule::paper_smooth; break;
    case TauRule::fixed: t.rule = TimestepRule::fixed_tau; t.tau = c.tau; break;
    case TauRule::cfl: t.rule = TimestepRule::cfl; t.cfl = c.cfl.at(0); break;
  }
  return t;
}

int degree_for(const RunConfig& c, int r) { return c.k ? *c.k : r - 1; }

void accuracy_rows(const RunConfig& c, RunOutcome& o) {
  o.table.header = {"scheme", "variant", "dim", "N", "dofs", "l2_error", "eoc"};
  if (c.raw) o.table.header.insert(o.table.header.end(), {"l2_error_raw", "eoc_raw"});
  for (int r : c.r)
    for (Variant v : variants(c.variant)) {
      AccuracyJob job;
      job.scheme = make_scheme(r, v);
      job.k = degree_for(c, r);
      if (c.command == Command::regularity) {
        const int flat = c.flat == "r" ? r : c.flat == "r+1" ? r + 1 : std::stoi(c.flat);
        job.problem = make_problem(c.dim == 1 ? InitialCondition::sinpow_1d : InitialCondition::sinpow_2d, flat, c.T);
      } else {
        job.problem = make_problem(c.dim == 1 ? InitialCondition::sin_1d : InitialCondition::sin_2d, 0, c.T);
        job.perturb = c.perturb;
      }
      job.seed = c.seed;
      job.N_list = c.N;
      job.timestep = timestep(c);
      job.quad_points = c.quad_points;
      job.form = c.form;
      for (const AccuracyRow& row : accuracy_table(job)) {
        if (row.failed) ++o.flagged;
        std::vector<std::string> f = {row.scheme, to_string(row.variant), std::to_string(row.dim),
                                      std::to_string(row.N), std::to_string(row.dofs), format_error(row.l2_error),
                                      format_eoc(row.eoc)};
        if (c.raw) {
          f.push_back(format_raw(row.l2_error));
          f.push_back(row.eoc ? format_raw(*row.eoc) : std::string());
        }
        o.table.rows.push_back(std::move(f));
      }
    }
}

void stability_rows(const RunConfig& c, RunOutcome& o) {
  o.table.header = {"scheme", "variant", "dim", "N", "m", "cfl", "delta"};
  if (c.raw) o.table.header.push_back("delta_raw");
  DeltaOptions opts;
  opts.seed = c.seed;
  for (int r : c.r)
    for (Variant v : variants(c.variant)) {
      const int k = degree_for(c, r);
      for (const StabilityPoint& p : cfl_sweep(make_scheme(r, v), k, c.dim, c.N, c.m, c.cfl, opts)) {
        if (p.failed) ++o.flagged;
        std::vector<std::string> f = {p.scheme, to_string(p.variant), std::to_string(p.dim), std::to_string(p.N),
                                      std::to_string(p.m), format_sig6(p.cfl),
                                      p.failed ? std::string("nan") : format_sig6(p.delta)};
        if (c.raw) f.push_back(p.failed ? std::string("nan") : format_raw(p.delta));
        o.table.rows.push_back(std::move(f));
      }
    }
  if (o.flagged > 0) o.exit_code = 1;
}

void cfl_rows(const RunConfig& c, RunOutcome& o) {
  o.table.header = {"scheme", "variant", "r", "k", "cfl"};
  if (c.raw) o.table.header.push_back("cfl_raw");
  for (Variant v : variants(c.variant))
    for (int r : c.r) {
      const int k = degree_for(c, r);
      const CflResult res = fourier_cfl(v, r, k);
      std::vector<std::string> f = {make_scheme(r, v).label(k), to_string(v), std::to_string(r), std::to_string(k),
                                    format_sig6(res.cfl)};
      if (c.raw) f.push_back(format_raw(res.cfl));
      o.table.rows.push_back(std::move(f));
    }
}

void prop_rows(const RunConfig& c, RunOutcome& o) {
  o.table.header = {"check", "value", "tolerance", "status"};
  for (const PropCheck& p : property_checks(c.seed)) {
    if (!p.pass) ++o.flagged;
    o.table.rows.push_back({p.name, format_sig6(p.value), format_sig6(p.tolerance), p.pass ? "pass" : "fail"});
  }
  if (o.flagged > 0) o.exit_code = 1;
}

Eigen::VectorXd random_vector(std::size_t n, std::mt19937_64& gen) {
  std::normal_distribution<double> dist;
  Eigen::VectorXd v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = dist(gen);
  return v;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

RunOutcome compute(const RunConfig& c) {
  RunOutcome o;
  o.table.meta = {{"config", c.echo()}, {"seed", std::to_string(c.seed)}, {"version", version()}};
  switch (c.command) {
    case Command::accuracy:
    case Command::regularity: accuracy_rows(c, o); break;
    case Command::stability: stability_rows(c, o); break;
    case Command::cfl: cfl_rows(c, o); break;
    case Command::prop_tests: prop_rows(c, o); break;
  }
  return o;
}

RunOutcome run(const RunConfig& c, std::ostream& out, std::ostream& diag) {
  RunOutcome o = compute(c);
  const std::string text = to_csv(o.table);
  if (c.output == "-") {
    out << text << std::flush;
    if (!out) {
      diag << "error: cannot write CSV to stdout\n";
      o.exit_code = 2;
      return o;
    }
  } else {
    std::ofstream f(c.output, std::ios::binary);
    if (f) f << text;
    if (!f || !f.flush()) {
      diag << "error: cannot write '" << c.output << "'\n";
      o.exit_code = 2;
      return o;
    }
  }
  if (o.flagged > 0) {
    if (o.exit_code == 0) diag << "warning: " << o.flagged << " row(s) flagged (blow-up)\n";
    else diag << "error: " << o.flagged << " row(s) failed\n";
  }
  return o;
}

std::vector<PropCheck> property_checks(std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<PropCheck> out;
  auto add = [&](std::string name, double value, double tol) { out.push_back({std::move(name), value, tol, value <= tol}); };

  for (int dim : {1, 2}) {
    const int k = 2;
    const DGSpace space = dim == 1 ? DGSpace(build_mesh_1d(16, 0.0, 0), k) : DGSpace(build_mesh_2d(6, 6), k);
    const BlockOperator L = assemble_upwind(space);
    const Eigen::VectorXd v = random_vector(space.size(), gen);
    const double lhs = std::pow(jump_seminorm(space, v), 2);
    const double rhs = -(L.apply(v).dot(v) + L.apply_transpose(v).dot(v));
    add("jump_identity_" + std::to_string(dim) + "d", rel(lhs, rhs), 1e-10);

    const Eigen::MatrixXd Lt = reduce(L, space).to_dense();
    const Eigen::MatrixXd direct = assemble_upwind_tested(space, k - 1).to_dense();
    add("reduced_operator_" + std::to_string(dim) + "d", (Lt - direct).norm() / L.to_dense().norm(), 1e-13);
  }

  const DGSpace space(build_mesh_1d(12, 0.0, 0), 3);
  const BlockOperator L = assemble_upwind(space);
  const BlockOperator Lt = reduce(L, space);
  const double tau = 0.02 / 12.0;
  for (int r : {2, 3, 4})
    for (Variant v : {Variant::standard, Variant::sdA}) {
      const SchemeSpec s = make_scheme(r, v);
      const Eigen::VectorXd u = random_vector(space.size(), gen);
      const Eigen::VectorXd a = step(s, L, Lt, u, tau, StepForm::butcher);
      const Eigen::VectorXd b = step(s, L, Lt, u, tau, StepForm::compact);
      add("butcher_equals_compact_" + s.full_label(3), (a - b).norm() / b.norm(), 1e-12);
    }

  for (int r : {2, 3, 4}) {
    const SchemeSpec s = make_scheme(r, Variant::standard);
    const EnergyCoefficients e = energy_coefficients(s.alpha);
    const Eigen::VectorXd w = random_vector(space.size(), gen);
    const double big_tau = 0.1 / 12.0;
    std::vector<Eigen::VectorXd> powers = {w};
    for (int i = 1; i <= r; ++i) powers.push_back(L.apply(powers.back()));
    Eigen::VectorXd Rw = Eigen::VectorXd::Zero(w.size());
    for (int i = 0; i <= r; ++i) Rw += s.alpha[i] * std::pow(big_tau, i) * powers[i];
    double rhs = 0.0;
    for (int i = 0; i <= r; ++i) rhs += e.beta[i] * std::pow(big_tau, 2 * i) * powers[i].squaredNorm();
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        rhs += e.gamma(i, j) * std::pow(big_tau, i + j + 1) * jump_inner(space, powers[i], powers[j]);
    add("energy_identity_RK" + std::to_string(r), rel(Rw.squaredNorm(), rhs), 1e-10);
  }
  return out;
}

}  // namespace sdrkdg
