#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "job.hpp"
#include "voss/error.hpp"

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kDomain = 3 };

struct Flags {
  std::string config;
  std::string family, profile, variant, grid, out, format, report;
  double k = 0, lambda = 0, s = 0, t = 0, a = 0, margin = 0, painleve_tol = 0;
  int strip_index = 0, sign = 0;
  std::vector<double> axes, u, v;
  std::vector<std::string> checks;
  std::map<std::string, CLI::Option*> opt;
};

void add_job_flags(CLI::App* cmd, Flags& f) {
  f.opt["config"] = cmd->add_option("--config", f.config, "JSON job file");
  f.opt["family"] = cmd->add_option("--family", f.family, "surface family");
  f.opt["k"] = cmd->add_option("--k", f.k);
  f.opt["lambda"] = cmd->add_option("--lambda", f.lambda);
  f.opt["s"] = cmd->add_option("--s", f.s);
  f.opt["t"] = cmd->add_option("--t", f.t);
  f.opt["a"] = cmd->add_option("--a", f.a, "catenoid waist radius");
  f.opt["strip_index"] = cmd->add_option("--strip-index", f.strip_index);
  f.opt["sign"] = cmd->add_option("--sign", f.sign, "+1 or -1 (counterexample)");
  f.opt["profile"] = cmd->add_option("--profile", f.profile, "knet or catenoid (bour)");
  f.opt["variant"] = cmd->add_option("--variant", f.variant, "corollary or theorem");
  f.opt["axes"] = cmd->add_option("--axes", f.axes, "ellipsoid semi-axes")->expected(3);
  f.opt["grid"] = cmd->add_option("--grid", f.grid, "samples NxM");
  f.opt["u"] = cmd->add_option("--u", f.u, "u range lo hi")->expected(2);
  f.opt["v"] = cmd->add_option("--v", f.v, "v range lo hi")->expected(2);
  f.opt["margin"] = cmd->add_option("--margin", f.margin);
  f.opt["painleve_tol"] = cmd->add_option("--painleve-tol", f.painleve_tol);
}

bool given(const Flags& f, const char* name) {
  const auto it = f.opt.find(name);
  return it != f.opt.end() && it->second->count() > 0;
}

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw forge::UsageError("cannot read '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw forge::UsageError(path + ": " + e.what());
  }
}

forge::JobConfig build_config(const Flags& f) {
  forge::JobConfig c;
  if (given(f, "config")) c = forge::JobConfig::from_json(read_json(f.config));
  if (given(f, "family")) c.family = f.family;
  if (given(f, "k")) c.k = f.k;
  if (given(f, "lambda")) c.lambda = f.lambda;
  if (given(f, "s")) c.s = f.s;
  if (given(f, "t")) c.t = f.t;
  if (given(f, "a")) c.a = f.a;
  if (given(f, "strip_index")) c.strip_index = f.strip_index;
  if (given(f, "sign")) c.sign = f.sign;
  if (given(f, "profile")) c.profile = f.profile;
  if (given(f, "variant")) c.variant = f.variant;
  if (given(f, "axes")) c.axes = std::array<double, 3>{f.axes[0], f.axes[1], f.axes[2]};
  if (given(f, "grid")) {
    const auto [nu, nv] = forge::parse_grid(f.grid);
    c.nu = nu;
    c.nv = nv;
  }
  if (given(f, "u")) c.u_range = std::array<double, 2>{f.u[0], f.u[1]};
  if (given(f, "v")) c.v_range = std::array<double, 2>{f.v[0], f.v[1]};
  if (given(f, "margin")) c.margin = f.margin;
  if (given(f, "painleve_tol")) c.painleve_tol = f.painleve_tol;
  if (given(f, "checks")) c.checks = f.checks;
  if (given(f, "out")) c.out = f.out;
  if (given(f, "format")) c.format = f.format;
  if (given(f, "report")) c.report = f.report;
  if (c.family.empty()) throw forge::UsageError("no family given (--family or config)");
  return c;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream o(path, std::ios::binary);
  if (!o) throw forge::UsageError("cannot write '" + path + "'");
  o << text;
}

int cmd_gen(const Flags& f) {
  const forge::JobConfig c = build_config(f);
  if (c.out.empty()) throw forge::UsageError("gen: --out is required");
  const forge::Job job(c);
  forge::write_mesh(job.surface(), c.out, c.format);
  std::cerr << "wrote " << c.out << " (" << job.grid().nu << "x" << job.grid().nv << ")\n";
  return kPass;
}

int cmd_verify(const Flags& f) {
  const forge::JobConfig c = build_config(f);
  const forge::Job job(c);
  const voss::VerificationReport r = forge::run_checks(job, c.checks);
  const std::string js = r.to_json().dump(2) + "\n";
  if (c.report.empty()) std::cout << js;
  else write_text(c.report, js);
  std::cerr << r.summary_table();
  return r.pass() ? kPass : kFail;
}

int cmd_export(const std::vector<std::string>& inputs, const std::string& out, const std::string& table) {
  voss::VerificationReport merged;
  for (const auto& path : inputs) {
    voss::VerificationReport r;
    try {
      r = voss::VerificationReport::from_json(read_json(path));
      merged.merge(r);
    } catch (const voss::DomainError& e) {
      throw forge::UsageError(path + ": " + e.what());
    }
  }
  const std::string js = merged.to_json().dump(2) + "\n";
  if (out.empty()) std::cout << js;
  else write_text(out, js);
  if (!table.empty()) write_text(table, merged.summary_table());
  else (out.empty() ? std::cerr : std::cout) << merged.summary_table();
  return merged.pass() ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate and verify Voss nets"};
  app.set_version_flag("--version", "voss-forge 0.3.0");
  app.require_subcommand(1);

  Flags gen, ver;
  CLI::App* g = app.add_subcommand("gen", "write a sampled surface");
  add_job_flags(g, gen);
  gen.opt["out"] = g->add_option("--out,-o", gen.out, "mesh path");
  gen.opt["format"] = g->add_option("--format", gen.format, "obj, ply or csv");

  CLI::App* v = app.add_subcommand("verify", "run verification checks");
  add_job_flags(v, ver);
  ver.opt["checks"] = v->add_option("--checks", ver.checks, "checks to run")->delimiter(',');
  ver.opt["report"] = v->add_option("--report", ver.report, "report JSON path (default stdout)");

  std::vector<std::string> inputs;
  std::string merged_out, table_out;
  CLI::App* e = app.add_subcommand("export-report", "merge verification reports");
  e->add_option("inputs", inputs, "report files")->required();
  e->add_option("--out,-o", merged_out, "merged report path (default stdout)");
  e->add_option("--table", table_out, "summary table path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& s) {
    return app.exit(s);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return kUsage;
  }

  try {
    if (g->parsed()) return cmd_gen(gen);
    if (v->parsed()) return cmd_verify(ver);
    return cmd_export(inputs, merged_out, table_out);
  } catch (const forge::UsageError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kUsage;
  } catch (const voss::DomainError& err) {
    std::cerr << "domain error: " << err.what() << "\n";
    return kDomain;
  } catch (const voss::SolverError& err) {
    std::cerr << "solver error: " << err.what() << "\n";
    return kDomain;
  } catch (const voss::DegenerateError& err) {
    std::cerr << "degenerate: " << err.what() << "\n";
    return kDomain;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kUsage;
  }
}
