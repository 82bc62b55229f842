// Command-line front end over the shared-library C API.  Every numeric is
// printed with 17 significant digits so downstream fits are reproducible;
// CSV uses LF endings and always carries a header row.
//
// Exit codes: 0 ok, 1 usage, 2 domain error, 3 convergence/internal failure,
// 4 verification failure.

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "latband.h"

namespace {

using nlohmann::json;

struct ModelHandle {
  latband_model* ptr = nullptr;
  ~ModelHandle() { latband_model_free(ptr); }
};

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// CSV cell: empty when the value is not defined in this regime.
std::string cell(std::optional<double> v) { return v ? fmt17(*v) : std::string(); }

std::optional<double> opt_of(double v) {
  if (std::isnan(v)) return std::nullopt;
  return v;
}

json json_of(std::optional<double> v) { return v ? json(*v) : json(nullptr); }

int exit_for(int rc) {
  switch (rc) {
    case LATBAND_OK:
    case LATBAND_ENOBOUND:
      return 0;
    case LATBAND_EINVAL:
      return 1;
    case LATBAND_EDOMAIN:
      return 2;
    default:
      return 3;
  }
}

int fail(int rc) {
  std::fprintf(stderr, "error: %s\n", latband_last_error());
  return exit_for(rc);
}

int usage_error(const std::string& message, const std::string& help) {
  std::fprintf(stderr, "error: %s\n%s", message.c_str(), help.c_str());
  return 1;
}

bool parse_reals(const std::string& text, std::vector<double>& out) {
  out.clear();
  std::size_t pos = 0;
  for (;;) {
    const std::size_t comma = text.find(',', pos);
    std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    const auto a = tok.find_first_not_of(" \t");
    if (a == std::string::npos) return false;
    const auto b = tok.find_last_not_of(" \t");
    tok = tok.substr(a, b - a + 1);
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (errno != 0 || end == tok.c_str() || *end != '\0' || !std::isfinite(v)) return false;
    out.push_back(v);
    if (comma == std::string::npos) return true;
    pos = comma + 1;
  }
}

int write_output(const std::string& payload, const std::string& path) {
  if (path.empty()) {
    std::fputs(payload.c_str(), stdout);
    return 0;
  }
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) {
    std::fprintf(stderr, "error: cannot open %s for writing\n", path.c_str());
    return 3;
  }
  std::fputs(payload.c_str(), f);
  std::fclose(f);
  return 0;
}

std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += header[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += row[i];
    }
    out += '\n';
  }
  return out;
}

// Scalar reports are one-row tables in CSV and a single object in JSON.
int emit_record(const std::vector<std::pair<std::string, json>>& fields, const std::string& format,
                const std::string& out_path) {
  std::string payload;
  if (format == "json") {
    json obj = json::object();
    for (const auto& f : fields) obj[f.first] = f.second;
    payload = obj.dump(2) + "\n";
  } else {
    std::vector<std::string> header, row;
    for (const auto& f : fields) {
      header.push_back(f.first);
      const json& v = f.second;
      if (v.is_null())
        row.emplace_back();
      else if (v.is_boolean())
        row.push_back(v.get<bool>() ? "true" : "false");
      else if (v.is_number_integer())
        row.push_back(std::to_string(v.get<long long>()));
      else
        row.push_back(fmt17(v.get<double>()));
    }
    payload = csv_table(header, {row});
  }
  return write_output(payload, out_path);
}

struct CommonOpts {
  int dim = 0;
  std::string k_text;
  double tol = 0.0;
  std::string format = "csv";
  std::string out_path;
};

// Builds the model from --dim/--k; reports usage errors through `help`.
int make_model(const CommonOpts& opts, const std::string& help, ModelHandle& model) {
  std::vector<double> k;
  if (!opts.k_text.empty()) {
    if (!parse_reals(opts.k_text, k)) return usage_error("malformed --k list", help);
    if (static_cast<int>(k.size()) != opts.dim)
      return usage_error("--k must carry exactly --dim components", help);
  }
  model.ptr = latband_model_create(opts.dim, k.empty() ? nullptr : k.data());
  if (!model.ptr) return usage_error(latband_last_error(), help);
  if (opts.tol > 0.0) {
    if (int rc = latband_set_rel_tol(model.ptr, opts.tol)) return fail(rc);
  }
  return -1;  // no failure; continue
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  const double step = (std::log(hi) - std::log(lo)) / (n - 1);
  for (int i = 0; i < n; ++i) out[i] = std::exp(std::log(lo) + step * i);
  out.front() = lo;
  out.back() = hi;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-particle lattice band structure with a contact interaction"};
  app.require_subcommand(1);
  app.set_version_flag("--version", latband_version());

  CommonOpts opts;
  int points = 0;
  int grid_n = 32;
  double s_value = 1.0;
  double mu_value = 0.0;
  double s_min = 0.0, s_max = 0.0, kmax = 0.25;
  std::string axis, direction_text;
  bool coarse = false;
  bool have_mu = false;

  auto add_common = [&](CLI::App* cmd, bool k_flag = true) {
    cmd->add_option("--dim", opts.dim, "lattice dimension")->required();
    if (k_flag) cmd->add_option("--k", opts.k_text, "total quasimomentum, comma-separated");
    cmd->add_option("--tol", opts.tol, "tolerance override");
    cmd->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", opts.out_path, "write output to this path");
    return cmd;
  };

  CLI::App* c_spectrum = add_common(app.add_subcommand("spectrum", "essential spectrum window"));
  CLI::App* c_threshold = add_common(app.add_subcommand("threshold", "coupling threshold"));
  CLI::App* c_nu = add_common(app.add_subcommand("nu", "band-edge Green integral"));
  c_nu->add_option("--s", s_value, "offset above the band maximum")->required();
  CLI::App* c_eigen = add_common(app.add_subcommand("eigenvalue", "bound state above the band"));
  c_eigen->add_option("--mu", mu_value, "coupling strength")->required();
  CLI::App* c_scan = add_common(app.add_subcommand("scan", "coupling or momentum scan"));
  c_scan->add_option("--axis", axis, "scan axis: coupling or momentum")
      ->required()
      ->check(CLI::IsMember({"coupling", "momentum"}));
  c_scan->add_option("--s-min", s_min, "smallest offset in the scan");
  c_scan->add_option("--s-max", s_max, "largest offset in the scan");
  c_scan->add_option("--points", points, "number of scan points");
  c_scan->add_option("--direction", direction_text, "momentum direction, comma-separated");
  c_scan->add_option("--kmax", kmax, "largest momentum magnitude");
  CLI::App* c_verify = add_common(app.add_subcommand("verify", "near-threshold verification suite"), false);
  c_verify->add_flag("--coarse", coarse, "reduced grids");
  CLI::App* c_oracle = add_common(app.add_subcommand("oracle", "finite-lattice cross-check"));
  c_oracle->add_option("--s", s_value, "offset above the band maximum");
  c_oracle->add_option("--mu", mu_value, "coupling strength");
  c_oracle->add_option("--grid", grid_n, "grid points per axis (even)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "error: %s\n%s", e.what(), app.help().c_str());
    return 1;
  }
  have_mu = c_oracle->count("--mu") > 0 || c_eigen->count("--mu") > 0;

  if (c_spectrum->parsed()) {
    ModelHandle model;
    if (int rc = make_model(opts, c_spectrum->help(), model); rc >= 0) return rc;
    double e_min = 0, e_max = 0;
    int pi_cls = 0, d_eff = 0;
    if (int rc = latband_spectrum(model.ptr, &e_min, &e_max, &pi_cls, &d_eff)) return fail(rc);
    return emit_record({{"e_min", e_min}, {"e_max", e_max}, {"pi_class", pi_cls}, {"d_eff", d_eff}},
                       opts.format, opts.out_path);
  }

  if (c_threshold->parsed()) {
    ModelHandle model;
    if (int rc = make_model(opts, c_threshold->help(), model); rc >= 0) return rc;
    double nu_edge = 0, mu0 = 0;
    if (int rc = latband_nu_edge(model.ptr, &nu_edge)) return fail(rc);
    if (int rc = latband_threshold(model.ptr, &mu0)) return fail(rc);
    const double rel = opts.tol > 0.0 ? opts.tol : 1e-8;
    return emit_record({{"nu_edge", nu_edge}, {"mu0", mu0}, {"rel_err_bound", rel}}, opts.format,
                       opts.out_path);
  }

  if (c_nu->parsed()) {
    ModelHandle model;
    if (int rc = make_model(opts, c_nu->help(), model); rc >= 0) return rc;
    double nu = 0;
    if (int rc = latband_nu(model.ptr, s_value, &nu)) return fail(rc);
    return emit_record({{"s", s_value}, {"nu", nu}}, opts.format, opts.out_path);
  }

  if (c_eigen->parsed()) {
    ModelHandle model;
    if (int rc = make_model(opts, c_eigen->help(), model); rc >= 0) return rc;
    latband_bound_state st;
    const int rc = latband_solve(model.ptr, mu_value, opts.tol, &st);
    if (rc == LATBAND_OK) {
      return emit_record({{"bound", true},
                          {"z", st.z},
                          {"s", st.s},
                          {"mu0", json_of(opt_of(st.mu0))},
                          {"residual", st.residual},
                          {"iterations", st.iterations}},
                         opts.format, opts.out_path);
    }
    if (rc == LATBAND_ENOBOUND) {
      // Below-threshold coupling is a legitimate regime, not a failure.
      return emit_record({{"bound", false}, {"mu0", st.mu0}}, opts.format, opts.out_path);
    }
    return fail(rc);
  }

  if (c_scan->parsed()) {
    if (axis == "coupling") {
      ModelHandle model;
      if (int rc = make_model(opts, c_scan->help(), model); rc >= 0) return rc;
      if (s_min <= 0.0) s_min = opts.dim == 3 ? 1e-12 : 1e-8;
      if (s_max <= 0.0) s_max = opts.dim == 3 ? 1e-4 : 1e-2;
      if (points <= 0) points = 33;
      if (s_min > s_max) return usage_error("--s-min must not exceed --s-max", c_scan->help());
      const std::vector<double> grid = log_grid(s_min, s_max, points);
      std::vector<double> lambdas(grid.size());
      if (int rc = latband_scan_coupling(model.ptr, grid.data(), static_cast<int>(grid.size()),
                                         lambdas.data()))
        return fail(rc);
      std::vector<std::vector<std::string>> rows;
      json jrows = json::array();
      for (std::size_t i = 0; i < grid.size(); ++i) {
        double sg = NAN, tu = NAN, om = NAN;
        latband_expansion_variables(opts.dim, lambdas[i], &sg, &tu, &om);
        rows.push_back({fmt17(grid[i]), fmt17(lambdas[i]), cell(opt_of(sg)), cell(opt_of(tu)),
                        cell(opt_of(om))});
        jrows.push_back({{"s", grid[i]},
                         {"lambda", lambdas[i]},
                         {"sigma", json_of(opt_of(sg))},
                         {"tau", json_of(opt_of(tu))},
                         {"omega", json_of(opt_of(om))}});
      }
      const std::string payload = opts.format == "json"
                                      ? jrows.dump(2) + "\n"
                                      : csv_table({"s", "lambda", "sigma", "tau", "omega"}, rows);
      return write_output(payload, opts.out_path);
    }

    // momentum scan: |K| halves from kmax, direction fixed.
    std::vector<double> dir;
    if (direction_text.empty()) {
      dir.assign(opts.dim, 0.0);
      dir[0] = 1.0;
    } else if (!parse_reals(direction_text, dir) || static_cast<int>(dir.size()) != opts.dim) {
      return usage_error("malformed --direction list", c_scan->help());
    }
    double norm = 0.0;
    for (double x : dir) norm += x * x;
    norm = std::sqrt(norm);
    if (norm == 0.0) return usage_error("--direction must be nonzero", c_scan->help());
    if (points <= 0) points = 9;
    if (!(kmax > 0.0)) return usage_error("--kmax must be positive", c_scan->help());
    std::vector<std::vector<std::string>> rows;
    json jrows = json::array();
    for (int i = 0; i < points; ++i) {
      const double kap = kmax * std::ldexp(1.0, -i);
      std::vector<double> comps(dir);
      for (double& x : comps) x *= kap / norm;
      ModelHandle model;
      model.ptr = latband_model_create(opts.dim, comps.data());
      if (!model.ptr) return usage_error(latband_last_error(), c_scan->help());
      if (opts.tol > 0.0) {
        if (int rc = latband_set_rel_tol(model.ptr, opts.tol)) return fail(rc);
      }
      double shift = 0.0;
      if (int rc = latband_threshold_shift(model.ptr, &shift)) return fail(rc);
      rows.push_back({fmt17(kap), fmt17(shift)});
      jrows.push_back({{"k_norm", kap}, {"z_minus_emax0", shift}});
    }
    const std::string payload = opts.format == "json"
                                    ? jrows.dump(2) + "\n"
                                    : csv_table({"k_norm", "z_minus_emax0"}, rows);
    return write_output(payload, opts.out_path);
  }

  if (c_verify->parsed()) {
    if (opts.dim < 3 || opts.dim > 6) {
      std::fprintf(stderr, "error: verify supports dimensions 3 through 6\n");
      return 2;
    }
    ModelHandle model;
    model.ptr = latband_model_create(opts.dim, nullptr);
    if (!model.ptr) return fail(LATBAND_EINTERNAL);
    if (opts.tol > 0.0) {
      if (int rc = latband_set_rel_tol(model.ptr, opts.tol)) return fail(rc);
    }
    latband_check checks[32];
    int n_coupling = 0, n_momentum = 0;
    if (int rc = latband_verify_coupling(model.ptr, coarse ? 1 : 0, checks, 16, &n_coupling))
      return fail(rc);
    std::vector<double> dir(opts.dim, 0.0);
    dir[0] = 1.0;
    if (int rc = latband_verify_momentum(opts.dim, dir.data(), coarse ? 1 : 0, checks + n_coupling,
                                         16, &n_momentum))
      return fail(rc);
    const int total = n_coupling + n_momentum;
    bool all_pass = true;
    std::vector<std::vector<std::string>> rows;
    json jrows = json::array();
    for (int i = 0; i < total; ++i) {
      const latband_check& c = checks[i];
      all_pass = all_pass && c.pass != 0;
      const std::string scope = i < n_coupling ? "coupling" : "momentum";
      rows.push_back({scope + ":" + c.name, fmt17(c.measured), fmt17(c.predicted),
                      fmt17(c.rel_dev), fmt17(c.tol), c.pass ? "1" : "0"});
      jrows.push_back({{"name", scope + ":" + c.name},
                       {"measured", c.measured},
                       {"predicted", c.predicted},
                       {"rel_dev", c.rel_dev},
                       {"tol", c.tol},
                       {"pass", c.pass != 0}});
    }
    const std::string payload =
        opts.format == "json"
            ? jrows.dump(2) + "\n"
            : csv_table({"name", "measured", "predicted", "rel_dev", "tol", "pass"}, rows);
    if (int rc = write_output(payload, opts.out_path)) return rc;
    if (!all_pass) {
      std::fprintf(stderr, "verification FAILED\n");
      return 4;
    }
    return 0;
  }

  if (c_oracle->parsed()) {
    ModelHandle model;
    if (int rc = make_model(opts, c_oracle->help(), model); rc >= 0) return rc;
    std::vector<std::vector<std::string>> rows;
    json jrows = json::array();
    double nu_grid = 0, nu_ref = 0;
    if (int rc = latband_grid_nu(model.ptr, s_value, grid_n, &nu_grid)) return fail(rc);
    if (int rc = latband_nu(model.ptr, s_value, &nu_ref)) return fail(rc);
    const double nu_dev = nu_grid / nu_ref - 1.0;
    rows.push_back({"nu", fmt17(nu_grid), fmt17(nu_ref), fmt17(nu_dev)});
    jrows.push_back(
        {{"quantity", "nu"}, {"lattice", nu_grid}, {"reference", nu_ref}, {"rel_diff", nu_dev}});
    if (have_mu) {
      double z_grid = 0;
      if (int rc = latband_grid_eigenvalue(model.ptr, mu_value, grid_n, &z_grid)) return fail(rc);
      latband_bound_state st;
      const int rc = latband_solve(model.ptr, mu_value, opts.tol, &st);
      if (rc != LATBAND_OK && rc != LATBAND_ENOBOUND) return fail(rc);
      std::optional<double> z_ref, z_dev;
      if (rc == LATBAND_OK) {
        z_ref = st.z;
        z_dev = z_grid / st.z - 1.0;
      }
      rows.push_back({"eigenvalue", fmt17(z_grid), cell(z_ref), cell(z_dev)});
      jrows.push_back({{"quantity", "eigenvalue"},
                       {"lattice", z_grid},
                       {"reference", json_of(z_ref)},
                       {"rel_diff", json_of(z_dev)}});
    }
    const std::string payload =
        opts.format == "json"
            ? jrows.dump(2) + "\n"
            : csv_table({"quantity", "lattice", "reference", "rel_diff"}, rows);
    return write_output(payload, opts.out_path);
  }

  std::fprintf(stderr, "%s", app.help().c_str());
  return 1;
}
