#include "wf/cli.hpp"

#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wf/families.hpp"
#include "wf/lift.hpp"
#include "wf/matrix_io.hpp"
#include "wf/ppt.hpp"
#include "wf/random.hpp"
#include "wf/registry.hpp"
#include "wf/witness.hpp"

namespace wf {

namespace {

using nlohmann::json;

struct CommonFlags {
  int restarts = OptimizerConfig{}.restarts;
  std::optional<std::uint64_t> seed;
  double tol_zero = OptimizerConfig{}.tol_zero;
  double tol_converge = OptimizerConfig{}.tol_converge;
  int max_sweeps = OptimizerConfig{}.max_sweeps;

  OptimizerConfig config() const {
    OptimizerConfig cfg;
    cfg.restarts = restarts;
    cfg.tol_zero = tol_zero;
    cfg.tol_converge = tol_converge;
    cfg.max_sweeps = max_sweeps;
    if (seed) {
      cfg.seed = *seed;
    } else if (const char* env = std::getenv("WF_SEED")) {
      cfg.seed = std::stoull(env);
    }
    cfg.validate();
    return cfg;
  }
};

void add_common(CLI::App* app, CommonFlags& f) {
  app->add_option("--restarts", f.restarts, "see-saw restarts");
  app->add_option("--seed", f.seed, "RNG seed (default: $WF_SEED or 0)");
  app->add_option("--tol-zero", f.tol_zero, "threshold for a vanishing expectation");
  app->add_option("--tol-converge", f.tol_converge, "relative change per sweep that ends a restart");
  app->add_option("--max-sweeps", f.max_sweeps, "sweep cap per restart");
}

json config_json(const OptimizerConfig& cfg) {
  return {{"restarts", cfg.restarts},
          {"seed", cfg.seed},
          {"tol_zero", cfg.tol_zero},
          {"tol_converge", cfg.tol_converge},
          {"max_sweeps", cfg.max_sweeps}};
}

CVector kron_vector(const CVector& a, const CVector& b) {
  CVector r(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i) r.segment(i * b.size(), b.size()) = a(i) * b;
  return r;
}

json product_json(const ProductVector& pv) { return {{"u", vector_to_json(pv.u)}, {"v", vector_to_json(pv.v)}}; }

json minprod_json(const MinProdResult& r) {
  return {{"value", r.value},
          {"argmin", product_json(r.argmin)},
          {"converged", r.converged},
          {"restarts_used", r.restarts_used},
          {"monotone", r.monotone}};
}

json report(const std::string& command, json inputs, json results, json tolerances, json provenance,
            const std::string& status) {
  return {{"command", command},   {"inputs", std::move(inputs)},         {"results", std::move(results)},
          {"tolerances", std::move(tolerances)}, {"provenance", std::move(provenance)}, {"status", status}};
}

int cmd_classify(const std::string& file, const CommonFlags& flags, std::ostream& out) {
  const OptimizerConfig cfg = flags.config();
  const HermitianOperator x = read_matrix_file(file);
  const ClassificationReport r = classify(x, cfg);
  json results{{"is_psd", r.is_psd},
               {"min_eigenvalue", r.min_eigenvalue},
               {"minprod", minprod_json(r.minprod)},
               {"is_witness", r.is_witness},
               {"weakly_optimal", r.weakly_optimal},
               {"heuristic", r.heuristic()}};
  if (r.negative_eigenvector) results["negative_eigenvector"] = vector_to_json(*r.negative_eigenvector);
  if (r.zero_product) results["zero_product"] = product_json(*r.zero_product);
  out << report("classify", {{"file", file}, {"dims", x.dims()}, {"config", config_json(cfg)}}, results,
                {{"tol_zero", cfg.tol_zero}, {"tol_herm", kHermitianTol}}, json::object(),
                r.is_witness ? "witness" : "not-witness")
             .dump(2)
      << '\n';
  return r.is_witness ? kExitWitness : kExitNotWitness;
}

int cmd_minprod(const std::string& file, bool maximize, const CommonFlags& flags, std::ostream& out) {
  const OptimizerConfig cfg = flags.config();
  const HermitianOperator x = read_matrix_file(file);
  const MinProdResult r = maximize ? max_product_expectation(x, cfg) : min_product_expectation(x, cfg);
  out << report(maximize ? "maxprod" : "minprod",
                {{"file", file}, {"dims", x.dims()}, {"max", maximize}, {"config", config_json(cfg)}},
                minprod_json(r), {{"tol_converge", cfg.tol_converge}}, json::object(),
                r.converged ? "converged" : "indeterminate")
             .dump(2)
      << '\n';
  return 0;
}

struct LiftFlags {
  std::string mode = "witness";
  std::optional<double> alpha, beta, gamma, constant;
  std::string dump;
  int probe_restarts = 8;
  int symmetric_probes = 100;
};

int cmd_lift(const std::string& file, const LiftFlags& lf, const CommonFlags& flags, std::ostream& out) {
  const OptimizerConfig cfg = flags.config();
  const HermitianOperator src = read_matrix_file(file);
  json inputs{{"file", file}, {"mode", lf.mode}, {"config", config_json(cfg)}};
  if (lf.constant) inputs["constant"] = *lf.constant;

  std::optional<LiftedWitness> lw;
  json results;
  Rng rng = make_stream(cfg.seed, 0x6c696674);
  if (lf.mode == "witness") {
    lw = lift_witness(src, lf.constant, cfg);
    double worst = 0.0;
    for (int k = 0; k < lf.symmetric_probes; ++k) {
      const CVector u = random_unit_vector(src.dim() * src.dim(), rng);
      const CVector uu = kron_vector(u, u);
      worst = std::max(worst, std::abs(lw->y->expectation(uu) - two_copy_expectation_formula(src, u)));
    }
    results["expectation_identity_max_error"] = worst;
  } else if (lf.mode == "state") {
    const double a = lf.alpha.value_or(1.0), b = lf.beta.value_or(1.0), g = lf.gamma.value_or(1.0);
    inputs["alpha"] = a;
    inputs["beta"] = b;
    inputs["gamma"] = g;
    const StateLiftParts parts = state_lift_parts(src, a, b, g);
    lw = lift_state(src, a, b, g, lf.constant, cfg);
    const StructuredOperator whole = parts.a();
    double worst = 0.0;
    for (int k = 0; k < lf.symmetric_probes; ++k) {
      const CVector u = random_unit_vector(lw->form().dim_a(), rng);
      const CVector uu = symmetric_product(*lw, u);
      const double sum = parts.alpha_part.expectation(uu) + parts.beta_part.expectation(uu) +
                         parts.gamma_part.expectation(uu);
      worst = std::max(worst, std::abs(whole.expectation(uu) - sum));
    }
    results["linearity_max_error"] = worst;
  } else {
    throw std::invalid_argument("--mode must be witness or state");
  }

  OptimizerConfig probe = cfg;
  probe.restarts = lf.probe_restarts;
  const MinProdResult mp = min_product_expectation(lw->form(), probe);
  results["space"] = lw->space;
  results["slot_dims"] = lw->op->space_dims();
  results["total_dim"] = lw->op->dim();
  results["terms"] = lw->op->terms().size();
  results["constant"] = lw->constant;
  results["y_norm"] = lw->y_norm;
  results["probe_minprod"] = minprod_json(mp);
  if (!lf.dump.empty()) {
    if (lw->op->dim() > kDenseCap) throw DimensionError("dense dump needs total dimension <= 4096");
    write_matrix_file(lf.dump, lw->op->materialize());
    results["dump"] = lf.dump;
  }
  out << report("lift", inputs, results,
                {{"tol_zero", cfg.tol_zero}, {"symmetry_probe", 1e-10}, {"norm_rel_tol", 1e-8}}, json::object(),
                mp.value >= -cfg.tol_zero ? "pass" : "fail")
             .dump(2)
      << '\n';
  return 0;
}

int cmd_family(const std::string& name, const std::vector<double>& params, const std::string& out_file,
               std::ostream& out) {
  const HermitianOperator x = named_family(name, params);
  if (!out_file.empty()) write_matrix_file(out_file, x);
  out << report("family", {{"name", name}, {"params", params}}, {{"matrix", matrix_to_json(x)}}, json::object(),
                json::object(), "ok")
             .dump(2)
      << '\n';
  return 0;
}

int cmd_decompose(const std::string& file, int max_iterations, const CommonFlags& flags, std::ostream& out) {
  const OptimizerConfig cfg = flags.config();
  const HermitianOperator w = read_matrix_file(file);
  const DecompositionResult d = attempt_decomposition(w, cfg, max_iterations);
  json results{{"decomposable", d.decomposition.has_value()},
               {"residual", d.residual},
               {"min_eig_p", d.min_eig_p},
               {"min_eig_q", d.min_eig_q},
               {"iterations", d.iterations}};
  std::string status = d.decomposition ? "decomposable" : "indeterminate";
  if (d.decomposition) {
    results["p"] = matrix_to_json(d.decomposition->p);
    results["q"] = matrix_to_json(d.decomposition->q);
  } else {
    const PPTSearchResult v = find_ppt_violation(w, cfg);
    results["ppt_search"] = {{"best_value", v.best_value}, {"converged", v.converged}, {"restarts_run", v.restarts_run}};
    if (v.violation) {
      results["ppt_violation"] = {{"value", v.violation->value}, {"state", matrix_to_json(v.violation->state)}};
      status = "non-decomposable";
    }
  }
  out << report("decompose", {{"file", file}, {"max_iterations", max_iterations}, {"config", config_json(cfg)}},
                results, {{"residual", 1e-7}, {"psd", 1e-8}, {"tol_zero", cfg.tol_zero}}, json::object(), status)
             .dump(2)
      << '\n';
  return 0;
}

int cmd_reproduce(const std::string& name, bool all, const CommonFlags& flags, std::ostream& out) {
  const OptimizerConfig cfg = flags.config();
  const std::vector<PaperCase> cases = paper_registry();
  std::vector<const PaperCase*> selected;
  if (all) {
    for (const auto& c : cases) selected.push_back(&c);
  } else {
    if (name.empty()) throw std::invalid_argument("reproduce needs --case NAME or --all");
    selected.push_back(&find_case(cases, name));
  }
  json rows = json::array();
  json provenance = json::object();
  bool failed = false;
  int passing_rows = 0;
  for (const PaperCase* c : selected) {
    const CaseOutcome o = run_case(*c, cfg);
    failed = failed || o.status == CaseStatus::Fail;
    json case_rows = json::array();
    for (const CaseRow& r : o.rows) {
      passing_rows += r.pass ? 1 : 0;
      case_rows.push_back({{"quantity", r.quantity},
                           {"value", r.value},
                           {"expected", r.expected},
                           {"tolerance", r.tolerance},
                           {"check", r.check == Check::Near      ? "near"
                                     : r.check == Check::AtLeast ? "at-least"
                                     : r.check == Check::AtMost  ? "at-most"
                                                                 : "report"},
                           {"provenance", r.provenance},
                           {"pass", r.pass}});
      provenance[o.name + ": " + r.quantity] = r.provenance;
    }
    json entry{{"case", o.name}, {"anchor", c->anchor}, {"status", to_string(o.status)}, {"rows", case_rows}};
    if (!o.note.empty()) entry["note"] = o.note;
    rows.push_back(std::move(entry));
  }
  out << report("reproduce", {{"case", all ? "all" : name}, {"config", config_json(cfg)}},
                {{"cases", rows}, {"passing_rows", passing_rows}}, {{"per_row", "see rows[].tolerance"}}, provenance,
                failed ? "fail" : "pass")
             .dump(2)
      << '\n';
  return failed ? kExitError : 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement witness construction and classification"};
  app.require_subcommand(1);
  CommonFlags flags;

  std::string file;
  auto* classify_cmd = app.add_subcommand("classify", "classify an operator from a JSON matrix file");
  classify_cmd->add_option("matrix_file", file)->required();
  add_common(classify_cmd, flags);

  bool maximize = false;
  auto* minprod_cmd = app.add_subcommand("minprod", "minimum (or maximum) product-vector expectation");
  minprod_cmd->add_option("matrix_file", file)->required();
  minprod_cmd->add_flag("--max", maximize, "maximize instead");
  add_common(minprod_cmd, flags);

  LiftFlags lf;
  auto* lift_cmd = app.add_subcommand("lift", "lift a witness or state to the four-copy space");
  lift_cmd->add_option("source_file", file)->required();
  lift_cmd->add_option("--mode", lf.mode)->check(CLI::IsMember({"witness", "state"}));
  lift_cmd->add_option("--alpha", lf.alpha);
  lift_cmd->add_option("--beta", lf.beta);
  lift_cmd->add_option("--gamma", lf.gamma);
  lift_cmd->add_option("--constant", lf.constant);
  lift_cmd->add_option("--dump", lf.dump, "write the dense lifted matrix (total dim <= 4096)");
  lift_cmd->add_option("--probe-restarts", lf.probe_restarts);
  add_common(lift_cmd, flags);

  std::string family_name, family_out;
  std::vector<double> params;
  auto* family_cmd = app.add_subcommand("family", "emit a named operator");
  family_cmd->add_option("--name", family_name)->required();
  family_cmd->add_option("--param", params, "family parameters in order");
  family_cmd->add_option("--out", family_out, "also write the matrix file here");

  int max_iterations = 20000;
  auto* decompose_cmd = app.add_subcommand("decompose", "search for W = P + Q^T_B or a PPT violation");
  decompose_cmd->add_option("matrix_file", file)->required();
  decompose_cmd->add_option("--max-iterations", max_iterations);
  add_common(decompose_cmd, flags);

  std::string case_name;
  bool all = false;
  auto* reproduce_cmd = app.add_subcommand("reproduce", "run reproduction cases");
  reproduce_cmd->add_option("--case", case_name);
  reproduce_cmd->add_flag("--all", all);
  add_common(reproduce_cmd, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (classify_cmd->parsed()) return cmd_classify(file, flags, out);
    if (minprod_cmd->parsed()) return cmd_minprod(file, maximize, flags, out);
    if (lift_cmd->parsed()) return cmd_lift(file, lf, flags, out);
    if (family_cmd->parsed()) return cmd_family(family_name, params, family_out, out);
    if (decompose_cmd->parsed()) return cmd_decompose(file, max_iterations, flags, out);
    if (reproduce_cmd->parsed()) return cmd_reproduce(case_name, all, flags, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace wf
