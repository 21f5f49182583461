// Command-line surface for the fuzzobs library: construct observables from
// JSON documents, run the structural property checkers, and emit one JSON
// report per invocation on stdout.
//
// Exit codes: 0 ok, 2 schema violation, 3 invariant violation,
// 4 precondition failure, 5 resource cap.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fuzzobs/fuzzobs.hpp"
#include "fuzzobs/serialization.hpp"

namespace {

using fuzzobs::Complex;
using nlohmann::ordered_json;

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw fuzzobs::SchemaError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string bytes = buffer.str();
  std::uint64_t hash = 1469598103934665603ull;  // FNV-1a
  for (unsigned char b : bytes) {
    hash ^= b;
    hash *= 1099511628211ull;
  }
  char out[24];
  std::snprintf(out, sizeof(out), "fnv1a:%016llx", static_cast<unsigned long long>(hash));
  return out;
}

int brute_force_cap() {
  if (const char* env = std::getenv("FUZZOBS_MAX_N")) {
    const int cap = std::atoi(env);
    if (cap >= 2) return cap;
  }
  return fuzzobs::kDefaultBruteForceCap;
}

ordered_json complex_list(const std::vector<Complex>& values) {
  ordered_json out = ordered_json::array();
  for (const Complex& z : values) out.push_back(ordered_json{z.real(), z.imag()});
  return out;
}

struct Emitter {
  explicit Emitter(std::string command)
      : start(std::chrono::steady_clock::now()) {
    report["command"] = std::move(command);
    report["inputs"] = ordered_json::object();
    report["tolerances"] = ordered_json::object();
    report["results"] = ordered_json::object();
  }

  void input(const std::string& name, const std::string& path) {
    report["inputs"][name] = ordered_json{{"path", path}, {"digest", file_digest(path)}};
  }

  void finish(bool pretty) {
    const auto elapsed = std::chrono::steady_clock::now() - start;
    report["timing_ms"] =
        std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(elapsed).count();
    std::cout << (pretty ? report.dump(2) : report.dump()) << "\n";
    if (pretty) human_summary();
  }

  // Scalar result fields as one line each on stderr; stdout stays JSON.
  void human_summary() const {
    std::cerr << "# " << report["command"].get<std::string>() << "\n";
    for (const auto& [group, value] : report["results"].items()) {
      if (value.is_object()) {
        for (const auto& [key, field] : value.items())
          if (field.is_primitive() && key != "operation")
            std::cerr << "#   " << group << "." << key << " = " << field.dump() << "\n";
      } else if (value.is_primitive() && group != "operation") {
        std::cerr << "#   " << group << " = " << value.dump() << "\n";
      }
    }
  }

  ordered_json report;
  std::chrono::steady_clock::time_point start;
};

// Canonical system matching an observable document; the multiplicity is
// dim / N and must divide evenly.
fuzzobs::CanonicalSystem matching_canonical(const fuzzobs::Observable& obs) {
  if (obs.dim() % obs.order() != 0)
    throw fuzzobs::PreconditionError(
        "observable dimension is not a multiple of N; no canonical system matches");
  return fuzzobs::canonical_system(obs.order(), obs.dim() / obs.order());
}

struct CheckFlags {
  bool covariance = false;
  bool norm1 = false;
  bool regular = false;
  bool coarsen = false;
  bool equiv = false;
  bool any() const { return covariance || norm1 || regular || coarsen || equiv; }
};

void run_check(const std::string& observable_path, CheckFlags flags, double tol_covariance,
               double tol_norm1, double tol_regular, double tol_equiv, bool pretty) {
  Emitter emitter("check");
  emitter.input("observable", observable_path);
  if (!flags.any()) flags = CheckFlags{true, true, true, true, true};

  const fuzzobs::Observable obs =
      fuzzobs::observable_from_json(fuzzobs::load_json_file(observable_path));
  emitter.report["inputs"]["observable"]["N"] = obs.order();
  emitter.report["inputs"]["observable"]["dim"] = obs.dim();
  ordered_json& results = emitter.report["results"];
  ordered_json& tolerances = emitter.report["tolerances"];

  if (flags.covariance) {
    tolerances["covariance"] = tol_covariance;
    const auto sys = matching_canonical(obs);
    const auto report = fuzzobs::check_covariance(obs, sys.shift, tol_covariance);
    results["covariance"] = ordered_json{{"operation", "check_covariance"},
                                         {"covariant", report.covariant},
                                         {"deviation", report.deviation}};
  }
  if (flags.norm1) {
    tolerances["norm1"] = tol_norm1;
    const auto report = fuzzobs::has_norm_one_property(obs, tol_norm1, brute_force_cap());
    results["norm1"] = ordered_json{
        {"operation", "has_norm_one_property"},
        {"holds", report.holds},
        {"worst_set", fuzzobs::subset_elements(report.worst_set, obs.order())},
        {"worst_norm", report.worst_norm}};
  }
  if (flags.regular) {
    tolerances["regular"] = tol_regular;
    const auto report = fuzzobs::is_regular(obs, tol_regular, brute_force_cap());
    ordered_json entry{{"operation", "is_regular"}, {"regular", report.regular}};
    if (report.witness) {
      entry["witness"] = fuzzobs::subset_elements(*report.witness, obs.order());
      entry["witness_min_eig"] = report.witness_min_eig;
      entry["witness_max_eig"] = report.witness_max_eig;
    } else {
      entry["witness"] = nullptr;
    }
    results["regular"] = std::move(entry);
  }

  std::optional<fuzzobs::CoarseKernel> kernel;
  std::optional<fuzzobs::ProbabilityMeasure> extracted;
  if (flags.coarsen || flags.equiv) {
    const auto sys = matching_canonical(obs);
    kernel = fuzzobs::solve_coarsening(obs, sys.sharp);
    if (fuzzobs::translation_commutes(*kernel))
      extracted = fuzzobs::extract_smearing_measure(*kernel);
  }
  if (flags.coarsen) {
    ordered_json entry{{"operation", "solve_coarsening"},
                       {"factorized", true},
                       {"translation_commutes", extracted.has_value()}};
    entry["kernel_rows"] = kernel->rows();
    entry["extracted_measure"] =
        extracted ? ordered_json(extracted->weights()) : ordered_json(nullptr);
    results["coarsen"] = std::move(entry);
  }
  if (flags.equiv) {
    tolerances["equiv"] = tol_equiv;
    if (!extracted)
      throw fuzzobs::NotCovariantError(
          "observable is not a covariant smearing; equivalence test needs one");
    const auto decision = fuzzobs::informationally_equivalent(*extracted, tol_equiv);
    ordered_json entry{{"operation", "informationally_equivalent"},
                       {"equivalent", decision.equivalent},
                       {"zero_characters", decision.zero_characters},
                       {"min_abs_transform", decision.min_modulus}};
    if (!decision.equivalent) {
      const auto sys = matching_canonical(obs);
      const auto witness =
          fuzzobs::inequivalence_witness(sys.sharp, *extracted, decision.zero_characters[0]);
      const auto p_sharp_psi = fuzzobs::distribution(sys.sharp.observable(), witness.psi);
      const auto p_sharp_phi = fuzzobs::distribution(sys.sharp.observable(), witness.phi);
      const auto p_obs_psi = fuzzobs::distribution(obs, witness.psi);
      const auto p_obs_phi = fuzzobs::distribution(obs, witness.phi);
      entry["witness"] =
          ordered_json{{"character", decision.zero_characters[0]},
                       {"psi", complex_list(witness.psi.amplitudes())},
                       {"phi", complex_list(witness.phi.amplitudes())},
                       {"sharp_tv_gap", fuzzobs::total_variation(p_sharp_psi, p_sharp_phi)},
                       {"smeared_tv_gap", fuzzobs::total_variation(p_obs_psi, p_obs_phi)}};
    }
    results["equiv"] = std::move(entry);
  }
  emitter.finish(pretty);
}

void run_smear(const std::string& measure_path, int multiplicity, const std::string& out_path,
               bool pretty) {
  Emitter emitter("smear");
  emitter.input("measure", measure_path);
  const auto rho = fuzzobs::measure_from_json(fuzzobs::load_json_file(measure_path));
  const auto sys = fuzzobs::canonical_system(rho.order(), multiplicity);
  const auto smeared = fuzzobs::smear_by_measure(sys.sharp, rho);
  fuzzobs::save_json_file(out_path, fuzzobs::observable_to_json(smeared));
  emitter.report["results"] = ordered_json{{"operation", "smear_by_measure"},
                                           {"N", smeared.order()},
                                           {"dim", smeared.dim()},
                                           {"multiplicity", multiplicity},
                                           {"out", out_path}};
  emitter.finish(pretty);
}

void run_kernel(const std::string& kernel_path, const std::string& measure_path,
                int multiplicity, const std::string& smear_out, bool pretty) {
  Emitter emitter("kernel");
  std::optional<fuzzobs::ConfidenceKernel> nu;
  if (!kernel_path.empty()) {
    emitter.input("kernel", kernel_path);
    nu = fuzzobs::kernel_from_json(fuzzobs::load_json_file(kernel_path));
  } else {
    emitter.input("measure", measure_path);
    const auto rho = fuzzobs::measure_from_json(fuzzobs::load_json_file(measure_path));
    nu = fuzzobs::ConfidenceKernel::from_translates(rho);
  }
  const auto coarse = fuzzobs::kernel_from_confidence(*nu);
  const bool circulant = fuzzobs::translation_commutes(coarse);
  ordered_json& results = emitter.report["results"];
  results["operation"] = "kernel_from_confidence";
  results["N"] = nu->order();
  results["rows"] = coarse.rows();
  results["translation_commutes"] = circulant;
  results["extracted_measure"] =
      circulant ? ordered_json(fuzzobs::extract_smearing_measure(coarse).weights())
                : ordered_json(nullptr);
  if (!smear_out.empty()) {
    const auto sys = fuzzobs::canonical_system(nu->order(), multiplicity);
    fuzzobs::save_json_file(smear_out,
                            fuzzobs::observable_to_json(fuzzobs::smear(sys.sharp, *nu)));
    results["smear_out"] = smear_out;
  }
  emitter.finish(pretty);
}

fuzzobs::torus::CMatrix load_valid_cmatrix(Emitter& emitter, const std::string& path) {
  emitter.input("cmatrix", path);
  auto c = fuzzobs::cmatrix_from_json(fuzzobs::load_json_file(path));
  const auto validation = fuzzobs::torus::validate_cmatrix(c);
  if (!validation.valid)
    throw fuzzobs::InvariantError("coefficient matrix violates '" + validation.violated + "'");
  return c;
}

void run_torus_validate(const std::string& path, bool pretty) {
  Emitter emitter("torus validate");
  emitter.input("cmatrix", path);
  const auto c = fuzzobs::cmatrix_from_json(fuzzobs::load_json_file(path));
  const auto validation = fuzzobs::torus::validate_cmatrix(c);
  emitter.report["results"] =
      ordered_json{{"operation", "validate_cmatrix"},
                   {"K", c.half_width()},
                   {"valid", validation.valid},
                   {"violated", validation.valid ? ordered_json(nullptr)
                                                 : ordered_json(validation.violated)}};
  emitter.finish(pretty);
}

void run_torus_toeplitz(const std::string& path, double tol, bool pretty) {
  Emitter emitter("torus toeplitz");
  const auto c = load_valid_cmatrix(emitter, path);
  emitter.report["tolerances"]["toeplitz"] = tol;
  const auto check = fuzzobs::torus::commutes_with_sharp(c, tol);
  ordered_json entry{{"operation", "commutes_with_sharp"}, {"toeplitz", check.toeplitz}};
  entry["counterexample"] =
      check.toeplitz
          ? ordered_json(nullptr)
          : ordered_json{{"n", check.n}, {"m", check.m}, {"shift", check.shift}};
  emitter.report["results"] = std::move(entry);
  emitter.finish(pretty);
}

void run_torus_toigo(int half_width, const std::string& out_path, bool pretty) {
  Emitter emitter("torus toigo");
  const auto c = fuzzobs::torus::toigo_cmatrix(half_width);
  fuzzobs::save_json_file(out_path, fuzzobs::cmatrix_to_json(c));
  emitter.report["results"] = ordered_json{
      {"operation", "toigo_cmatrix"},
      {"K", half_width},
      {"valid", fuzzobs::torus::validate_cmatrix(c).valid},
      {"out", out_path}};
  emitter.finish(pretty);
}

void run_torus_herglotz(const std::string& path, const std::string& mode, int grid,
                        const std::string& out_path, bool pretty) {
  Emitter emitter("torus herglotz");
  const auto c = load_valid_cmatrix(emitter, path);
  const auto phi = fuzzobs::torus::herglotz_sequence(c);
  const auto reconstruction_mode = mode == "fejer"
                                       ? fuzzobs::torus::ReconstructionMode::fejer
                                       : fuzzobs::torus::ReconstructionMode::caratheodory;
  const auto rho = fuzzobs::torus::herglotz_reconstruct(phi, reconstruction_mode, grid);

  const int k = phi.half_width();
  double residual = 0.0;
  for (int j = -k; j <= k; ++j) {
    const Complex target =
        reconstruction_mode == fuzzobs::torus::ReconstructionMode::fejer
            ? (1.0 - std::abs(j) / static_cast<double>(k + 1)) * phi.at(j)
            : phi.at(j);
    residual = std::max(residual, std::abs(fuzzobs::torus::moment(rho, j) - target));
  }

  std::vector<Complex> sequence;
  for (int j = -k; j <= k; ++j) sequence.push_back(phi.at(j));
  ordered_json& results = emitter.report["results"];
  results["operation"] = "herglotz_reconstruct";
  results["K"] = k;
  results["mode"] = mode;
  results["sequence"] = complex_list(sequence);
  results["moment_residual"] = residual;
  if (rho.is_atomic()) {
    ordered_json atoms = ordered_json::array();
    for (const auto& atom : rho.atoms())
      atoms.push_back(ordered_json{{"angle", atom.angle}, {"weight", atom.weight}});
    results["atoms"] = std::move(atoms);
  } else {
    results["grid_size"] = rho.samples().size();
  }
  if (!out_path.empty()) {
    fuzzobs::save_json_file(out_path, fuzzobs::torus_measure_to_json(rho));
    results["out"] = out_path;
  }
  emitter.finish(pretty);
}

void run_torus_commutator(const std::string& path, int arcs, bool pretty) {
  Emitter emitter("torus commutator");
  const auto c = load_valid_cmatrix(emitter, path);
  emitter.report["results"] =
      ordered_json{{"operation", "commutator_diagnostic"},
                   {"K", c.half_width()},
                   {"arcs", arcs},
                   {"diagnostic", fuzzobs::torus::commutator_diagnostic(c, arcs)}};
  emitter.finish(pretty);
}

void run_sg(double a, double b, bool pretty) {
  Emitter emitter("sg");
  const auto model = fuzzobs::build_sg(a, b);
  const auto report = fuzzobs::analyze_sg(model);
  emitter.report["results"] = ordered_json{{"operation", "analyze_sg"},
                                           {"a", a},
                                           {"b", b},
                                           {"is_sharp", report.is_sharp},
                                           {"has_norm_one", report.has_norm_one},
                                           {"is_regular", report.is_regular},
                                           {"is_info_equivalent", report.is_info_equivalent},
                                           {"norms", {report.norm_up, report.norm_down}}};
  emitter.finish(pretty);
}

void run_witness(const std::string& measure_path, int multiplicity, int character,
                 const std::string& out_path, double tol_equiv, bool pretty) {
  Emitter emitter("witness");
  emitter.input("measure", measure_path);
  emitter.report["tolerances"]["equiv"] = tol_equiv;
  const auto rho = fuzzobs::measure_from_json(fuzzobs::load_json_file(measure_path));
  const auto decision = fuzzobs::informationally_equivalent(rho, tol_equiv);
  if (decision.equivalent)
    throw fuzzobs::NonVanishingTransformError(
        "transform vanishes nowhere; the smearing is informationally equivalent");
  const int xi0 = character >= 0 ? character : decision.zero_characters[0];

  const auto sys = fuzzobs::canonical_system(rho.order(), multiplicity);
  const auto witness = fuzzobs::inequivalence_witness(sys.sharp, rho, xi0);
  const auto smeared = fuzzobs::smear_by_measure(sys.sharp, rho);
  const auto p_sharp_psi = fuzzobs::distribution(sys.sharp.observable(), witness.psi);
  const auto p_sharp_phi = fuzzobs::distribution(sys.sharp.observable(), witness.phi);
  const auto p_smear_psi = fuzzobs::distribution(smeared, witness.psi);
  const auto p_smear_phi = fuzzobs::distribution(smeared, witness.phi);

  ordered_json& results = emitter.report["results"];
  results["operation"] = "inequivalence_witness";
  results["zero_characters"] = decision.zero_characters;
  results["character"] = xi0;
  results["psi"] = complex_list(witness.psi.amplitudes());
  results["phi"] = complex_list(witness.phi.amplitudes());
  results["sharp_tv_gap"] = fuzzobs::total_variation(p_sharp_psi, p_sharp_phi);
  results["smeared_tv_gap"] = fuzzobs::total_variation(p_smear_psi, p_smear_phi);
  if (!out_path.empty()) {
    ordered_json doc{{"N", rho.order()},
                     {"dim", sys.sharp.dim()},
                     {"psi", complex_list(witness.psi.amplitudes())},
                     {"phi", complex_list(witness.phi.amplitudes())}};
    fuzzobs::save_json_file(out_path, doc);
    results["out"] = out_path;
  }
  emitter.finish(pretty);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"covariant fuzzy observables on Z_N and the torus"};
  app.require_subcommand(1);
  bool pretty = false;
  app.add_flag("--pretty", pretty, "indent the JSON report");

  // smear
  auto* smear_cmd = app.add_subcommand("smear", "smear the canonical sharp observable");
  std::string smear_measure, smear_out;
  int smear_mult = 1;
  smear_cmd->add_option("--measure", smear_measure, "measure JSON")->required();
  smear_cmd->add_option("--multiplicity", smear_mult, "block multiplicity")
      ->check(CLI::PositiveNumber);
  smear_cmd->add_option("--out", smear_out, "observable JSON output")->required();

  // check
  auto* check_cmd = app.add_subcommand("check", "run property checkers on an observable");
  std::string check_observable;
  CheckFlags check_flags;
  double tol_covariance = 1e-12, tol_norm1 = 1e-9, tol_regular = 1e-9, tol_equiv = 1e-9;
  check_cmd->add_option("--observable", check_observable, "observable JSON")->required();
  check_cmd->add_flag("--covariance", check_flags.covariance, "covariance against the shift");
  check_cmd->add_flag("--norm1", check_flags.norm1, "norm-1 property (brute force)");
  check_cmd->add_flag("--regular", check_flags.regular, "regularity (brute force)");
  check_cmd->add_flag("--coarsen", check_flags.coarsen, "coarse-graining factorization");
  check_cmd->add_flag("--equiv", check_flags.equiv, "informational equivalence");
  check_cmd->add_option("--tol-covariance", tol_covariance, "covariance tolerance");
  check_cmd->add_option("--tol-norm1", tol_norm1, "norm-1 tolerance");
  check_cmd->add_option("--tol-regular", tol_regular, "regularity tolerance");
  check_cmd->add_option("--tol-equiv", tol_equiv, "transform-zero tolerance");

  // kernel
  auto* kernel_cmd = app.add_subcommand("kernel", "inspect a confidence kernel");
  std::string kernel_path, kernel_measure, kernel_smear_out;
  int kernel_mult = 1;
  auto* kernel_opt = kernel_cmd->add_option("--kernel", kernel_path, "kernel JSON");
  kernel_cmd->add_option("--from-measure", kernel_measure, "build rows from measure translates")
      ->excludes(kernel_opt);
  kernel_cmd->add_option("--multiplicity", kernel_mult, "block multiplicity")
      ->check(CLI::PositiveNumber);
  kernel_cmd->add_option("--smear-out", kernel_smear_out, "write the smeared observable");

  // torus
  auto* torus_cmd = app.add_subcommand("torus", "truncated torus models");
  torus_cmd->require_subcommand(1);
  std::string torus_cmatrix, torus_out, torus_mode = "caratheodory";
  int torus_k = 6, torus_grid = 256, torus_arcs = 8;
  double tol_toeplitz = 1e-12;

  auto* tv = torus_cmd->add_subcommand("validate", "check coefficient-matrix conditions");
  tv->add_option("--cmatrix", torus_cmatrix, "c-matrix JSON")->required();

  auto* tt = torus_cmd->add_subcommand("toeplitz", "Toeplitz / sharp-commutation test");
  tt->add_option("--cmatrix", torus_cmatrix, "c-matrix JSON")->required();
  tt->add_option("--tol-toeplitz", tol_toeplitz, "Toeplitz tolerance");

  auto* tg = torus_cmd->add_subcommand("toigo", "write the parity counterexample matrix");
  tg->add_option("--K", torus_k, "half-width")->check(CLI::PositiveNumber);
  tg->add_option("--out", torus_out, "c-matrix JSON output")->required();

  auto* th = torus_cmd->add_subcommand("herglotz", "moment sequence and reconstruction");
  th->add_option("--cmatrix", torus_cmatrix, "c-matrix JSON")->required();
  th->add_option("--mode", torus_mode, "fejer | caratheodory")
      ->check(CLI::IsMember({"fejer", "caratheodory"}));
  th->add_option("--grid", torus_grid, "fejer grid size")->check(CLI::PositiveNumber);
  th->add_option("--out", torus_out, "torus-measure JSON output");

  auto* tc = torus_cmd->add_subcommand("commutator", "arc-partition commutator diagnostic");
  tc->add_option("--cmatrix", torus_cmatrix, "c-matrix JSON")->required();
  tc->add_option("--arcs", torus_arcs, "partition size")->check(CLI::PositiveNumber);

  // sg
  auto* sg_cmd = app.add_subcommand("sg", "two-valued beam-experiment observable");
  double sg_a = 1.0, sg_b = 0.0;
  sg_cmd->add_option("--a", sg_a, "up-component detection probability")->required();
  sg_cmd->add_option("--b", sg_b, "down-component detection probability")->required();

  // witness
  auto* witness_cmd = app.add_subcommand("witness", "states separating sharp from smeared");
  std::string witness_measure, witness_out;
  int witness_mult = 1, witness_character = -1;
  double witness_tol = 1e-9;
  witness_cmd->add_option("--measure", witness_measure, "measure JSON")->required();
  witness_cmd->add_option("--multiplicity", witness_mult, "block multiplicity")
      ->check(CLI::PositiveNumber);
  witness_cmd->add_option("--character", witness_character, "zero character to use");
  witness_cmd->add_option("--tol-equiv", witness_tol, "transform-zero tolerance");
  witness_cmd->add_option("--out", witness_out, "witness-states JSON output");

  for (CLI::App* sub : {smear_cmd, check_cmd, kernel_cmd, torus_cmd, tv, tt, tg, th, tc,
                        sg_cmd, witness_cmd})
    sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*smear_cmd) run_smear(smear_measure, smear_mult, smear_out, pretty);
    if (*check_cmd)
      run_check(check_observable, check_flags, tol_covariance, tol_norm1, tol_regular,
                tol_equiv, pretty);
    if (*kernel_cmd) {
      if (kernel_path.empty() && kernel_measure.empty())
        throw fuzzobs::SchemaError("kernel: pass --kernel or --from-measure");
      run_kernel(kernel_path, kernel_measure, kernel_mult, kernel_smear_out, pretty);
    }
    if (*tv) run_torus_validate(torus_cmatrix, pretty);
    if (*tt) run_torus_toeplitz(torus_cmatrix, tol_toeplitz, pretty);
    if (*tg) run_torus_toigo(torus_k, torus_out, pretty);
    if (*th) run_torus_herglotz(torus_cmatrix, torus_mode, torus_grid, torus_out, pretty);
    if (*tc) run_torus_commutator(torus_cmatrix, torus_arcs, pretty);
    if (*sg_cmd) run_sg(sg_a, sg_b, pretty);
    if (*witness_cmd)
      run_witness(witness_measure, witness_mult, witness_character, witness_out, witness_tol,
                  pretty);
  } catch (const fuzzobs::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
