// Command-line front end: verify the worked-example suites, run gradient
// flows, classify circle bundles over the 4-torus, and evaluate functionals
// on presets or scene files.
//
// Exit codes: 0 success, 1 check failure or aborted flow, 2 configuration
// or schema errors.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <json.hpp>

#include "sflat/classification.hpp"
#include "sflat/flows.hpp"
#include "sflat/functionals.hpp"
#include "sflat/scene.hpp"
#include "sflat/verify.hpp"

namespace {

using namespace sflat;

int cmd_verify(const std::string& suite, int resolution, bool json) {
  const auto rows = verify_suite(suite, resolution);
  std::cout << render_rows(rows, json);
  return all_pass(rows) ? 0 : 1;
}

int cmd_flow(const std::string& scene_path, const std::string& kind, int steps,
             double step, double tolerance, const std::string& out_path) {
  const Scene scene = load_scene_file(scene_path);
  const DomainPtr dom = scene.make_domain();
  const Metric g = scene.make_metric(dom);
  const Connection A = scene.make_connection(dom);

  FlowConfig cfg;
  if (kind == "ym")
    cfg.kind = FlowKind::Ym;
  else if (kind == "pym")
    cfg.kind = FlowKind::Pym;
  else if (kind == "cone")
    cfg.kind = FlowKind::Cone;
  else
    throw std::invalid_argument("flow kind must be ym, pym or cone");
  cfg.max_steps = steps;
  cfg.step = step;
  cfg.stop_tolerance = tolerance > 0 ? tolerance : scene.tolerance;

  std::optional<DifferentialForm> B;
  if (cfg.kind == FlowKind::Cone) {
    if (scene.b_constant) {
      DifferentialForm b(dom, A.algebra, 0);
      for (std::size_t p = 0; p < dom->npoints; ++p) b.at(0, p) = *scene.b_constant;
      B = std::move(b);
    } else {
      const SymplecticForm w = SymplecticForm::standard(dom);
      DifferentialForm b = lefschetz_decompose_2form(w, curvature(A)).phi;
      b *= -1.0;
      B = std::move(b);
    }
  }

  const FlowResult res = flow_run(A, B, cfg, g);

  std::ofstream out(out_path);
  if (!out) throw std::invalid_argument("cannot open output path " + out_path);
  out << res.trace.to_csv();

  std::cout << "steps: " << res.steps << "\n";
  std::cout << "converged: " << (res.converged ? "yes" : "no") << "\n";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12e", res.final_residual);
  std::cout << "final residual: " << buf << "\n";
  return 0;
}

int cmd_classify(const std::string& c1_text, const std::string& c2_text,
                 bool irrational_ratio, bool json) {
  const Rational c1 = Rational::parse(c1_text);
  if (c1.zero()) throw std::invalid_argument("c1 must be nonzero");
  PeriodGenerator g1 = PeriodGenerator::rational(c1);
  PeriodGenerator g2;
  if (irrational_ratio) {
    g2 = PeriodGenerator::irrational_marker("irrational-ratio");
  } else {
    if (c2_text.empty())
      throw std::invalid_argument("c2 required unless --irrational-ratio is set");
    const Rational c2 = Rational::parse(c2_text);
    if (c2.zero()) throw std::invalid_argument("c2 must be nonzero");
    g2 = PeriodGenerator::rational(c2);
  }
  const U1T4Report rep = classify_u1_t4(g1, g2);
  if (json) {
    nlohmann::json j;
    j["c1"] = rep.c1.str();
    j["c2"] = rep.c2.str();
    j["case"] = rep.verdict.kind == ExtensionCase::FlatOnly ? "flat-only"
                : rep.verdict.kind == ExtensionCase::S1Extension ? "s1-extension"
                                                                 : "r-extension";
    if (rep.verdict.c0) j["c0"] = rep.verdict.c0->str();
    j["morphism_family"] = rep.morphism_family;
    j["euler_class"] = rep.euler_class;
    j["wilson_parameters"] = rep.wilson_parameters;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << rep.render();
  }
  return 0;
}

int cmd_eval(const std::string& scene_path, const std::string& functional, bool json) {
  const Scene scene = load_scene_file(scene_path);
  const DomainPtr dom = scene.make_domain();
  const Metric g = scene.make_metric(dom);
  const Connection A = scene.make_connection(dom);

  std::vector<std::pair<std::string, FunctionalValue>> results;
  auto want = [&](const char* name) {
    return functional == name || functional == "all";
  };
  if (want("ym")) results.emplace_back("ym", eval_ym(A, g, scene.tolerance));
  if (want("pym")) results.emplace_back("pym", eval_pym(A, g, scene.tolerance));
  if (want("phi")) results.emplace_back("phi", eval_phi_omega(A, g, scene.tolerance));
  if (want("cone")) {
    DifferentialForm B(dom, A.algebra, 0);
    if (scene.b_constant) {
      for (std::size_t p = 0; p < dom->npoints; ++p) B.at(0, p) = *scene.b_constant;
    } else {
      const SymplecticForm w = SymplecticForm::standard(dom);
      B = lefschetz_decompose_2form(w, curvature(A)).phi;
      B *= -1.0;
    }
    results.emplace_back("cone", eval_cone_ym(A, B, g, scene.tolerance));
  }
  if (results.empty())
    throw std::invalid_argument("functional must be ym, pym, phi, cone or all");

  if (json) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [name, v] : results) {
      nlohmann::json rj = nlohmann::json::object();
      for (const auto& [rn, rv] : v.residual_norms) rj[rn] = rv;
      out.push_back({{"functional", name},
                     {"value", v.value},
                     {"residuals", rj},
                     {"critical", v.critical}});
    }
    std::cout << out.dump(2) << "\n";
  } else {
    char buf[256];
    for (const auto& [name, v] : results) {
      std::snprintf(buf, sizeof(buf), "%-5s value %.12e\n", name.c_str(), v.value);
      std::cout << buf;
      for (const auto& [rn, rv] : v.residual_norms) {
        std::snprintf(buf, sizeof(buf), "      residual |%s| = %.12e\n", rn.c_str(), rv);
        std::cout << buf;
      }
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical tools for symplectically flat connections"};
  app.require_subcommand(1);

  std::string suite = "all";
  int resolution = 32;
  bool json = false;

  auto* verify = app.add_subcommand("verify", "run a worked-example suite");
  verify->add_option("--suite", suite, "all|t4|bpst|cone|classify|cs");
  verify->add_option("--resolution", resolution, "torus resolution per axis");
  verify->add_flag("--json", json, "machine-readable output");

  std::string scene_path, kind = "pym", out_path, functional = "all";
  int steps = 100;
  double step = 0.0, tolerance = 0.0;

  auto* flow = app.add_subcommand("flow", "run a gradient flow and write its trace");
  flow->add_option("--scene", scene_path, "scene JSON path")->required();
  flow->add_option("--kind", kind, "ym|pym|cone");
  flow->add_option("--steps", steps, "maximum step count");
  flow->add_option("--step", step, "step size (default 0.1 h^2)");
  flow->add_option("--tolerance", tolerance, "stop tolerance on the residual");
  flow->add_option("--out", out_path, "trace CSV output path")->required();

  std::string c1_text, c2_text;
  bool irrational = false;
  auto* classify = app.add_subcommand("classify", "classify circle bundles over T^4");
  classify->add_option("c1", c1_text, "first period (rational, e.g. 1 or 1/2)")
      ->required();
  classify->add_option("c2", c2_text, "second period");
  classify->add_flag("--irrational-ratio", irrational,
                     "declare the ratio c1/c2 irrational");
  classify->add_flag("--json", json, "machine-readable output");

  auto* eval = app.add_subcommand("eval", "evaluate functionals on a scene");
  eval->add_option("--scene", scene_path, "scene JSON path")->required();
  eval->add_option("--functional", functional, "ym|pym|phi|cone|all");
  eval->add_flag("--json", json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) return cmd_verify(suite, resolution, json);
    if (flow->parsed())
      return cmd_flow(scene_path, kind, steps, step, tolerance, out_path);
    if (classify->parsed()) return cmd_classify(c1_text, c2_text, irrational, json);
    if (eval->parsed()) return cmd_eval(scene_path, functional, json);
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
