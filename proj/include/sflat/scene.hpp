#pragma once

#include <optional>
#include <string>

#include "sflat/gauge.hpp"
#include "sflat/metric.hpp"

namespace sflat {

/// Scene description parsed from a JSON document. Unknown keys are rejected;
/// presets imply their algebra and domain kind.
struct Scene {
  std::string preset;               // t4 | bpst | flat_wilson | constant_flux |
                                    // random_su2 | random_abelian
  int dim = 4;
  int resolution = 16;
  double period = 2.0 * M_PI;
  std::string metric = "flat";      // flat | t4_example
  unsigned seed = 1;
  double amplitude = 0.1;
  double c = 1.0;                   // constant_flux coefficient
  std::array<double, 4> wilson = {0, 0, 0, 0};
  int points = 1000;                // bpst cloud size
  double box = 2.0;                 // bpst sampling half-width
  double tolerance = 1e-6;
  std::optional<double> b_constant; // cone flows/eval: constant B override

  DomainPtr make_domain() const;
  Metric make_metric(const DomainPtr& dom) const;
  Connection make_connection(const DomainPtr& dom) const;
};

Scene parse_scene_json(const std::string& json_text);
Scene load_scene_file(const std::string& path);

}  // namespace sflat
