#include "sflat/scene.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace sflat {

namespace {

const std::set<std::string> kKnownKeys = {
    "preset", "dim",    "resolution", "period", "metric",     "seed",
    "amplitude", "c",   "wilson",     "points", "box",        "tolerance",
    "b_constant"};

const std::set<std::string> kPresets = {"t4",           "bpst",
                                        "flat_wilson",  "constant_flux",
                                        "random_su2",   "random_abelian"};

}  // namespace

Scene parse_scene_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("scene: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("scene: expected a JSON object");
  for (const auto& [key, ignored] : j.items())
    if (!kKnownKeys.count(key))
      throw std::invalid_argument("scene: unknown key '" + key + "'");

  Scene s;
  if (!j.contains("preset") || !j["preset"].is_string())
    throw std::invalid_argument("scene: 'preset' string is required");
  s.preset = j["preset"].get<std::string>();
  if (!kPresets.count(s.preset))
    throw std::invalid_argument("scene: unknown preset '" + s.preset + "'");

  auto get_num = [&](const char* key, double& dst) {
    if (j.contains(key)) {
      if (!j[key].is_number()) throw std::invalid_argument(std::string("scene: '") + key + "' must be a number");
      dst = j[key].get<double>();
    }
  };
  auto get_int = [&](const char* key, int& dst) {
    if (j.contains(key)) {
      if (!j[key].is_number_integer())
        throw std::invalid_argument(std::string("scene: '") + key + "' must be an integer");
      dst = j[key].get<int>();
    }
  };

  get_int("dim", s.dim);
  get_int("resolution", s.resolution);
  get_num("period", s.period);
  get_num("amplitude", s.amplitude);
  get_num("c", s.c);
  get_int("points", s.points);
  get_num("box", s.box);
  get_num("tolerance", s.tolerance);
  if (j.contains("seed")) s.seed = j["seed"].get<unsigned>();
  if (j.contains("metric")) s.metric = j["metric"].get<std::string>();
  if (s.metric != "flat" && s.metric != "t4_example")
    throw std::invalid_argument("scene: metric must be 'flat' or 't4_example'");
  if (j.contains("wilson")) {
    const auto& w = j["wilson"];
    if (!w.is_array() || w.size() > 4)
      throw std::invalid_argument("scene: 'wilson' must be an array of at most 4 numbers");
    for (std::size_t i = 0; i < w.size(); ++i) s.wilson[i] = w[i].get<double>();
  }
  if (j.contains("b_constant")) s.b_constant = j["b_constant"].get<double>();
  return s;
}

Scene load_scene_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("scene: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scene_json(ss.str());
}

DomainPtr Scene::make_domain() const {
  if (preset == "bpst")
    return bpst_sample_cloud(static_cast<std::size_t>(points), seed, box);
  return Domain::torus(dim, resolution, period);
}

Metric Scene::make_metric(const DomainPtr& dom) const {
  if (metric == "t4_example") {
    if (dom->dim != 4 || !dom->is_torus())
      throw std::invalid_argument("scene: t4_example metric needs a 4-torus");
    return Metric::t4_example(dom);
  }
  return Metric::flat(dom);
}

Connection Scene::make_connection(const DomainPtr& dom) const {
  if (preset == "t4") return t4_yang_mills_example(dom);
  if (preset == "bpst") return bpst(dom);
  if (preset == "flat_wilson") return flat_wilson(dom, wilson);
  if (preset == "constant_flux") return constant_flux(dom, c);
  if (preset == "random_su2") return random_su2_connection(dom, seed, amplitude);
  if (preset == "random_abelian") return random_abelian_connection(dom, seed, amplitude);
  throw std::invalid_argument("scene: unknown preset");
}

}  // namespace sflat
