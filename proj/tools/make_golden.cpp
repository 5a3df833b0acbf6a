// Regenerates the recorded functional values of the 4-torus example from a
// high-resolution run. The committed file is produced at resolution 64.

#include <CLI11.hpp>

#include <iostream>

#include "sflat/verify.hpp"

int main(int argc, char** argv) {
  CLI::App app{"golden-value generator"};
  int resolution = 64;
  std::string out = sflat::default_golden_path();
  app.add_option("--resolution", resolution, "torus resolution per axis");
  app.add_option("--out", out, "output path");
  CLI11_PARSE(app, argc, argv);

  const auto v = sflat::compute_t4_functionals(resolution);
  sflat::write_golden(out, v);
  std::cout << "resolution " << v.resolution << ": ym " << v.ym << ", pym " << v.pym
            << ", phi_omega " << v.phi << "\n";
  return 0;
}
