#pragma once

#include <string>
#include <vector>

namespace sflat {

/// One verification row: a named measured quantity compared against a bound.
struct CheckRow {
  std::string name;
  std::string detail;
  double measured = 0.0;
  double bound = 0.0;
  bool upper_bound = true;  // pass iff measured <= bound (else >=)
  bool pass = false;

  static CheckRow upper(std::string name, std::string detail, double measured,
                        double bound) {
    CheckRow r{std::move(name), std::move(detail), measured, bound, true, false};
    r.pass = r.measured <= r.bound;
    return r;
  }
  static CheckRow lower(std::string name, std::string detail, double measured,
                        double bound) {
    CheckRow r{std::move(name), std::move(detail), measured, bound, false, false};
    r.pass = r.measured >= r.bound;
    return r;
  }
};

struct GoldenValues {
  int resolution = 0;
  double ym = 0, pym = 0, phi = 0;
};

GoldenValues load_golden(const std::string& path);
void write_golden(const std::string& path, const GoldenValues& v);
std::string default_golden_path();

/// Compute the functional values of the 4-torus example at a resolution;
/// the generator behind the golden file.
GoldenValues compute_t4_functionals(int resolution);

std::vector<CheckRow> verify_t4(int resolution);
std::vector<CheckRow> verify_bpst();
std::vector<CheckRow> verify_cone(int resolution);
std::vector<CheckRow> verify_classify();
std::vector<CheckRow> verify_cs(int resolution);
std::vector<CheckRow> verify_suite(const std::string& suite, int resolution);

std::string render_rows(const std::vector<CheckRow>& rows, bool json);
bool all_pass(const std::vector<CheckRow>& rows);

}  // namespace sflat
