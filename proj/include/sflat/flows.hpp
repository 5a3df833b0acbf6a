#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sflat/functionals.hpp"
#include "sflat/gauge.hpp"

namespace sflat {

enum class FlowKind { Ym, Pym, Cone };

struct FlowConfig {
  FlowKind kind = FlowKind::Pym;
  double step = 0.0;           // <= 0: 0.1 * (grid spacing)^2
  int max_steps = 500;
  double stop_tolerance = 1e-8;
  int trace_stride = 1;
};

struct FlowTraceRow {
  double time = 0.0;
  double value_ym = 0.0, value_pym = 0.0, value_phi = 0.0;
  double residual = 0.0;
};

struct FlowTrace {
  std::vector<FlowTraceRow> rows;
  /// CSV with the fixed header time,value_ym,value_pym,value_phi,residual.
  std::string to_csv() const;
};

struct FlowResult {
  Connection A;
  std::optional<DifferentialForm> B;
  FlowTrace trace;
  int steps = 0;
  bool converged = false;
  double final_residual = 0.0;
};

/// Classical RK4 descent along minus the EL residual of the chosen
/// functional, fixed step with automatic halving when the functional value
/// fails to decrease. Terminates at the stop tolerance or max steps; NaN or
/// exhausted halving raise.
FlowResult flow_run(const Connection& A0, const std::optional<DifferentialForm>& B0,
                    const FlowConfig& cfg, const Metric& g);

struct PymConstruction {
  Connection a_prime;
  DifferentialForm xi;       // primitive 1-form shift
  int iterations = 0;
  double residual_pym = 0.0; // |d* F'_p| after the solve
  double residual_ym = 0.0;  // |d* F'| of the shifted connection
};

/// Solve (d_plus)^*(F_p + d_plus xi) = 0 by preconditioned conjugate
/// gradients and return A' = A + xi. Abelian connections on a 4-torus.
PymConstruction make_pym_from_ym(const Connection& A, const Metric& g,
                                 double tol = 1e-7, int max_iter = 600);

}  // namespace sflat
