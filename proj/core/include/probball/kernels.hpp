#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "probball/config.hpp"
#include "probball/geometry.hpp"
#include "probball/probseb.hpp"
#include "probball/setmedian.hpp"

namespace probball {

struct Kernel {
  enum class Kind { kLinear, kPolynomial, kRbf };

  Kind kind = Kind::kLinear;
  int degree = 2;       // polynomial
  double offset = 0.0;  // polynomial
  double sigma = 1.0;   // rbf

  static Kernel linear() { return {}; }
  static Kernel polynomial(int degree, double offset);
  static Kernel rbf(double sigma);

  /// Throws ConfigError for a non-positive degree or sigma.
  void validate() const;

  double operator()(PointRef x, PointRef y) const;
};

std::string_view to_string(Kernel::Kind kind);

/// Linear: <x,y>. Polynomial: (<x,y> + offset)^degree. RBF: exp(-|x-y|^2 / (2 sigma^2)).
double kernel_eval(const Kernel& kernel, PointRef x, PointRef y);

/// A feature-space point sum_w gamma_w phi(q_w), kept with its squared norm.
class ImplicitCenter {
 public:
  struct Term {
    double gamma;
    Point location;
  };

  /// phi(q) as a single term with coefficient 1.
  static ImplicitCenter at(PointRef q, const Kernel& kernel);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  double sq_norm() const { return sq_norm_; }
  double coefficient_sum() const;

 private:
  friend void implicit_update_in_place(ImplicitCenter&, PointRef, double, const Kernel&, double);

  std::vector<Term> terms_;
  double sq_norm_ = 0.0;
};

struct ImplicitDistance {
  double distance = 0.0;
  /// sum_w gamma_w K(q_w, q), reused by the update.
  double cross = 0.0;
};

/// ||c - phi(q)|| through kernel evaluations only. The squared distance is
/// clamped at zero, and treated as zero when it falls within rounding of the
/// magnitudes it was computed from.
ImplicitDistance implicit_distance(const ImplicitCenter& center, PointRef q, const Kernel& kernel);

/// c <- (1 - beta) c + beta phi(q) with beta = step / ||c - phi(q)||.
/// Throws SolverError when the distance is zero.
ImplicitCenter implicit_update(const ImplicitCenter& center, PointRef q, double step,
                               const Kernel& kernel);

/// In-place variant taking the cross term from a previous implicit_distance.
/// `beta` is step / distance. Locations equal to an existing term are merged.
void implicit_update_in_place(ImplicitCenter& center, PointRef q, double beta, const Kernel& kernel,
                              double cross);

/// sum_w sum_w' gamma_w gamma_w' K(q_w, q_w') from scratch.
double recompute_sq_norm(const ImplicitCenter& center, const Kernel& kernel);

struct KernelSolveResult {
  ImplicitCenter center;
  double cost_estimate = 0.0;
  Diagnostics diagnostics;
};

/// Set-median pipeline in the kernel feature space over an explicit family.
KernelSolveResult solve_kernel_set_median(const SetFamily& family, const Kernel& kernel,
                                          const SolverConfig& config);

/// Probabilistic SVDD: the pSEB sampling reduction followed by the kernel
/// set-median pipeline.
KernelSolveResult solve_psvdd(const ProbInstance& instance, const Kernel& kernel,
                              const SolverConfig& config);

}  // namespace probball
