#include "probball/kernels.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "probball/detail/pipeline.hpp"
#include "probball/errors.hpp"

namespace probball {

Kernel Kernel::polynomial(int degree, double offset) {
  Kernel k;
  k.kind = Kind::kPolynomial;
  k.degree = degree;
  k.offset = offset;
  k.validate();
  return k;
}

Kernel Kernel::rbf(double sigma) {
  Kernel k;
  k.kind = Kind::kRbf;
  k.sigma = sigma;
  k.validate();
  return k;
}

void Kernel::validate() const {
  if (kind == Kind::kPolynomial && degree < 1) {
    throw ConfigError("polynomial degree must be >= 1, got " + std::to_string(degree));
  }
  if (kind == Kind::kPolynomial && !std::isfinite(offset)) {
    throw ConfigError("polynomial offset must be finite");
  }
  if (kind == Kind::kRbf && !(sigma > 0.0 && std::isfinite(sigma))) {
    throw ConfigError("rbf sigma must be positive, got " + std::to_string(sigma));
  }
}

double Kernel::operator()(PointRef x, PointRef y) const {
  require_same_dim(x.size(), y.size());
  switch (kind) {
    case Kind::kLinear:
      return x.dot(y);
    case Kind::kPolynomial: {
      const double base = x.dot(y) + offset;
      double out = 1.0;
      for (int i = 0; i < degree; ++i) out *= base;
      return out;
    }
    case Kind::kRbf:
      return std::exp(-(x - y).squaredNorm() / (2.0 * sigma * sigma));
  }
  return 0.0;
}

std::string_view to_string(Kernel::Kind kind) {
  switch (kind) {
    case Kernel::Kind::kLinear:
      return "linear";
    case Kernel::Kind::kPolynomial:
      return "poly";
    case Kernel::Kind::kRbf:
      return "rbf";
  }
  return "linear";
}

double kernel_eval(const Kernel& kernel, PointRef x, PointRef y) { return kernel(x, y); }

ImplicitCenter ImplicitCenter::at(PointRef q, const Kernel& kernel) {
  ImplicitCenter c;
  c.terms_.push_back({1.0, Point(q)});
  c.sq_norm_ = kernel(q, q);
  return c;
}

double ImplicitCenter::coefficient_sum() const {
  double sum = 0.0;
  for (const auto& t : terms_) sum += t.gamma;
  return sum;
}

ImplicitDistance implicit_distance(const ImplicitCenter& center, PointRef q, const Kernel& kernel) {
  double cross = 0.0;
  for (const auto& t : center.terms()) cross += t.gamma * kernel(t.location, q);
  const double self = kernel(q, q);
  const double sq = center.sq_norm() + self - 2.0 * cross;
  const double magnitude = std::abs(center.sq_norm()) + std::abs(self) + 2.0 * std::abs(cross);
  constexpr double kRoundoff = 64.0 * std::numeric_limits<double>::epsilon();
  if (sq <= kRoundoff * magnitude) return {0.0, cross};
  return {std::sqrt(sq), cross};
}

void implicit_update_in_place(ImplicitCenter& center, PointRef q, double beta, const Kernel& kernel,
                              double cross) {
  const double keep = 1.0 - beta;
  center.sq_norm_ = keep * keep * center.sq_norm_ + beta * beta * kernel(q, q) +
                    2.0 * beta * keep * cross;
  bool merged = false;
  for (auto& t : center.terms_) {
    t.gamma *= keep;
    if (!merged && t.location == q) {
      t.gamma += beta;
      merged = true;
    }
  }
  if (!merged) center.terms_.push_back({beta, Point(q)});
  std::erase_if(center.terms_, [](const ImplicitCenter::Term& t) { return t.gamma == 0.0; });
}

ImplicitCenter implicit_update(const ImplicitCenter& center, PointRef q, double step,
                               const Kernel& kernel) {
  if (!(step > 0.0)) throw ConfigError("step size must be positive");
  const ImplicitDistance d = implicit_distance(center, q, kernel);
  if (d.distance == 0.0) {
    throw SolverError("implicit update toward a point at distance zero; skip the step instead");
  }
  ImplicitCenter next = center;
  implicit_update_in_place(next, q, step / d.distance, kernel, d.cross);
  return next;
}

double recompute_sq_norm(const ImplicitCenter& center, const Kernel& kernel) {
  double total = 0.0;
  for (const auto& a : center.terms()) {
    for (const auto& b : center.terms()) total += a.gamma * b.gamma * kernel(a.location, b.location);
  }
  return total;
}

namespace {

class KernelSpace {
 public:
  using Center = ImplicitCenter;

  KernelSpace(const SetFamily& family, const Kernel& kernel) : family_(family), kernel_(kernel) {}

  std::size_t set_count() const { return family_.size(); }
  const SetFamily& family() const { return family_; }
  Center seed_center(std::size_t set) const {
    return ImplicitCenter::at(family_[set].point(0), kernel_);
  }
  Furthest furthest(const Center& c, std::size_t set) const {
    const PointSet& pts = family_[set];
    Furthest best{-1.0, 0};
    for (std::size_t j = 0; j < pts.size(); ++j) {
      const double d = implicit_distance(c, pts.point(j), kernel_).distance;
      if (d > best.value) best = {d, j};
    }
    return best;
  }
  void advance(Center& c, std::size_t set, const Furthest& far, double step) const {
    if (far.value == 0.0) return;
    const auto q = family_[set].point(far.witness);
    const ImplicitDistance d = implicit_distance(c, q, kernel_);
    implicit_update_in_place(c, q, step / far.value, kernel_, d.cross);
  }
  double evaluate(const Center& c) const {
    double total = 0.0;
    for (std::size_t i = 0; i < family_.size(); ++i) total += furthest(c, i).value;
    return total;
  }

 private:
  const SetFamily& family_;
  const Kernel& kernel_;
};

}  // namespace

KernelSolveResult solve_kernel_set_median(const SetFamily& family, const Kernel& kernel,
                                          const SolverConfig& config) {
  kernel.validate();
  config.validate();
  if (config.reduce_sets) {
    throw ConfigError("set reduction is not available in kernel feature spaces");
  }
  auto solved = detail::solve_in(KernelSpace(family, kernel), config);
  return {std::move(solved.center), solved.cost, std::move(solved.diagnostics)};
}

KernelSolveResult solve_psvdd(const ProbInstance& instance, const Kernel& kernel,
                              const SolverConfig& config) {
  kernel.validate();
  SampledFamily sampled = sample_reduction(instance, config);
  KernelSolveResult result = solve_kernel_set_median(sampled.family, kernel, config);
  const double k = static_cast<double>(sampled.family.size());
  result.diagnostics.family_cost = result.cost_estimate;
  result.diagnostics.sampling_case = sampled.sampling_case;
  result.diagnostics.samples = sampled.family.size();
  result.diagnostics.trials = sampled.trials;
  result.cost_estimate = sampled.cost_scale * result.cost_estimate / k;
  return result;
}

}  // namespace probball
