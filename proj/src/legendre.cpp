// SPDX-License-Identifier: Apache-2.0
#include "bregcc/legendre.hpp"

#include <cmath>

namespace bregcc {
namespace {

double xlogx(double t) {
  // limit convention: 0 ln 0 = 0
  return t > 0.0 ? t * std::log(t) : 0.0;
}

double softplus(double t) {
  // log(1 + e^t) without overflow for large |t|
  return std::log1p(std::exp(-std::abs(t))) + std::max(t, 0.0);
}

double sigmoid(double t) {
  if (t >= 0.0) {
    const double e = std::exp(-t);
    return 1.0 / (1.0 + e);
  }
  const double e = std::exp(t);
  return e / (1.0 + e);
}

Region classify_scalar(const ScalarKernel& k, double t) {
  if (t > k.lo && t < k.hi) return Region::Interior;
  if ((t == k.lo && k.lo_closed) || (t == k.hi && k.hi_closed)) return Region::Boundary;
  return Region::Outside;
}

Region combine(Region a, Region b) {
  if (a == Region::Outside || b == Region::Outside) return Region::Outside;
  if (a == Region::Boundary || b == Region::Boundary) return Region::Boundary;
  return Region::Interior;
}

bool kernel_full_line(const ScalarKernel& k) {
  return !std::isfinite(k.lo) && !std::isfinite(k.hi);
}

bool kernel_domain_open(const ScalarKernel& k) {
  const bool lo_open = !std::isfinite(k.lo) || !k.lo_closed;
  const bool hi_open = !std::isfinite(k.hi) || !k.hi_closed;
  return lo_open && hi_open;
}

}  // namespace

Matrix LegendreFunction::hessian(const Vector& x) const {
  return hessian_diagonal(x).asDiagonal();
}

Vector LegendreFunction::hessian_diagonal_slope(const Vector&) const {
  throw UnsupportedError("hessian_diagonal_slope: function '" + name() +
                         "' is not separable");
}

SeparableLegendreFunction::SeparableLegendreFunction(SeparableSpec primal,
                                                     SeparableSpec dual, int dim)
    : LegendreFunction(primal.name, dim, kernel_domain_open(dual.kernel),
                       primal.allows_forward_projections,
                       kernel_full_line(primal.kernel)),
      primal_(std::move(primal)),
      dual_(std::move(dual)) {}

double SeparableLegendreFunction::value(const Vector& x) const {
  check_dimension(x);
  double s = 0.0;
  for (int i = 0; i < x.size(); ++i) {
    if (classify_scalar(primal_.kernel, x[i]) == Region::Outside) return inf();
    s += primal_.kernel.value(x[i]);
  }
  return s;
}

Vector SeparableLegendreFunction::gradient(const Vector& x) const {
  check_dimension(x);
  Vector g(x.size());
  for (int i = 0; i < x.size(); ++i) {
    if (classify_scalar(primal_.kernel, x[i]) != Region::Interior)
      throw DomainError("gradient of '" + name() + "': coordinate " +
                        std::to_string(i) + " is not interior");
    g[i] = primal_.kernel.d1(x[i]);
  }
  return g;
}

Vector SeparableLegendreFunction::hessian_diagonal(const Vector& x) const {
  check_dimension(x);
  Vector h(x.size());
  for (int i = 0; i < x.size(); ++i) {
    if (classify_scalar(primal_.kernel, x[i]) != Region::Interior)
      throw DomainError("hessian of '" + name() + "': coordinate " +
                        std::to_string(i) + " is not interior");
    h[i] = primal_.kernel.d2(x[i]);
  }
  return h;
}

Vector SeparableLegendreFunction::hessian_diagonal_slope(const Vector& x) const {
  check_dimension(x);
  Vector h(x.size());
  for (int i = 0; i < x.size(); ++i) {
    if (classify_scalar(primal_.kernel, x[i]) != Region::Interior)
      throw DomainError("hessian slope of '" + name() + "': coordinate " +
                        std::to_string(i) + " is not interior");
    h[i] = primal_.kernel.d3(x[i]);
  }
  return h;
}

double SeparableLegendreFunction::conjugate_value(const Vector& y) const {
  check_dimension(y);
  double s = 0.0;
  for (int i = 0; i < y.size(); ++i) {
    if (classify_scalar(dual_.kernel, y[i]) == Region::Outside) return inf();
    s += dual_.kernel.value(y[i]);
  }
  return s;
}

Vector SeparableLegendreFunction::conjugate_gradient(const Vector& y) const {
  check_dimension(y);
  Vector g(y.size());
  for (int i = 0; i < y.size(); ++i) {
    if (classify_scalar(dual_.kernel, y[i]) != Region::Interior)
      throw DomainError("conjugate gradient of '" + name() + "': coordinate " +
                        std::to_string(i) + " is not interior");
    g[i] = dual_.kernel.d1(y[i]);
  }
  return g;
}

Region SeparableLegendreFunction::classify(const Vector& x) const {
  check_dimension(x);
  Region r = Region::Interior;
  for (int i = 0; i < x.size(); ++i)
    r = combine(r, classify_scalar(primal_.kernel, x[i]));
  return r;
}

Region SeparableLegendreFunction::classify_dual(const Vector& y) const {
  check_dimension(y);
  Region r = Region::Interior;
  for (int i = 0; i < y.size(); ++i)
    r = combine(r, classify_scalar(dual_.kernel, y[i]));
  return r;
}

FunctionPtr SeparableLegendreFunction::conjugate() const {
  return std::make_shared<SeparableLegendreFunction>(dual_, primal_, dimension());
}

Vector SeparableLegendreFunction::sample_interior(std::mt19937_64& rng) const {
  // Sample inside a window that stays well clear of both endpoints.
  const ScalarKernel& k = primal_.kernel;
  double lo = k.lo, hi = k.hi;
  if (!std::isfinite(lo) && !std::isfinite(hi)) {
    lo = -2.0;
    hi = 2.0;
  } else if (!std::isfinite(lo)) {
    lo = hi - 2.0;
  } else if (!std::isfinite(hi)) {
    hi = lo + 2.0;
  }
  const double width = hi - lo;
  std::uniform_real_distribution<double> u(lo + 0.1 * width, hi - 0.1 * width);
  Vector x(dimension());
  for (int i = 0; i < dimension(); ++i) x[i] = u(rng);
  return x;
}

namespace {

// ---- scalar kernel catalog -------------------------------------------------

ScalarKernel energy_kernel() {
  ScalarKernel k;
  k.value = [](double t) { return 0.5 * t * t; };
  k.d1 = [](double t) { return t; };
  k.d2 = [](double) { return 1.0; };
  k.d3 = [](double) { return 0.0; };
  return k;
}

// x ln x - x on [0, inf)
ScalarKernel neg_entropy_kernel() {
  ScalarKernel k;
  k.lo = 0.0;
  k.lo_closed = true;
  k.value = [](double t) { return xlogx(t) - t; };
  k.d1 = [](double t) { return std::log(t); };
  k.d2 = [](double t) { return 1.0 / t; };
  k.d3 = [](double t) { return -1.0 / (t * t); };
  return k;
}

// conjugate of x ln x - x: e^y on R
ScalarKernel exp_kernel() {
  ScalarKernel k;
  k.value = [](double t) { return std::exp(t); };
  k.d1 = [](double t) { return std::exp(t); };
  k.d2 = [](double t) { return std::exp(t); };
  k.d3 = [](double t) { return std::exp(t); };
  return k;
}

// x ln x + (1-x) ln(1-x) on [0, 1]
ScalarKernel fermi_dirac_kernel() {
  ScalarKernel k;
  k.lo = 0.0;
  k.hi = 1.0;
  k.lo_closed = true;
  k.hi_closed = true;
  k.value = [](double t) { return xlogx(t) + xlogx(1.0 - t); };
  k.d1 = [](double t) { return std::log(t / (1.0 - t)); };
  k.d2 = [](double t) { return 1.0 / (t * (1.0 - t)); };
  k.d3 = [](double t) {
    const double a = t * (1.0 - t);
    return (2.0 * t - 1.0) / (a * a);
  };
  return k;
}

// conjugate of the Fermi-Dirac kernel: log(1 + e^y) on R
ScalarKernel softplus_kernel() {
  ScalarKernel k;
  k.value = [](double t) { return softplus(t); };
  k.d1 = [](double t) { return sigmoid(t); };
  k.d2 = [](double t) {
    const double s = sigmoid(t);
    return s * (1.0 - s);
  };
  k.d3 = [](double t) {
    const double s = sigmoid(t);
    return s * (1.0 - s) * (1.0 - 2.0 * s);
  };
  return k;
}

// -ln x on (0, inf), open at 0
ScalarKernel burg_kernel() {
  ScalarKernel k;
  k.lo = 0.0;
  k.value = [](double t) { return -std::log(t); };
  k.d1 = [](double t) { return -1.0 / t; };
  k.d2 = [](double t) { return 1.0 / (t * t); };
  k.d3 = [](double t) { return -2.0 / (t * t * t); };
  return k;
}

// conjugate of -ln x: -1 - ln(-y) on (-inf, 0), open at 0
ScalarKernel burg_conjugate_kernel() {
  ScalarKernel k;
  k.hi = 0.0;
  k.value = [](double t) { return -1.0 - std::log(-t); };
  k.d1 = [](double t) { return -1.0 / t; };
  k.d2 = [](double t) { return 1.0 / (t * t); };
  k.d3 = [](double t) { return -2.0 / (t * t * t); };
  return k;
}

// -sqrt(x) on [0, inf)
ScalarKernel neg_sqrt_kernel() {
  ScalarKernel k;
  k.lo = 0.0;
  k.lo_closed = true;
  k.value = [](double t) { return -std::sqrt(t); };
  k.d1 = [](double t) { return -0.5 / std::sqrt(t); };
  k.d2 = [](double t) { return 0.25 * std::pow(t, -1.5); };
  k.d3 = [](double t) { return -0.375 * std::pow(t, -2.5); };
  return k;
}

// conjugate of -sqrt(x): -1/(4y) on (-inf, 0), open at 0
ScalarKernel neg_sqrt_conjugate_kernel() {
  ScalarKernel k;
  k.hi = 0.0;
  k.value = [](double t) { return -0.25 / t; };
  k.d1 = [](double t) { return 0.25 / (t * t); };
  k.d2 = [](double t) { return -0.5 / (t * t * t); };
  k.d3 = [](double t) { return 1.5 / (t * t * t * t); };
  return k;
}

SeparableSpec spec(std::string name, ScalarKernel k, bool fwd) {
  SeparableSpec s;
  s.name = std::move(name);
  s.kernel = std::move(k);
  s.allows_forward_projections = fwd;
  return s;
}

FunctionPtr make_pair(SeparableSpec primal, SeparableSpec dual, int dim) {
  return std::make_shared<SeparableLegendreFunction>(std::move(primal),
                                                     std::move(dual), dim);
}

// Forward projections need D_f(x, .) convex in the second slot, which the
// solver checks via its exact Jacobian. Of the built-ins this holds for
// energy, negative_entropy and fermi_dirac; the Burg and square-root
// kernels lose convexity away from the diagonal, as do the conjugate-side
// exp and softplus kernels.
void register_builtins(std::map<std::string, FunctionCatalog::Factory>& out) {
  out["energy"] = [](int dim) {
    return make_pair(spec("energy", energy_kernel(), true),
                     spec("energy", energy_kernel(), true), dim);
  };
  out["negative_entropy"] = [](int dim) {
    return make_pair(spec("negative_entropy", neg_entropy_kernel(), true),
                     spec("exp_sum", exp_kernel(), false), dim);
  };
  out["exp_sum"] = [](int dim) {
    return make_pair(spec("exp_sum", exp_kernel(), false),
                     spec("negative_entropy", neg_entropy_kernel(), true), dim);
  };
  out["fermi_dirac"] = [](int dim) {
    return make_pair(spec("fermi_dirac", fermi_dirac_kernel(), true),
                     spec("softplus_sum", softplus_kernel(), false), dim);
  };
  out["softplus_sum"] = [](int dim) {
    return make_pair(spec("softplus_sum", softplus_kernel(), false),
                     spec("fermi_dirac", fermi_dirac_kernel(), true), dim);
  };
  out["burg_entropy"] = [](int dim) {
    return make_pair(spec("burg_entropy", burg_kernel(), false),
                     spec("burg_entropy_conjugate", burg_conjugate_kernel(), false),
                     dim);
  };
  out["burg_entropy_conjugate"] = [](int dim) {
    return make_pair(spec("burg_entropy_conjugate", burg_conjugate_kernel(), false),
                     spec("burg_entropy", burg_kernel(), false), dim);
  };
  out["neg_sqrt"] = [](int dim) {
    return make_pair(spec("neg_sqrt", neg_sqrt_kernel(), false),
                     spec("neg_sqrt_conjugate", neg_sqrt_conjugate_kernel(), false),
                     dim);
  };
  out["neg_sqrt_conjugate"] = [](int dim) {
    return make_pair(spec("neg_sqrt_conjugate", neg_sqrt_conjugate_kernel(), false),
                     spec("neg_sqrt", neg_sqrt_kernel(), true), dim);
  };
}

}  // namespace

FunctionCatalog::FunctionCatalog() { register_builtins(factories_); }

void FunctionCatalog::add(const std::string& name, Factory factory, bool validate) {
  if (factories_.count(name))
    throw InputError("FunctionCatalog: '" + name + "' is already registered");
  if (validate) {
    // Probe a small instance: gradient round-trip through the conjugate and
    // the Fenchel-Young identity on random interior points.
    FunctionPtr f = factory(3);
    if (!f) throw InputError("FunctionCatalog: factory for '" + name + "' returned null");
    std::mt19937_64 rng(20210412);
    for (int trial = 0; trial < 16; ++trial) {
      const Vector x = f->sample_interior(rng);
      const Vector g = f->gradient(x);
      if (f->classify_dual(g) != Region::Interior)
        throw InputError("FunctionCatalog: '" + name +
                         "' gradient left the dual interior");
      const Vector back = f->conjugate_gradient(g);
      if ((back - x).lpNorm<Eigen::Infinity>() > 1e-8 * (1.0 + x.lpNorm<Eigen::Infinity>()))
        throw InputError("FunctionCatalog: '" + name +
                         "' conjugate_gradient does not invert gradient");
      const double fy = f->value(x) + f->conjugate_value(g) - g.dot(x);
      if (std::abs(fy) > 1e-8)
        throw InputError("FunctionCatalog: '" + name +
                         "' violates the Fenchel-Young identity");
    }
  }
  factories_[name] = std::move(factory);
}

FunctionPtr FunctionCatalog::make(const std::string& name, int dim) const {
  auto it = factories_.find(name);
  if (it == factories_.end())
    throw InputError("unknown function '" + name + "'");
  return it->second(dim);
}

bool FunctionCatalog::contains(const std::string& name) const {
  return factories_.count(name) > 0;
}

std::vector<std::string> FunctionCatalog::names() const {
  std::vector<std::string> out;
  out.reserve(factories_.size());
  for (const auto& [k, v] : factories_) out.push_back(k);
  return out;
}

namespace {
const FunctionCatalog& builtin_catalog() {
  static const FunctionCatalog catalog;
  return catalog;
}
}  // namespace

FunctionPtr make_function(const std::string& name, int dim) {
  return builtin_catalog().make(name, dim);
}

std::vector<std::string> catalog_names() { return builtin_catalog().names(); }

}  // namespace bregcc
