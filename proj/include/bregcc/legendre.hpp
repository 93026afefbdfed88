// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "bregcc/types.hpp"

#include <functional>
#include <map>
#include <memory>
#include <random>

namespace bregcc {

/**
 * A Legendre function f on R^n together with everything the solvers need:
 * value, gradient, Hessian, the conjugate f* evaluated analytically, and
 * domain classification for both f and f*.
 *
 * Conventions: value() returns +infinity outside dom f and uses the limit
 * convention 0 ln 0 = 0 at closed boundary points. gradient() and
 * hessian() are defined on the interior only and throw DomainError
 * elsewhere. conjugate_gradient() is the inverse of gradient() and maps
 * int dom f* onto int dom f.
 */
class LegendreFunction {
 public:
  virtual ~LegendreFunction() = default;

  const std::string& name() const { return name_; }
  int dimension() const { return dim_; }

  // Capability flags. conjugate_domain_open: dom f* is open.
  // allows_forward_projections: D_f(x, .) is convex on int dom f, so
  // forward Bregman projections are well posed.
  bool conjugate_domain_open() const { return conjugate_domain_open_; }
  bool allows_forward_projections() const { return allows_forward_; }
  bool domain_is_full_space() const { return full_space_; }

  virtual double value(const Vector& x) const = 0;
  virtual Vector gradient(const Vector& x) const = 0;
  virtual Vector hessian_diagonal(const Vector& x) const = 0;
  virtual Matrix hessian(const Vector& x) const;

  // Derivative of the Hessian diagonal, used by the exact forward-projection
  // Jacobian. Meaningful for separable functions only.
  virtual Vector hessian_diagonal_slope(const Vector& x) const;
  virtual bool separable() const { return false; }

  virtual double conjugate_value(const Vector& y) const = 0;
  virtual Vector conjugate_gradient(const Vector& y) const = 0;

  virtual Region classify(const Vector& x) const = 0;
  virtual Region classify_dual(const Vector& y) const = 0;

  // f* as a first-class Legendre function (the duality layer computes with it).
  virtual std::shared_ptr<const LegendreFunction> conjugate() const = 0;

  // Deterministic interior sample, for property tests and registration checks.
  virtual Vector sample_interior(std::mt19937_64& rng) const = 0;

 protected:
  LegendreFunction(std::string name, int dim, bool conj_open, bool fwd, bool full)
      : name_(std::move(name)),
        dim_(dim),
        conjugate_domain_open_(conj_open),
        allows_forward_(fwd),
        full_space_(full) {
    if (dim_ < 1) throw InputError("LegendreFunction: dimension must be positive");
  }

  void check_dimension(const Vector& x) const {
    if (x.size() != dim_)
      throw InputError("LegendreFunction '" + name_ + "': expected dimension " +
                       std::to_string(dim_) + ", got " + std::to_string(x.size()));
  }

 private:
  std::string name_;
  int dim_;
  bool conjugate_domain_open_;
  bool allows_forward_;
  bool full_space_;
};

using FunctionPtr = std::shared_ptr<const LegendreFunction>;

// Scalar building block of a separable Legendre function: one coordinate's
// domain interval and derivatives. value must be finite on the whole domain,
// including closed endpoints (limit convention).
struct ScalarKernel {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool lo_closed = false;  // endpoint belongs to dom f
  bool hi_closed = false;
  std::function<double(double)> value;
  std::function<double(double)> d1;
  std::function<double(double)> d2;
  std::function<double(double)> d3;
};

struct SeparableSpec {
  std::string name;
  ScalarKernel kernel;
  bool allows_forward_projections = false;
};

// Separable f(x) = sum_i k(x_i) with an analytic conjugate kernel.
class SeparableLegendreFunction final
    : public LegendreFunction,
      public std::enable_shared_from_this<SeparableLegendreFunction> {
 public:
  SeparableLegendreFunction(SeparableSpec primal, SeparableSpec dual, int dim);

  double value(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  Vector hessian_diagonal(const Vector& x) const override;
  Vector hessian_diagonal_slope(const Vector& x) const override;
  bool separable() const override { return true; }
  double conjugate_value(const Vector& y) const override;
  Vector conjugate_gradient(const Vector& y) const override;
  Region classify(const Vector& x) const override;
  Region classify_dual(const Vector& y) const override;
  FunctionPtr conjugate() const override;
  Vector sample_interior(std::mt19937_64& rng) const override;

 private:
  SeparableSpec primal_;
  SeparableSpec dual_;
};

// Built-in catalog: energy, negative_entropy, fermi_dirac, burg_entropy,
// neg_sqrt, plus their conjugates under the names energy, exp_sum,
// softplus_sum, burg_entropy_conjugate, neg_sqrt_conjugate.
class FunctionCatalog {
 public:
  using Factory = std::function<FunctionPtr(int dim)>;

  FunctionCatalog();  // registers the built-ins

  // User extension point. With validate = true the new function is
  // property-tested on random interior points (gradient round-trip and the
  // Fenchel-Young identity) before being accepted.
  void add(const std::string& name, Factory factory, bool validate = true);

  FunctionPtr make(const std::string& name, int dim) const;
  bool contains(const std::string& name) const;
  std::vector<std::string> names() const;

 private:
  std::map<std::string, Factory> factories_;
};

// Catalog lookup against the immutable built-in set.
FunctionPtr make_function(const std::string& name, int dim);
std::vector<std::string> catalog_names();

}  // namespace bregcc
