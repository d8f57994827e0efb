#pragma once

#include <memory>
#include <span>
#include <vector>

#include "extended_real.hpp"
#include "preorder.hpp"

namespace maxitive {

using FamilyPtr = std::shared_ptr<const UpSetFamily>;

FamilyPtr make_family(const FinitePreorder& space, std::size_t cap = UpSetFamily::kDefaultCap);

/// Increasing function on a finite preorder, values in [-inf, inf).
class IncreasingFn {
 public:
  IncreasingFn(const FinitePreorder& space, std::vector<double> values);
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t x) const { return values_[x]; }
  std::size_t size() const { return values_.size(); }

 private:
  std::vector<double> values_;
};

/// Pointwise rate, values in [0, inf].
class RateFunction {
 public:
  explicit RateFunction(std::vector<double> values);
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t x) const { return values_[x]; }
  std::size_t size() const { return values_.size(); }

 private:
  std::vector<double> values_;
};

/// Monotone J on the up-sets with J(empty) = -inf, J(E) = 0, values in [-inf, 0].
/// Values are indexed by the canonical position in the family.
class Concentration {
 public:
  Concentration(FamilyPtr family, std::vector<double> values);

  /// J_A = -min_{x in A} I(x). Requires min I = 0.
  static Concentration from_rate(FamilyPtr family, std::span<const double> rate);

  const UpSetFamily& family() const { return *family_; }
  const FamilyPtr& family_ptr() const { return family_; }
  const FinitePreorder& space() const { return family_->space(); }
  std::span<const double> values() const { return values_; }

  double at(std::size_t index) const { return values_[index]; }
  /// Throws not_upset for a subset outside the family.
  double at(const Subset& upset) const;
  std::size_t index_of(const Subset& upset) const;
  /// J of up(x).
  double principal(std::size_t x) const { return values_[principal_index_[x]]; }
  std::size_t principal_index(std::size_t x) const { return principal_index_[x]; }

 private:
  FamilyPtr family_;
  std::vector<double> values_;
  std::vector<std::size_t> principal_index_;
};

/// Pi = e^J; stored in the log domain.
class Capacity {
 public:
  explicit Capacity(Concentration log_values) : log_(std::move(log_values)) {}
  /// Validates Pi(empty) = 0, Pi(E) = 1, values in [0, 1], monotone.
  static Capacity from_values(FamilyPtr family, std::span<const double> pi);

  double at(std::size_t index) const;
  double at(const Subset& upset) const { return at(log_.index_of(upset)); }
  const Concentration& log_values() const { return log_; }
  const UpSetFamily& family() const { return log_.family(); }

 private:
  Concentration log_;
};

Capacity capacity_from_concentration(const Concentration& j);
Concentration concentration_from_capacity(const Capacity& pi);

/// {x : f(x) >= v}
Subset level_set_geq(std::span<const double> f, double v);
/// {x : f(x) > v}
Subset level_set_gt(std::span<const double> f, double v);

/// sup_{c>0} c * Pi{f > c} for increasing f >= 0.
double shilkret_integral(const Capacity& pi, std::span<const double> f);

/// sup_c {c + J{f > c}} = sup_c {c + J{f >= c}} for increasing f bounded above.
/// Both forms are evaluated over the distinct values of f and must agree.
double maxitive_integral(const Concentration& j, std::span<const double> f);

/// Integral against the extended concentration of level sets; f need not be
/// increasing.
double maxitive_integral_extended(const Concentration& j, std::span<const double> f);

struct IndicatorGauge {
  double via_indicator;  ///< phi(-inf * 1_{A^c})
  double via_limit;      ///< inf_{r<0} phi(r * 1_{A^c})
};

/// Both fields equal J_A.
IndicatorGauge indicator_gauge(const Concentration& j, const Subset& upset);

/// min{J_B : B up-set containing S}; cross-checked against J of up(S).
double extended_concentration(const Concentration& j, const Subset& s);

/// hull[A] = max of raw over up-sets B contained in A.
std::vector<double> monotone_hull(const UpSetFamily& family, std::span<const double> raw);

/// -inf * 1_{A^c}: 0 on A, -inf elsewhere.
std::vector<double> log_indicator(const Subset& a);

}  // namespace maxitive
