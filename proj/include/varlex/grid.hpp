#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "varlex/error.hpp"

namespace varlex {

// Cell-center coordinates; component count is the owning domain's dimension.
using Point = std::array<double, 2>;

double radius(const Point& x, int dim);

// Axis-aligned box discretized into cells of uniform spacing h on every axis,
// with a boolean mask selecting the cells that approximate the open set from
// inside. No partial-cell volumes: a cell is in or out, and the measure of the
// active region is h^n times the active-cell count. Immutable once built.
class Domain {
 public:
  using MaskRule = std::function<bool(const Point&)>;

  static std::shared_ptr<const Domain> build(int dim,
                                             std::array<double, 2> lo,
                                             std::array<double, 2> hi,
                                             std::array<int, 2> res,
                                             const MaskRule& rule);

  // Pre-evaluated mask, lexicographic cell order (first axis major).
  static std::shared_ptr<const Domain> build_masked(int dim,
                                                    std::array<double, 2> lo,
                                                    std::array<double, 2> hi,
                                                    std::array<int, 2> res,
                                                    std::vector<std::uint8_t> mask);

  int dim() const { return dim_; }
  double lo(int axis) const { return lo_[axis]; }
  double hi(int axis) const { return hi_[axis]; }
  int res(int axis) const { return res_[axis]; }
  double spacing() const { return h_; }
  double cell_measure() const { return cell_measure_; }  // h^n
  double measure() const { return cell_measure_ * static_cast<double>(active_.size()); }

  std::int64_t cell_count() const { return cells_; }
  std::int64_t active_count() const { return static_cast<std::int64_t>(active_.size()); }
  bool active(std::int64_t cell) const { return mask_[static_cast<std::size_t>(cell)] != 0; }
  std::span<const std::int64_t> active_cells() const { return active_; }
  std::span<const std::uint8_t> mask() const { return mask_; }

  std::int64_t flat(int i0, int i1) const {
    return dim_ == 1 ? i0 : static_cast<std::int64_t>(i0) * res_[1] + i1;
  }
  std::array<int, 2> coords(std::int64_t cell) const {
    if (dim_ == 1) return {static_cast<int>(cell), 0};
    return {static_cast<int>(cell / res_[1]), static_cast<int>(cell % res_[1])};
  }
  Point center(std::int64_t cell) const {
    const auto ij = coords(cell);
    Point x{0.0, 0.0};
    for (int a = 0; a < dim_; ++a) x[a] = lo_[a] + (ij[a] + 0.5) * h_;
    return x;
  }

 private:
  Domain() = default;

  int dim_ = 0;
  std::array<double, 2> lo_{0.0, 0.0};
  std::array<double, 2> hi_{0.0, 0.0};
  std::array<int, 2> res_{1, 1};
  double h_ = 0.0;
  double cell_measure_ = 0.0;
  std::int64_t cells_ = 0;
  std::vector<std::uint8_t> mask_;
  std::vector<std::int64_t> active_;
};

// One real value per cell. Values on inactive cells are forced to exactly 0 at
// construction, so masked cells can never leak into any reduction. All active
// values must be finite.
class GridFunction {
 public:
  GridFunction(std::shared_ptr<const Domain> dom, std::vector<double> values);

  static GridFunction zeros(std::shared_ptr<const Domain> dom);
  static GridFunction from_fn(std::shared_ptr<const Domain> dom,
                              const std::function<double(const Point&)>& fn);

  const std::shared_ptr<const Domain>& domain() const { return dom_; }
  std::span<const double> values() const { return v_; }
  double operator[](std::int64_t cell) const { return v_[static_cast<std::size_t>(cell)]; }

  double max_abs() const;  // over active cells

  GridFunction map(const std::function<double(double)>& fn) const;
  GridFunction scaled(double c) const;

 private:
  std::shared_ptr<const Domain> dom_;
  std::vector<double> v_;
};

// Midpoint quadrature: sum of f over active cells times h^n, accumulated in
// lexicographic cell order with compensation.
double integrate(const GridFunction& f);

std::shared_ptr<const Domain> build_domain(int dim,
                                           std::array<double, 2> lo,
                                           std::array<double, 2> hi,
                                           std::array<int, 2> res,
                                           const Domain::MaskRule& rule);

void require_same_domain(const GridFunction& a, const GridFunction& b,
                         const char* what);

}  // namespace varlex
