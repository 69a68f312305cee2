#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "colorbal/errors.hpp"

namespace colorbal {

// Tolerance below which a coefficient counts as 0 and above 1-tau as 1.
inline constexpr double kFractionalTau = 1e-9;
// Additive slack allowed on unit-ball membership.
inline constexpr double kUnitBallSlack = 1e-9;
// Non-negativity slack for coefficient vectors.
inline constexpr double kCoeffNonnegSlack = 1e-12;
// Per-family sums must equal 1 within this.
inline constexpr double kFamilySumSlack = 1e-9;

enum class NormKind { Euclidean, Maximum };

std::string to_string(NormKind k);
NormKind norm_kind_from_string(const std::string& s);

double vector_norm(const Eigen::VectorXd& v, NormKind k);

// Partition of columns into families. Families are contiguous index ranges
// in the canonical column order.
class FamilyLayout {
 public:
  FamilyLayout() = default;
  explicit FamilyLayout(std::vector<int> sizes);

  int families() const { return static_cast<int>(sizes_.size()); }
  int total() const { return total_; }
  int size(int family) const { return sizes_[family]; }
  int offset(int family) const { return offsets_[family]; }
  int family_of(int column) const { return column_family_[column]; }

  bool operator==(const FamilyLayout& other) const {
    return sizes_ == other.sizes_;
  }

 private:
  std::vector<int> sizes_;
  std::vector<int> offsets_;
  std::vector<int> column_family_;
  int total_ = 0;
};

// Derive the layout of the columns listed in `columns` (ascending, unique).
// Families that lose all members are dropped; surviving families keep their
// relative order.
FamilyLayout restricted_layout(const FamilyLayout& full,
                               std::span<const int> columns);

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// A collection of vector families; columns of a dense d x m matrix plus the
// family partition. Immutable after construction.
class Instance {
 public:
  Instance(int dimension, NormKind norm,
           const std::vector<std::vector<Eigen::VectorXd>>& families);
  Instance(int dimension, NormKind norm, Eigen::MatrixXd columns,
           std::vector<int> family_sizes);

  int dimension() const { return d_; }
  NormKind norm_kind() const { return norm_; }
  int families() const { return layout_.families(); }
  int family_size(int family) const { return layout_.size(family); }
  int total_members() const { return layout_.total(); }
  const FamilyLayout& layout() const { return layout_; }

  const Eigen::MatrixXd& matrix() const { return columns_; }
  Eigen::MatrixXd::ConstColXpr column(int j) const { return columns_.col(j); }
  // Member w of family i as a column index.
  int column_index(int family, int member) const {
    return layout_.offset(family) + member;
  }

  double norm_of(const Eigen::VectorXd& v) const { return vector_norm(v, norm_); }

  // Columns listed in `columns` (ascending) as a new instance; empty families
  // are dropped.
  Instance restricted(std::span<const int> columns) const;

 private:
  int d_ = 0;
  NormKind norm_ = NormKind::Euclidean;
  Eigen::MatrixXd columns_;
  FamilyLayout layout_;
};

ValidationReport validate_instance(const Instance& inst);

// Validation of raw input before an Instance is constructed; lists every
// violation (empty families, wrong vector lengths, ball membership) instead
// of stopping at the first.
ValidationReport validate_families(
    int dimension, NormKind norm,
    const std::vector<std::vector<Eigen::VectorXd>>& families);

// One chosen member index per family.
struct Selection {
  std::vector<int> choices;
};

// The F / L split of column indices.
struct IndexPartition {
  std::vector<int> fractional;  // F, ascending
  std::vector<int> locked;      // L = complement, ascending
  int total = 0;
};

// A point of the coefficient polytope (product of per-family simplices),
// indexed per (family, member) in canonical column order.
class Coefficients {
 public:
  Coefficients(FamilyLayout layout, Eigen::VectorXd values);

  const FamilyLayout& layout() const { return layout_; }
  const Eigen::VectorXd& values() const { return values_; }
  double value(int column) const { return values_[column]; }
  int total() const { return layout_.total(); }

  double family_sum(int family) const;
  bool is_fractional(int column) const;
  bool family_locked(int family) const;
  bool is_selection_vector() const;
  std::vector<int> free_families() const;
  IndexPartition fractional_partition() const;

  // Violations of membership in the coefficient polytope (empty == member).
  std::vector<std::string> simplex_violations() const;

 private:
  FamilyLayout layout_;
  Eigen::VectorXd values_;
};

// Coefficients over the columns listed in `columns` (ascending). Per-family
// sums are preserved for families wholly inside the index set.
Coefficients restrict_to(const Coefficients& coeff,
                         std::span<const int> columns);

// Merge coefficients over two complementary column sets back into a vector
// over `full`. Throws PreconditionError on overlapping or incomplete sets.
Coefficients concatenate(const FamilyLayout& full, const Coefficients& a,
                         std::span<const int> columns_a, const Coefficients& b,
                         std::span<const int> columns_b);

// Selection <-> 0/1 selection vector conversions.
Coefficients selection_to_coefficients(const FamilyLayout& layout,
                                       const Selection& sel);
Selection coefficients_to_selection(const Coefficients& coeff);

// Norm of (sum of selected vectors) - shift in the instance's declared norm.
double selection_norm(const Instance& inst, const Selection& sel,
                      const Eigen::VectorXd& shift);
double selection_norm(const Instance& inst, const Selection& sel);

// Sum of the selected columns.
Eigen::VectorXd selection_sum(const Instance& inst, const Selection& sel);

}  // namespace colorbal
