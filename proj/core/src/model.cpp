#include "colorbal/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace colorbal {

std::string to_string(NormKind k) {
  return k == NormKind::Euclidean ? "l2" : "linf";
}

NormKind norm_kind_from_string(const std::string& s) {
  if (s == "l2") return NormKind::Euclidean;
  if (s == "linf") return NormKind::Maximum;
  throw PreconditionError("unknown norm kind: " + s);
}

double vector_norm(const Eigen::VectorXd& v, NormKind k) {
  return k == NormKind::Euclidean ? v.norm() : v.lpNorm<Eigen::Infinity>();
}

FamilyLayout::FamilyLayout(std::vector<int> sizes) : sizes_(std::move(sizes)) {
  offsets_.reserve(sizes_.size() + 1);
  int off = 0;
  for (int s : sizes_) {
    if (s <= 0) throw PreconditionError("family sizes must be positive");
    offsets_.push_back(off);
    off += s;
  }
  offsets_.push_back(off);
  total_ = off;
  column_family_.resize(total_);
  for (int f = 0; f < families(); ++f)
    for (int j = offsets_[f]; j < offsets_[f] + sizes_[f]; ++j)
      column_family_[j] = f;
}

FamilyLayout restricted_layout(const FamilyLayout& full,
                               std::span<const int> columns) {
  std::vector<int> sizes;
  int prev_family = -1;
  int prev_col = -1;
  for (int c : columns) {
    if (c < 0 || c >= full.total())
      throw PreconditionError("restriction index out of range");
    if (c <= prev_col)
      throw PreconditionError("restriction indices must be ascending");
    prev_col = c;
    int f = full.family_of(c);
    if (f != prev_family) {
      sizes.push_back(0);
      prev_family = f;
    }
    ++sizes.back();
  }
  return FamilyLayout(std::move(sizes));
}

Instance::Instance(int dimension, NormKind norm,
                   const std::vector<std::vector<Eigen::VectorXd>>& families)
    : d_(dimension), norm_(norm) {
  if (dimension < 1) throw PreconditionError("dimension must be >= 1");
  std::vector<int> sizes;
  sizes.reserve(families.size());
  int m = 0;
  for (const auto& fam : families) {
    if (fam.empty()) throw PreconditionError("empty family");
    sizes.push_back(static_cast<int>(fam.size()));
    m += static_cast<int>(fam.size());
  }
  layout_ = FamilyLayout(std::move(sizes));
  columns_.resize(d_, m);
  int j = 0;
  for (const auto& fam : families) {
    for (const auto& v : fam) {
      if (v.size() != d_)
        throw PreconditionError("vector length does not match dimension");
      columns_.col(j++) = v;
    }
  }
}

Instance::Instance(int dimension, NormKind norm, Eigen::MatrixXd columns,
                   std::vector<int> family_sizes)
    : d_(dimension), norm_(norm), columns_(std::move(columns)),
      layout_(std::move(family_sizes)) {
  if (dimension < 1) throw PreconditionError("dimension must be >= 1");
  if (columns_.rows() != d_ || columns_.cols() != layout_.total())
    throw PreconditionError("matrix shape does not match layout");
}

Instance Instance::restricted(std::span<const int> columns) const {
  FamilyLayout sub = restricted_layout(layout_, columns);
  Eigen::MatrixXd cols(d_, static_cast<int>(columns.size()));
  for (int j = 0; j < static_cast<int>(columns.size()); ++j)
    cols.col(j) = columns_.col(columns[j]);
  std::vector<int> sizes;
  sizes.reserve(sub.families());
  for (int f = 0; f < sub.families(); ++f) sizes.push_back(sub.size(f));
  return Instance(d_, norm_, std::move(cols), std::move(sizes));
}

ValidationReport validate_instance(const Instance& inst) {
  ValidationReport rep;
  if (inst.dimension() < 1) rep.violations.push_back("dimension < 1");
  if (inst.families() < 1) rep.violations.push_back("no families");
  for (int j = 0; j < inst.total_members(); ++j) {
    double n = inst.norm_of(inst.column(j));
    if (n > 1.0 + kUnitBallSlack) {
      std::ostringstream os;
      os << "norm exceeds 1: family " << inst.layout().family_of(j)
         << ", member " << j - inst.layout().offset(inst.layout().family_of(j))
         << " has " << to_string(inst.norm_kind()) << " norm " << n;
      rep.violations.push_back(os.str());
    }
  }
  return rep;
}

ValidationReport validate_families(
    int dimension, NormKind norm,
    const std::vector<std::vector<Eigen::VectorXd>>& families) {
  ValidationReport rep;
  if (dimension < 1) rep.violations.push_back("dimension < 1");
  if (families.empty()) rep.violations.push_back("no families");
  for (size_t f = 0; f < families.size(); ++f) {
    if (families[f].empty()) {
      std::ostringstream os;
      os << "empty family at index " << f;
      rep.violations.push_back(os.str());
      continue;
    }
    for (size_t m = 0; m < families[f].size(); ++m) {
      const Eigen::VectorXd& v = families[f][m];
      if (v.size() != dimension) {
        std::ostringstream os;
        os << "family " << f << ", member " << m
           << " has length " << v.size() << ", expected " << dimension;
        rep.violations.push_back(os.str());
        continue;
      }
      double n = vector_norm(v, norm);
      if (n > 1.0 + kUnitBallSlack) {
        std::ostringstream os;
        os << "norm exceeds 1: family " << f << ", member " << m << " has "
           << to_string(norm) << " norm " << n;
        rep.violations.push_back(os.str());
      }
    }
  }
  return rep;
}

Coefficients::Coefficients(FamilyLayout layout, Eigen::VectorXd values)
    : layout_(std::move(layout)), values_(std::move(values)) {
  if (values_.size() != layout_.total())
    throw PreconditionError("coefficient length does not match layout");
}

double Coefficients::family_sum(int family) const {
  return values_.segment(layout_.offset(family), layout_.size(family)).sum();
}

bool Coefficients::is_fractional(int column) const {
  double v = values_[column];
  return v > kFractionalTau && v < 1.0 - kFractionalTau;
}

bool Coefficients::family_locked(int family) const {
  int off = layout_.offset(family);
  for (int j = off; j < off + layout_.size(family); ++j)
    if (is_fractional(j)) return false;
  return true;
}

bool Coefficients::is_selection_vector() const {
  for (int f = 0; f < layout_.families(); ++f)
    if (!family_locked(f)) return false;
  return true;
}

std::vector<int> Coefficients::free_families() const {
  std::vector<int> out;
  for (int f = 0; f < layout_.families(); ++f)
    if (!family_locked(f)) out.push_back(f);
  return out;
}

IndexPartition Coefficients::fractional_partition() const {
  IndexPartition part;
  part.total = layout_.total();
  for (int j = 0; j < layout_.total(); ++j) {
    if (is_fractional(j))
      part.fractional.push_back(j);
    else
      part.locked.push_back(j);
  }
  return part;
}

std::vector<std::string> Coefficients::simplex_violations() const {
  std::vector<std::string> out;
  for (int j = 0; j < layout_.total(); ++j) {
    if (values_[j] < -kCoeffNonnegSlack) {
      std::ostringstream os;
      os << "negative coefficient at column " << j << ": " << values_[j];
      out.push_back(os.str());
    }
  }
  for (int f = 0; f < layout_.families(); ++f) {
    double s = family_sum(f);
    if (std::abs(s - 1.0) > kFamilySumSlack) {
      std::ostringstream os;
      os << "family " << f << " sums to " << s;
      out.push_back(os.str());
    }
  }
  return out;
}

Coefficients restrict_to(const Coefficients& coeff,
                         std::span<const int> columns) {
  FamilyLayout sub = restricted_layout(coeff.layout(), columns);
  Eigen::VectorXd vals(static_cast<int>(columns.size()));
  for (int j = 0; j < static_cast<int>(columns.size()); ++j)
    vals[j] = coeff.value(columns[j]);
  return Coefficients(std::move(sub), std::move(vals));
}

Coefficients concatenate(const FamilyLayout& full, const Coefficients& a,
                         std::span<const int> columns_a, const Coefficients& b,
                         std::span<const int> columns_b) {
  if (static_cast<int>(columns_a.size()) != a.total() ||
      static_cast<int>(columns_b.size()) != b.total())
    throw PreconditionError("index set size does not match coefficients");
  std::vector<char> seen(full.total(), 0);
  Eigen::VectorXd vals(full.total());
  auto scatter = [&](const Coefficients& c, std::span<const int> cols) {
    for (int j = 0; j < static_cast<int>(cols.size()); ++j) {
      int target = cols[j];
      if (target < 0 || target >= full.total())
        throw PreconditionError("concatenate index out of range");
      if (seen[target]) throw PreconditionError("overlapping index sets");
      seen[target] = 1;
      vals[target] = c.value(j);
    }
  };
  scatter(a, columns_a);
  scatter(b, columns_b);
  for (char s : seen)
    if (!s) throw PreconditionError("incomplete index sets");
  return Coefficients(full, std::move(vals));
}

Coefficients selection_to_coefficients(const FamilyLayout& layout,
                                       const Selection& sel) {
  if (static_cast<int>(sel.choices.size()) != layout.families())
    throw PreconditionError("selection length does not match family count");
  Eigen::VectorXd vals = Eigen::VectorXd::Zero(layout.total());
  for (int f = 0; f < layout.families(); ++f) {
    int c = sel.choices[f];
    if (c < 0 || c >= layout.size(f))
      throw PreconditionError("selection index out of range");
    vals[layout.offset(f) + c] = 1.0;
  }
  return Coefficients(layout, std::move(vals));
}

Selection coefficients_to_selection(const Coefficients& coeff) {
  if (!coeff.is_selection_vector())
    throw PreconditionError("coefficients are not a selection vector");
  const FamilyLayout& layout = coeff.layout();
  Selection sel;
  sel.choices.reserve(layout.families());
  for (int f = 0; f < layout.families(); ++f) {
    int off = layout.offset(f);
    int chosen = -1;
    for (int j = 0; j < layout.size(f); ++j) {
      if (coeff.value(off + j) >= 1.0 - kFractionalTau) {
        chosen = j;
        break;
      }
    }
    if (chosen < 0)
      throw PreconditionError("family without a unit coefficient");
    sel.choices.push_back(chosen);
  }
  return sel;
}

Eigen::VectorXd selection_sum(const Instance& inst, const Selection& sel) {
  if (static_cast<int>(sel.choices.size()) != inst.families())
    throw PreconditionError("selection length does not match family count");
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(inst.dimension());
  for (int f = 0; f < inst.families(); ++f) {
    int c = sel.choices[f];
    if (c < 0 || c >= inst.family_size(f))
      throw PreconditionError("selection index out of range");
    sum += inst.column(inst.column_index(f, c));
  }
  return sum;
}

double selection_norm(const Instance& inst, const Selection& sel,
                      const Eigen::VectorXd& shift) {
  return inst.norm_of(selection_sum(inst, sel) - shift);
}

double selection_norm(const Instance& inst, const Selection& sel) {
  return selection_norm(inst, sel,
                        Eigen::VectorXd::Zero(inst.dimension()));
}

}  // namespace colorbal
