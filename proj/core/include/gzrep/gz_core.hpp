#pragma once

// Gelfand-Zetlin patterns, functions of the free rows, and the calculus of
// difference operators acting on them.
//
// An operator is stored as a pointwise kernel: at a pattern gamma it returns
// the sparse expansion (Op f)(gamma) = sum_s c_s(gamma) f(gamma + i hbar s),
// where s runs over integer shift vectors of the free entries. Composition
// evaluates the inner kernel at the shifted points of the outer one, so every
// identity is checked by plain pointwise evaluation.

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gzrep/errors.hpp"
#include "gzrep/hbar.hpp"

namespace gzrep {

using cd = std::complex<double>;

/// Largest N supported by the operator calculus (shift keys are fixed-size).
inline constexpr int kMaxOperatorLevels = 6;
inline constexpr int kMaxFreeEntries = kMaxOperatorLevels * (kMaxOperatorLevels - 1) / 2;

/// Position of gamma_{nj} (1-based) in row-major triangular storage.
constexpr int flat_index(int n, int j) { return n * (n - 1) / 2 + (j - 1); }

class GzPattern {
 public:
  GzPattern() = default;
  explicit GzPattern(int levels);
  explicit GzPattern(const std::vector<std::vector<cd>>& rows);

  int levels() const { return levels_; }
  int size() const { return static_cast<int>(data_.size()); }
  int free_size() const { return levels_ * (levels_ - 1) / 2; }

  cd operator()(int n, int j) const { return data_[flat_index(n, j)]; }
  cd& operator()(int n, int j) { return data_[flat_index(n, j)]; }
  std::span<const cd> row(int n) const { return {data_.data() + flat_index(n, 1), static_cast<size_t>(n)}; }
  std::span<cd> row(int n) { return {data_.data() + flat_index(n, 1), static_cast<size_t>(n)}; }
  const std::vector<cd>& data() const { return data_; }
  std::vector<cd>& data() { return data_; }

  /// Replaces the top row (length must equal levels()).
  void set_top_row(std::span<const cd> top);

  friend bool operator==(const GzPattern&, const GzPattern&) = default;

 private:
  int levels_ = 0;
  std::vector<cd> data_;
};

/// Integer shifts of the free entries, addressed by flat_index.
class ShiftVector {
 public:
  ShiftVector() { s_.fill(0); }
  int operator[](int flat) const { return s_[flat]; }
  void add(int flat, int delta);
  static ShiftVector unit(int n, int j, int delta);
  bool is_zero() const;
  ShiftVector operator+(const ShiftVector& o) const;
  friend auto operator<=>(const ShiftVector&, const ShiftVector&) = default;

 private:
  std::array<std::int8_t, kMaxFreeEntries> s_;
};

/// Pattern with gamma_{nj} -> gamma_{nj} + i hbar s_{nj} on the free rows.
GzPattern shifted(const GzPattern& p, const ShiftVector& s, HBar hbar);

/// True when two entries of one free row coincide (relative tolerance).
bool on_singular_set(const GzPattern& p);

/// Function of the free rows; the top row is the fixed spectral label.
class GzFunction {
 public:
  using Evaluator = std::function<cd(const GzPattern&)>;

  GzFunction() = default;
  GzFunction(int levels, std::vector<cd> top_row, Evaluator evaluator);

  cd operator()(const GzPattern& p) const { return (*evaluator_)(p); }
  int levels() const { return levels_; }
  const std::vector<cd>& top_row() const { return top_row_; }
  const Evaluator& evaluator() const { return *evaluator_; }

 private:
  int levels_ = 0;
  std::vector<cd> top_row_;
  std::shared_ptr<const Evaluator> evaluator_;
};

GzFunction linear_combination(cd a, const GzFunction& f, cd b, const GzFunction& g);

/// f at the shifted pattern; throws SingularityError if the shifted point is singular.
cd eval_shifted(const GzFunction& f, const GzPattern& p, const ShiftVector& s, HBar hbar);
cd eval_shifted(const GzFunction& f, const GzPattern& p, const std::map<std::pair<int, int>, int>& shifts,
                HBar hbar);

struct ExpansionTerm {
  ShiftVector shift;
  cd coeff;
  double magnitude;  // sum of |products| that produced coeff (cancellation scale)
};

/// Sparse local expansion of an operator at one point.
class Expansion {
 public:
  void add(const ShiftVector& s, cd coeff, double magnitude) { terms_.push_back({s, coeff, magnitude}); }
  void add(const ShiftVector& s, cd coeff) { add(s, coeff, std::abs(coeff)); }
  /// Sorts by shift and merges duplicates.
  void normalize();
  const std::vector<ExpansionTerm>& terms() const& { return terms_; }
  std::vector<ExpansionTerm> terms() && { return std::move(terms_); }
  std::size_t size() const { return terms_.size(); }

 private:
  std::vector<ExpansionTerm> terms_;
};

/// Value of (Op f)(gamma) together with the sum of |term| contributions.
struct AppliedValue {
  cd value;
  double scale;
};

class GzOperator {
 public:
  using Kernel = std::function<void(const GzPattern&, Expansion&)>;

  GzOperator(int levels, HBar hbar, std::string label, Kernel kernel);

  int levels() const { return levels_; }
  HBar hbar() const { return hbar_; }
  const std::string& label() const { return label_; }

  /// Normalized expansion at p.
  Expansion expand(const GzPattern& p) const;
  AppliedValue apply_at(const GzFunction& f, const GzPattern& p) const;
  GzFunction apply(const GzFunction& f) const;

 private:
  int levels_;
  HBar hbar_;
  std::string label_;
  std::shared_ptr<const Kernel> kernel_;
};

GzOperator identity_operator(int levels, HBar hbar);
GzOperator zero_operator(int levels, HBar hbar);
GzOperator multiplication_operator(int levels, HBar hbar, std::string label,
                                   std::function<cd(const GzPattern&)> factor);
/// Pure shift f(gamma) -> f(gamma + i hbar delta e_{nj}).
GzOperator shift_operator(int levels, HBar hbar, int n, int j, int delta);

GzOperator compose(const GzOperator& a, const GzOperator& b);
GzOperator commutator(const GzOperator& a, const GzOperator& b);
GzOperator operator+(const GzOperator& a, const GzOperator& b);
GzOperator operator-(const GzOperator& a, const GzOperator& b);
GzOperator operator*(cd c, const GzOperator& a);

/// sum_k c_k a_k as a single operator (flat, avoids deep chains of binary sums).
GzOperator linear_combination(const std::vector<std::pair<cd, GzOperator>>& terms, int levels, HBar hbar,
                              std::string label = "sum");

}  // namespace gzrep
