#include "gzrep/gz_core.hpp"

#include <algorithm>
#include <cmath>

namespace gzrep {

GzPattern::GzPattern(int levels) : levels_(levels) {
  if (levels < 1) throw ConfigurationError("GzPattern: need at least one level");
  data_.assign(static_cast<size_t>(levels * (levels + 1) / 2), cd(0.0));
}

GzPattern::GzPattern(const std::vector<std::vector<cd>>& rows) : GzPattern(static_cast<int>(rows.size())) {
  for (int n = 1; n <= levels_; ++n) {
    const auto& r = rows[static_cast<size_t>(n - 1)];
    if (static_cast<int>(r.size()) != n) throw ConfigurationError("GzPattern: row n must hold n entries");
    for (int j = 1; j <= n; ++j) {
      if (!std::isfinite(r[j - 1].real()) || !std::isfinite(r[j - 1].imag())) {
        throw ConfigurationError("GzPattern: entries must be finite");
      }
      (*this)(n, j) = r[j - 1];
    }
  }
}

void GzPattern::set_top_row(std::span<const cd> top) {
  if (static_cast<int>(top.size()) != levels_) throw ConfigurationError("GzPattern: top row length mismatch");
  std::copy(top.begin(), top.end(), row(levels_).begin());
}

void ShiftVector::add(int flat, int delta) {
  const int v = s_[flat] + delta;
  if (v > 127 || v < -128) throw ConfigurationError("ShiftVector: shift out of range");
  s_[flat] = static_cast<std::int8_t>(v);
}

ShiftVector ShiftVector::unit(int n, int j, int delta) {
  ShiftVector s;
  s.add(flat_index(n, j), delta);
  return s;
}

bool ShiftVector::is_zero() const {
  return std::all_of(s_.begin(), s_.end(), [](std::int8_t v) { return v == 0; });
}

ShiftVector ShiftVector::operator+(const ShiftVector& o) const {
  ShiftVector r = *this;
  for (int k = 0; k < kMaxFreeEntries; ++k) {
    if (o.s_[k] != 0) r.add(k, o.s_[k]);
  }
  return r;
}

GzPattern shifted(const GzPattern& p, const ShiftVector& s, HBar hbar) {
  GzPattern q = p;
  const int free = p.free_size();
  const cd ih(0.0, hbar.value());
  for (int k = 0; k < free; ++k) {
    if (s[k] != 0) q.data()[k] += ih * static_cast<double>(s[k]);
  }
  return q;
}

bool on_singular_set(const GzPattern& p) {
  for (int n = 2; n < p.levels(); ++n) {
    for (int s = 1; s <= n; ++s) {
      for (int t = s + 1; t <= n; ++t) {
        const cd a = p(n, s), b = p(n, t);
        if (std::abs(a - b) <= 1e-13 * (1.0 + std::abs(a) + std::abs(b))) return true;
      }
    }
  }
  return false;
}

GzFunction::GzFunction(int levels, std::vector<cd> top_row, Evaluator evaluator)
    : levels_(levels),
      top_row_(std::move(top_row)),
      evaluator_(std::make_shared<const Evaluator>(std::move(evaluator))) {
  if (static_cast<int>(top_row_.size()) != levels_) throw ConfigurationError("GzFunction: top row length mismatch");
}

GzFunction linear_combination(cd a, const GzFunction& f, cd b, const GzFunction& g) {
  if (f.levels() != g.levels()) throw ConfigurationError("linear_combination: level mismatch");
  return GzFunction(f.levels(), f.top_row(), [a, b, f, g](const GzPattern& p) { return a * f(p) + b * g(p); });
}

cd eval_shifted(const GzFunction& f, const GzPattern& p, const ShiftVector& s, HBar hbar) {
  if (s.is_zero()) return f(p);
  const GzPattern q = shifted(p, s, hbar);
  if (on_singular_set(q)) throw SingularityError("eval_shifted: shifted point is on the singular set");
  return f(q);
}

cd eval_shifted(const GzFunction& f, const GzPattern& p, const std::map<std::pair<int, int>, int>& shifts,
                HBar hbar) {
  ShiftVector s;
  for (const auto& [key, delta] : shifts) {
    const auto [n, j] = key;
    if (n < 1 || n >= p.levels() || j < 1 || j > n) {
      throw ConfigurationError("eval_shifted: shifts may only touch levels n < N");
    }
    s.add(flat_index(n, j), delta);
  }
  return eval_shifted(f, p, s, hbar);
}

void Expansion::normalize() {
  if (terms_.size() < 2) return;
  std::sort(terms_.begin(), terms_.end(),
            [](const ExpansionTerm& a, const ExpansionTerm& b) { return a.shift < b.shift; });
  std::size_t w = 0;
  for (std::size_t r = 1; r < terms_.size(); ++r) {
    if (terms_[r].shift == terms_[w].shift) {
      terms_[w].coeff += terms_[r].coeff;
      terms_[w].magnitude += terms_[r].magnitude;
    } else {
      terms_[++w] = terms_[r];
    }
  }
  terms_.resize(w + 1);
}

GzOperator::GzOperator(int levels, HBar hbar, std::string label, Kernel kernel)
    : levels_(levels), hbar_(hbar), label_(std::move(label)), kernel_(std::make_shared<const Kernel>(std::move(kernel))) {
  if (levels < 1 || levels > kMaxOperatorLevels) throw ConfigurationError("GzOperator: N out of supported range");
}

Expansion GzOperator::expand(const GzPattern& p) const {
  if (p.levels() != levels_) throw ConfigurationError("GzOperator: pattern has wrong number of levels");
  Expansion e;
  (*kernel_)(p, e);
  e.normalize();
  return e;
}

AppliedValue GzOperator::apply_at(const GzFunction& f, const GzPattern& p) const {
  const Expansion e = expand(p);
  AppliedValue r{0.0, 0.0};
  for (const auto& t : e.terms()) {
    const cd v = eval_shifted(f, p, t.shift, hbar_);
    r.value += t.coeff * v;
    r.scale += t.magnitude * std::abs(v);
  }
  return r;
}

GzFunction GzOperator::apply(const GzFunction& f) const {
  if (f.levels() != levels_) throw ConfigurationError("GzOperator::apply: level mismatch");
  GzOperator self = *this;
  return GzFunction(levels_, f.top_row(), [self, f](const GzPattern& p) { return self.apply_at(f, p).value; });
}

namespace {

void check_compatible(const GzOperator& a, const GzOperator& b) {
  if (a.levels() != b.levels() || !(a.hbar() == b.hbar())) {
    throw ConfigurationError("operators act on different N or hbar");
  }
}

}  // namespace

GzOperator identity_operator(int levels, HBar hbar) {
  return GzOperator(levels, hbar, "1", [](const GzPattern&, Expansion& out) { out.add(ShiftVector{}, 1.0); });
}

GzOperator zero_operator(int levels, HBar hbar) {
  return GzOperator(levels, hbar, "0", [](const GzPattern&, Expansion&) {});
}

GzOperator multiplication_operator(int levels, HBar hbar, std::string label,
                                   std::function<cd(const GzPattern&)> factor) {
  return GzOperator(levels, hbar, std::move(label),
                    [factor = std::move(factor)](const GzPattern& p, Expansion& out) { out.add(ShiftVector{}, factor(p)); });
}

GzOperator shift_operator(int levels, HBar hbar, int n, int j, int delta) {
  if (n < 1 || n >= levels || j < 1 || j > n) throw ConfigurationError("shift_operator: index out of range");
  const ShiftVector s = ShiftVector::unit(n, j, delta);
  return GzOperator(levels, hbar, "T", [s](const GzPattern&, Expansion& out) { out.add(s, 1.0); });
}

GzOperator compose(const GzOperator& a, const GzOperator& b) {
  check_compatible(a, b);
  const HBar hbar = a.hbar();
  return GzOperator(a.levels(), hbar, a.label() + "*" + b.label(), [a, b, hbar](const GzPattern& p, Expansion& out) {
    const Expansion ea = a.expand(p);
    for (const auto& ta : ea.terms()) {
      const Expansion eb = b.expand(ta.shift.is_zero() ? p : shifted(p, ta.shift, hbar));
      for (const auto& tb : eb.terms()) {
        out.add(ta.shift + tb.shift, ta.coeff * tb.coeff, ta.magnitude * tb.magnitude);
      }
    }
  });
}

GzOperator commutator(const GzOperator& a, const GzOperator& b) {
  check_compatible(a, b);
  GzOperator ab = compose(a, b);
  GzOperator ba = compose(b, a);
  return GzOperator(a.levels(), a.hbar(), "[" + a.label() + "," + b.label() + "]",
                    [ab, ba](const GzPattern& p, Expansion& out) {
                      for (const auto& t : ab.expand(p).terms()) out.add(t.shift, t.coeff, t.magnitude);
                      for (const auto& t : ba.expand(p).terms()) out.add(t.shift, -t.coeff, t.magnitude);
                    });
}

GzOperator operator+(const GzOperator& a, const GzOperator& b) {
  check_compatible(a, b);
  return GzOperator(a.levels(), a.hbar(), a.label() + "+" + b.label(), [a, b](const GzPattern& p, Expansion& out) {
    for (const auto& t : a.expand(p).terms()) out.add(t.shift, t.coeff, t.magnitude);
    for (const auto& t : b.expand(p).terms()) out.add(t.shift, t.coeff, t.magnitude);
  });
}

GzOperator operator-(const GzOperator& a, const GzOperator& b) { return a + (cd(-1.0) * b); }

GzOperator operator*(cd c, const GzOperator& a) {
  return GzOperator(a.levels(), a.hbar(), a.label(), [c, a](const GzPattern& p, Expansion& out) {
    const double ac = std::abs(c);
    for (const auto& t : a.expand(p).terms()) out.add(t.shift, c * t.coeff, ac * t.magnitude);
  });
}

GzOperator linear_combination(const std::vector<std::pair<cd, GzOperator>>& terms, int levels, HBar hbar,
                              std::string label) {
  for (const auto& [c, op] : terms) {
    if (op.levels() != levels || !(op.hbar() == hbar)) throw ConfigurationError("operators act on different N or hbar");
  }
  return GzOperator(levels, hbar, std::move(label), [terms](const GzPattern& p, Expansion& out) {
    for (const auto& [c, op] : terms) {
      if (c == 0.0) continue;
      const double ac = std::abs(c);
      for (const auto& t : op.expand(p).terms()) out.add(t.shift, c * t.coeff, ac * t.magnitude);
    }
  });
}

}  // namespace gzrep
