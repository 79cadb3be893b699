#include "mvml/lp.hpp"

#include "mvml/error.hpp"

namespace mvml::lp {

namespace {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : a_(rows, std::vector<Rational>(cols + 1)), obj_(cols + 1), basis_(rows), allowed_(cols, true) {}

  std::vector<Rational>& row(std::size_t i) { return a_[i]; }
  std::vector<Rational>& obj() { return obj_; }
  std::size_t rows() const { return a_.size(); }
  std::size_t cols() const { return allowed_.size(); }
  std::size_t& basis(std::size_t i) { return basis_[i]; }
  void forbid(std::size_t j) { allowed_[j] = false; }
  Rational& rhs(std::size_t i) { return a_[i].back(); }

  void pivot(std::size_t r, std::size_t c) {
    Rational inv = 1 / a_[r][c];
    for (auto& x : a_[r]) x *= inv;
    auto eliminate = [&](std::vector<Rational>& target) {
      if (target[c] == 0) return;
      Rational f = target[c];
      for (std::size_t j = 0; j < target.size(); ++j)
        if (a_[r][j] != 0) target[j] -= f * a_[r][j];
    };
    for (std::size_t i = 0; i < a_.size(); ++i)
      if (i != r) eliminate(a_[i]);
    eliminate(obj_);
    basis_[r] = c;
  }

  /// Runs simplex on the current objective row. Returns false if unbounded.
  bool optimize() {
    while (true) {
      std::size_t enter = cols();
      for (std::size_t j = 0; j < cols(); ++j)
        if (allowed_[j] && obj_[j] < 0) {
          enter = j;
          break;
        }
      if (enter == cols()) return true;
      std::size_t leave = rows();
      Rational best;
      for (std::size_t i = 0; i < rows(); ++i) {
        if (a_[i][enter] <= 0) continue;
        Rational ratio = a_[i].back() / a_[i][enter];
        if (leave == rows() || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == rows()) return false;
      pivot(leave, enter);
    }
  }

  void drop_row(std::size_t i) {
    a_.erase(a_.begin() + static_cast<long>(i));
    basis_.erase(basis_.begin() + static_cast<long>(i));
  }

 private:
  std::vector<std::vector<Rational>> a_;
  std::vector<Rational> obj_;
  std::vector<std::size_t> basis_;
  std::vector<bool> allowed_;
};

}  // namespace

Result maximize(const Program& p) {
  const std::size_t n = p.num_vars;
  if (p.objective.size() != n) throw DomainError("objective has the wrong length");
  const std::size_t m = p.constraints.size();

  // Normalize to rhs >= 0, then count slack and artificial columns.
  std::vector<Constraint> rows = p.constraints;
  std::size_t slacks = 0, arts = 0;
  for (auto& c : rows) {
    if (c.coeffs.size() != n) throw DomainError("constraint has the wrong length");
    if (c.rhs < 0) {
      for (auto& x : c.coeffs) x = -x;
      c.rhs = -c.rhs;
      if (c.sense == Sense::Le)
        c.sense = Sense::Ge;
      else if (c.sense == Sense::Ge)
        c.sense = Sense::Le;
    }
    if (c.sense != Sense::Eq) ++slacks;
    if (c.sense != Sense::Le) ++arts;
  }
  const std::size_t art0 = n + slacks;
  Tableau t(m, n + slacks + arts);
  std::size_t s = n, a = art0;
  for (std::size_t i = 0; i < m; ++i) {
    auto& r = t.row(i);
    for (std::size_t j = 0; j < n; ++j) r[j] = rows[i].coeffs[j];
    r.back() = rows[i].rhs;
    switch (rows[i].sense) {
      case Sense::Le:
        r[s] = 1;
        t.basis(i) = s++;
        break;
      case Sense::Ge:
        r[s++] = -1;
        r[a] = 1;
        t.basis(i) = a++;
        break;
      case Sense::Eq:
        r[a] = 1;
        t.basis(i) = a++;
        break;
    }
  }

  Result res;
  if (arts > 0) {
    // Phase one: maximize -(sum of artificials).
    auto& o = t.obj();
    for (std::size_t j = art0; j < t.cols(); ++j) o[j] = 1;
    for (std::size_t i = 0; i < t.rows(); ++i)
      if (t.basis(i) >= art0)
        for (std::size_t j = 0; j <= t.cols(); ++j) o[j] -= t.row(i)[j];
    t.optimize();
    if (o.back() != 0) return res;
    for (std::size_t i = 0; i < t.rows();) {
      if (t.basis(i) < art0) {
        ++i;
        continue;
      }
      std::size_t j = 0;
      while (j < art0 && t.row(i)[j] == 0) ++j;
      if (j == art0) {
        t.drop_row(i);
      } else {
        t.pivot(i, j);
        ++i;
      }
    }
    for (std::size_t j = art0; j < t.cols(); ++j) t.forbid(j);
  }

  auto& o = t.obj();
  for (auto& x : o) x = 0;
  for (std::size_t j = 0; j < n; ++j) o[j] = -p.objective[j];
  for (std::size_t i = 0; i < t.rows(); ++i) {
    std::size_t b = t.basis(i);
    if (o[b] == 0) continue;
    Rational f = o[b];
    for (std::size_t j = 0; j <= t.cols(); ++j) o[j] -= f * t.row(i)[j];
  }
  if (!t.optimize()) {
    res.status = Status::Unbounded;
    return res;
  }
  res.status = Status::Optimal;
  res.value = o.back();
  res.x.assign(n, Rational(0));
  for (std::size_t i = 0; i < t.rows(); ++i)
    if (t.basis(i) < n) res.x[t.basis(i)] = t.rhs(i);
  return res;
}

}  // namespace mvml::lp
