#include "hk/linalg.hpp"

#include "hk/error.hpp"

namespace hk {

namespace {

uint64_t field_p(const Mat& a) {
  for (const auto& r : a)
    for (const auto& x : r) return x.p();
  return 0;
}

}  // namespace

Echelon rref(const Mat& a0, size_t ncols) {
  Mat a = a0;
  Echelon out;
  size_t row = 0;
  for (size_t col = 0; col < ncols && row < a.size(); ++col) {
    size_t piv = a.size();
    for (size_t i = row; i < a.size(); ++i) {
      if (a[i][col].is_zero()) continue;
      // Prefer the simplest pivot to limit coefficient growth.
      if (piv == a.size() || a[i][col].num().deg() + a[i][col].den().deg() <
                                 a[piv][col].num().deg() + a[piv][col].den().deg())
        piv = i;
    }
    if (piv == a.size()) continue;
    std::swap(a[row], a[piv]);
    Elem il = a[row][col].inv();
    for (size_t j = col; j < ncols; ++j) a[row][j] *= il;
    for (size_t i = 0; i < a.size(); ++i) {
      if (i == row || a[i][col].is_zero()) continue;
      Elem f = a[i][col];
      for (size_t j = col; j < ncols; ++j)
        if (!a[row][j].is_zero()) a[i][j] -= f * a[row][j];
    }
    out.pivots.push_back(static_cast<int>(col));
    ++row;
  }
  a.resize(row);
  out.rows = std::move(a);
  return out;
}

int rank(const Mat& a, size_t ncols) { return static_cast<int>(rref(a, ncols).pivots.size()); }

int rank_fast(const Mat& a, size_t ncols) {
  size_t full = std::min(a.size(), ncols);
  if (full == 0) return 0;
  uint64_t p = field_p(a);
  // Try a few specialization points; skip any that hit a pole.
  for (long t0 : {3L, 7L, 12L}) {
    Mat s;
    bool ok = true;
    for (const auto& r : a) {
      Vec v;
      for (size_t j = 0; j < ncols; ++j) {
        if (r[j].den().eval(t0) == 0) {
          ok = false;
          break;
        }
        v.emplace_back(p, r[j].eval(t0));
      }
      if (!ok) break;
      s.push_back(std::move(v));
    }
    if (!ok) continue;
    if (static_cast<size_t>(rank(s, ncols)) == full) return static_cast<int>(full);
    break;
  }
  return rank(a, ncols);
}

Mat right_kernel(const Mat& a, size_t ncols) {
  uint64_t p = field_p(a);
  Echelon e = rref(a, ncols);
  std::vector<int> is_piv(ncols, -1);
  for (size_t i = 0; i < e.pivots.size(); ++i) is_piv[e.pivots[i]] = static_cast<int>(i);
  Mat ker;
  for (size_t f = 0; f < ncols; ++f) {
    if (is_piv[f] >= 0) continue;
    Vec v(ncols, Elem::zero(p));
    v[f] = Elem::one(p);
    for (size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.rows[i][f];
    ker.push_back(std::move(v));
  }
  return ker;
}

Elem det(Mat a) {
  size_t n = a.size();
  uint64_t p = field_p(a);
  Elem d = Elem::one(p);
  for (size_t col = 0; col < n; ++col) {
    size_t piv = n;
    for (size_t i = col; i < n; ++i)
      if (!a[i][col].is_zero()) {
        piv = i;
        break;
      }
    if (piv == n) return Elem::zero(p);
    if (piv != col) {
      std::swap(a[piv], a[col]);
      d = -d;
    }
    d *= a[col][col];
    Elem il = a[col][col].inv();
    for (size_t i = col + 1; i < n; ++i) {
      if (a[i][col].is_zero()) continue;
      Elem f = a[i][col] * il;
      for (size_t j = col; j < n; ++j)
        if (!a[col][j].is_zero()) a[i][j] -= f * a[col][j];
    }
  }
  return d;
}

bool solve(const Mat& a, const Vec& b, size_t ncols, Vec& x) {
  uint64_t p = b.empty() ? field_p(a) : b[0].p();
  Mat aug = a;
  for (size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  Echelon e = rref(aug, ncols + 1);
  x.assign(ncols, Elem::zero(p));
  for (size_t i = 0; i < e.pivots.size(); ++i) {
    if (e.pivots[i] == static_cast<int>(ncols)) return false;
    x[e.pivots[i]] = e.rows[i][ncols];
  }
  return true;
}

Mat transpose(const Mat& a, size_t ncols) {
  uint64_t p = field_p(a);
  Mat t(ncols, Vec(a.size(), Elem::zero(p)));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < ncols; ++j) t[j][i] = a[i][j];
  return t;
}

Elem dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) fail("ArityMismatch", "dot product of vectors with different lengths");
  Elem s = a.empty() ? Elem() : Elem::zero(a[0].p());
  for (size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  return s;
}

}  // namespace hk
