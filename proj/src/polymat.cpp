#include "hk/polymat.hpp"

#include <algorithm>
#include <initializer_list>

#include "hk/error.hpp"

namespace hk {

namespace {

uint64_t pm_p(const PMat& a) {
  for (const auto& r : a)
    for (const auto& x : r) return x.p();
  return 0;
}

// Divides the concatenation of rows by its rational content. Constants are units of k[t], so
// the lattice and all row degrees are unchanged; over Q this stops coefficient growth.
void make_primitive(std::initializer_list<PVec*> rows) {
  mpz_class g = 0, l = 1;
  for (PVec* r : rows)
    for (const auto& x : *r) {
      if (x.is_zero() || x.p()) continue;
      mpq_class c = x.content();
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    }
  if (g == 0 || (abs(g) == 1 && l == 1)) return;
  mpq_class s(l, abs(g));
  s.canonicalize();
  for (PVec* r : rows)
    for (auto& x : *r)
      if (!x.is_zero()) x = x.scale(s);
}

}  // namespace

PMat clear_rows(const Mat& a) {
  PMat out;
  for (const auto& r : a) {
    uint64_t p = r.empty() ? 0 : r[0].p();
    UPoly l = UPoly::constant(p, 1);
    for (const auto& x : r) {
      if (x.is_zero()) continue;
      l = l / gcd(l, x.den()) * x.den();
    }
    l = l.monic();
    PVec v;
    for (const auto& x : r) v.push_back(x.is_zero() ? UPoly(p) : x.num() * (l / x.den()));
    out.push_back(std::move(v));
  }
  return out;
}

Mat to_elem(const PMat& a) {
  Mat out;
  for (const auto& r : a) {
    Vec v;
    for (const auto& x : r) v.emplace_back(x);
    out.push_back(std::move(v));
  }
  return out;
}

UPoly bareiss_det(PMat a) {
  size_t n = a.size();
  uint64_t p = pm_p(a);
  if (n == 0) return UPoly::constant(p, 1);
  UPoly prev = UPoly::constant(p, 1);
  bool neg = false;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k].is_zero()) {
      size_t piv = n;
      for (size_t i = k + 1; i < n; ++i)
        if (!a[i][k].is_zero()) {
          piv = i;
          break;
        }
      if (piv == n) return UPoly(p);
      std::swap(a[k], a[piv]);
      neg = !neg;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
      a[i][k] = UPoly(p);
    }
    prev = a[k][k];
  }
  return neg ? -a[n - 1][n - 1] : a[n - 1][n - 1];
}

PMat left_kernel_basis(const PMat& a, size_t ncols) {
  size_t r = a.size();
  uint64_t p = pm_p(a);
  struct Row {
    PVec left, right;
  };
  std::vector<Row> rows(r);
  for (size_t i = 0; i < r; ++i) {
    rows[i].left = a[i];
    rows[i].right.assign(r, UPoly(p));
    rows[i].right[i] = UPoly::constant(p, 1);
  }
  size_t top = 0;
  for (size_t col = 0; col < ncols && top < r; ++col) {
    for (;;) {
      size_t piv = r;
      size_t nonzero = 0;
      for (size_t i = top; i < r; ++i) {
        if (rows[i].left[col].is_zero()) continue;
        ++nonzero;
        if (piv == r || rows[i].left[col].deg() < rows[piv].left[col].deg()) piv = i;
      }
      if (piv == r) break;
      std::swap(rows[top], rows[piv]);
      if (nonzero == 1) {
        ++top;
        break;
      }
      const UPoly& pv = rows[top].left[col];
      for (size_t i = top + 1; i < r; ++i) {
        if (rows[i].left[col].is_zero()) continue;
        UPoly q, rem;
        divmod(rows[i].left[col], pv, q, rem);
        for (size_t j = col; j < ncols; ++j)
          if (!rows[top].left[j].is_zero()) rows[i].left[j] -= q * rows[top].left[j];
        for (size_t j = 0; j < r; ++j)
          if (!rows[top].right[j].is_zero()) rows[i].right[j] -= q * rows[top].right[j];
        make_primitive({&rows[i].left, &rows[i].right});
      }
    }
  }
  PMat out;
  for (size_t i = top; i < r; ++i) out.push_back(rows[i].right);
  return out;
}

PMat saturate(const Mat& a, size_t ncols) {
  uint64_t p = 0;
  for (const auto& r : a)
    for (const auto& x : r) p = x.p();
  Mat c = right_kernel(a, ncols);
  if (c.empty()) {
    PMat id(ncols, PVec(ncols, UPoly(p)));
    for (size_t i = 0; i < ncols; ++i) id[i][i] = UPoly::constant(p, 1);
    return id;
  }
  PMat cc = clear_rows(c);
  PMat ct(ncols, PVec(cc.size(), UPoly(p)));
  for (size_t i = 0; i < cc.size(); ++i)
    for (size_t j = 0; j < ncols; ++j) ct[j][i] = cc[i][j];
  return left_kernel_basis(ct, cc.size());
}

int row_degree(const PVec& r) {
  int d = -1;
  for (const auto& x : r) d = std::max(d, x.deg());
  return d;
}

std::vector<int> row_degrees(const PMat& a) {
  std::vector<int> d;
  for (const auto& r : a) d.push_back(row_degree(r));
  return d;
}

namespace {

int leading_position(const PVec& r) {
  int d = row_degree(r), pos = -1;
  for (size_t j = 0; j < r.size(); ++j)
    if (r[j].deg() == d) pos = static_cast<int>(j);
  return pos;
}

}  // namespace

void weak_popov(PMat& a) {
  a.erase(std::remove_if(a.begin(), a.end(), [](const PVec& r) { return row_degree(r) < 0; }), a.end());
  for (;;) {
    bool changed = false;
    for (size_t i = 0; i < a.size() && !changed; ++i) {
      int pi = leading_position(a[i]);
      for (size_t j = i + 1; j < a.size() && !changed; ++j) {
        if (leading_position(a[j]) != pi) continue;
        size_t big = i, small = j;
        if (a[j][pi].deg() > a[i][pi].deg()) std::swap(big, small);
        int sh = a[big][pi].deg() - a[small][pi].deg();
        mpq_class c = a[big][pi].mul(a[big][pi].lc(), a[big][pi].inv(a[small][pi].lc()));
        for (size_t k = 0; k < a[big].size(); ++k)
          if (!a[small][k].is_zero()) a[big][k] -= a[small][k].scale(c).shift(sh);
        make_primitive({&a[big]});
        if (row_degree(a[big]) < 0) a.erase(a.begin() + big);
        changed = true;
      }
    }
    if (!changed) return;
  }
}

int poly_vector_height(const PVec& v) {
  int d = -1;
  uint64_t p = 0;
  for (const auto& x : v) d = std::max(d, x.deg()), p = x.p();
  if (d < 0) fail("AllZero", "height of the zero vector");
  UPoly g(p);
  for (const auto& x : v) g = gcd(g, x);
  return d - g.deg();
}

PVec maximal_minors(const PMat& a, size_t ncols) {
  size_t m = a.size();
  PVec out;
  if (m > ncols) fail("RankDeficient", "more rows than columns");
  std::vector<size_t> idx(m);
  for (size_t i = 0; i < m; ++i) idx[i] = i;
  for (;;) {
    PMat sub(m, PVec(m));
    for (size_t i = 0; i < m; ++i)
      for (size_t j = 0; j < m; ++j) sub[i][j] = a[i][idx[j]];
    out.push_back(bareiss_det(sub));
    int k = static_cast<int>(m) - 1;
    while (k >= 0 && idx[k] == ncols - m + k) --k;
    if (k < 0) break;
    ++idx[k];
    for (size_t j = k + 1; j < m; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

}  // namespace hk
