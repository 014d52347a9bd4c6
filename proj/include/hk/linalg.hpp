#pragma once

#include <vector>

#include "hk/field.hpp"

namespace hk {

using Vec = std::vector<Elem>;
using Mat = std::vector<Vec>;

struct Echelon {
  Mat rows;                 // reduced row echelon form, zero rows dropped
  std::vector<int> pivots;  // pivot column of each row
};

Echelon rref(const Mat& a, size_t ncols);
int rank(const Mat& a, size_t ncols);
// Rank with a certified shortcut: full rank at a specialization t = t0 proves full rank.
int rank_fast(const Mat& a, size_t ncols);
// Basis of {v : a v = 0}.
Mat right_kernel(const Mat& a, size_t ncols);
Elem det(Mat a);
// Some solution of a x = b, or false.
bool solve(const Mat& a, const Vec& b, size_t ncols, Vec& x);
Mat transpose(const Mat& a, size_t ncols);
Elem dot(const Vec& a, const Vec& b);

}  // namespace hk
