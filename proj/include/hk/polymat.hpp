#pragma once

#include <vector>

#include "hk/linalg.hpp"
#include "hk/upoly.hpp"

namespace hk {

// Matrices over k[t], k = Q or F_p.
using PVec = std::vector<UPoly>;
using PMat = std::vector<PVec>;

// Multiply each row by the monic lcm of its denominators.
PMat clear_rows(const Mat& a);
Mat to_elem(const PMat& a);
UPoly bareiss_det(PMat a);
// k[t]-basis of {x in k[t]^rows : x a = 0}.
PMat left_kernel_basis(const PMat& a, size_t ncols);
// k[t]-basis of (K-row space of a) intersected with k[t]^n.
PMat saturate(const Mat& a, size_t ncols);
// Mulders-Storjohann: row operations until leading positions are distinct. Drops zero rows.
void weak_popov(PMat& a);
int row_degree(const PVec& r);
std::vector<int> row_degrees(const PMat& a);
// Max degree minus degree of the gcd of a nonzero polynomial vector.
int poly_vector_height(const PVec& v);
// All maximal minors of an m x n matrix (m <= n), columns in lex order.
PVec maximal_minors(const PMat& a, size_t ncols);

}  // namespace hk
