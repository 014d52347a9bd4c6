#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hk/chow.hpp"
#include "hk/linalg.hpp"
#include "hk/polymat.hpp"

namespace hk {

// Subspace of K^ambient spanned by the rows of basis (rank verified on construction).
struct SubspaceFF {
  BaseField K;
  int ambient = 0;
  Mat basis;

  SubspaceFF() = default;
  SubspaceFF(BaseField K, int ambient, Mat rows);
  int dim() const { return static_cast<int>(basis.size()); }
};

// Height of the Plücker vector.
HeightValue schmidt_height(const SubspaceFF& V);
// Saturated polynomial basis in weak Popov form, rows sorted by degree (stable).
PMat reduced_basis(const SubspaceFF& V);
// Sum of the reduced row degrees; equals schmidt_height.
int schmidt_height_reduced(const SubspaceFF& V);
SubspaceFF orthogonal_complement(const SubspaceFF& V);

struct SiegelChain {
  std::vector<SubspaceFF> W;  // W[i] has dimension i+1
  std::vector<int> degrees;   // sorted reduced row degrees
};
SiegelChain siegel_chain(const SubspaceFF& V);

// sum over places of sup_{x in V} log |q(x)| / |x|.
HeightValue h_tilde(const SubspaceFF& V, const Vec& q);
// Linear form vanishing on the second-to-last chain member but not on V.
Vec small_linear_form(const SubspaceFF& V);

struct GradedIdeal {
  BaseField K;
  int nvars = 0;
  std::vector<MPoly> gens;
  // Dimension of the affine cone (rank of I is nvars - r), degree, Chow height and niceness.
  int r = -1;
  int degree = -1;
  std::optional<HeightValue> height;
  std::optional<int> nice_D;
  std::string nice_source;

  GradedIdeal() = default;
  GradedIdeal(BaseField K, int nvars, std::vector<MPoly> gens);
  static GradedIdeal hypersurface(const Hypersurface& X);
  static GradedIdeal point(const BaseField& K, const Point& x);

  int max_generator_degree() const;
  // Row basis of I_delta in the monomial coordinates of monomials_of_degree(nvars, delta).
  Mat piece(int delta) const;
  SubspaceFF piece_subspace(int delta) const;
};

long geometric_hilbert(const GradedIdeal& I, int delta);
mpz_class chardin_bound(const GradedIdeal& I, int delta);
HeightValue arithmetic_hilbert(const GradedIdeal& I, int delta);
// h * ((delta - D - 1) / r)^r.
mpq_class arith_hilbert_lower_bound(const mpq_class& h, int D, int r, int delta);
// (I[d] : A_{D+d}) != 0 for d = 1, 2, decided by rank at a constant specialization of u (r = 1 only).
bool verify_dnice_direct(const GradedIdeal& I, int D, uint64_t seed = 1);

struct SmallSection {
  MPoly q;
  HeightValue value;    // h_tilde of q on I_delta^perp; bounds h_I(q) from above
  HeightValue bound;    // right-hand side of the small-section inequality
  HeightValue threshold;  // points of Z(I) below this height are zeros of q
  bool nonmember = false;
  bool bound_holds = false;
  long Hg = 0;
  HeightValue Ha;
};
SmallSection small_section(const GradedIdeal& I, int delta);

// D_m = floor((N - dim X)(deg X - 1) / d^m) + dim X + 1.
long d_m_formula(int N, int dimX, int degX, int d, int m);
long delta_m(long Dm, int dimX);

}  // namespace hk
