#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hk/dynamics.hpp"

namespace hk {

enum class Irreducibility { Certified, Unverified };

// Irreducibility over the base field via an absolutely-irreducible quadric test or a
// univariate specialization that keeps the degree and stays irreducible.
Irreducibility check_irreducible(const BaseField& K, const MPoly& F);

struct Hypersurface {
  BaseField K;
  int n = 0;  // ambient P^n
  MPoly F;    // homogeneous in n+1 variables
  Irreducibility irreducibility = Irreducibility::Unverified;

  Hypersurface() = default;
  Hypersurface(BaseField K, MPoly F);
  int degree() const { return F.total_degree(); }
  int dimension() const { return n - 1; }
};

// Chow form in r blocks of n+1 variables; variable i*(n+1)+j is u_{i,j}.
struct ChowForm {
  int n = 0;
  int r = 0;
  int degree = 0;  // degree in each block
  MPoly poly;
};

ChowForm chow_form(const Hypersurface& X);
// Zero-cycle sum of points: product of the linear forms sum_j x_j u_j.
ChowForm chow_form(const BaseField& K, const std::vector<Point>& points);
// Content-normalized: primitive, first nonzero coefficient (ascending lex) positive or monic.
MPoly normalize_content(const BaseField& K, const MPoly& f);

// Height of the Chow coefficient vector (max norm over Q).
HeightValue philippon_height(const BaseField& K, const ChowForm& ch);
HeightValue philippon_height(const Hypersurface& X);

// Resultant of forms whose coefficients are polynomials in parameter variables.
// forms[i] maps an x-exponent to its coefficient; degs[i] is the degree of forms[i].
using ParamForm = std::map<Exps, MPoly>;
MPoly parametric_resultant(const std::vector<ParamForm>& forms, const std::vector<int>& degs, int nparams,
                           long budget = 20000);

struct DegreeDHeight {
  HeightValue value;     // height of the eliminant
  HeightValue expected;  // (prod d_i) * philippon_height
  bool identity_holds = false;
  MPoly eliminant;
};
DegreeDHeight degree_d_height(const Hypersurface& X, const std::vector<int>& dtuple, long budget = 20000);

struct PushforwardResult {
  Hypersurface image;
  int fiber_degree = 1;  // d * deg X = deg image * fiber_degree
};
PushforwardResult pushforward(const Endo& f, const Hypersurface& X);

struct HypersurfaceHeight {
  HeightValue value;         // center widened by the tail
  HeightValue center;        // normalized standard height of the m-th image over d^m
  HeightValue tail;          // (dim X + 1)(c1 h + c2 + c0) / d^m
  std::vector<Hypersurface> chain;
};
HypersurfaceHeight canonical_height_hypersurface(const Endo& f, const Hypersurface& X, int m);

struct SlicePoint {
  std::optional<Point> coords;  // set when the point is base-field rational
  std::string description;
  HeightValue height;
};
struct Slice {
  std::vector<Elem> line;  // coefficients of the slicing line
  std::vector<SlicePoint> points;
  HeightValue min_height;
  bool holds = false;
};
struct SlicingReport {
  HeightValue normalized_height;  // Chow height / degree
  std::vector<Slice> slices;
  int resampled = 0;
  bool holds = false;
};
// Random constant-coefficient lines through a plane curve of degree <= 2 over a function field.
SlicingReport slicing_minimum_test(const Hypersurface& X, int samples, uint64_t seed);

}  // namespace hk
