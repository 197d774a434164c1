#ifndef KREINREG_ABSTRACT_SPACE_HPP
#define KREINREG_ABSTRACT_SPACE_HPP

#include <Eigen/Dense>
#include <vector>

#include "kreinreg/krein.hpp"
#include "kreinreg/report.hpp"

namespace kreinreg {

// Finite indefinite inner-product data detached from any function model:
// a Gram matrix over some coordinate basis, a distinguished family of
// neutral directions, the weight sequence attached to them, and a bag of
// sample vectors used for the asymptotic checks.
struct AbstractSpace {
  GramMatrix G;
  std::vector<Eigen::VectorXd> neutral_set;
  std::vector<double> gamma;
  std::vector<Eigen::VectorXd> sample_family;
};

// Runs the three sufficiency checks on the data:
//   0) every pair of distinguished directions pairs to zero,
//   1) stripping the distinguished components from each sample leaves a
//      residue whose self-pairing is nonnegative at the deepest level and
//      improves monotonically as more components are stripped,
//   2) both coordinate sequences attached to each sample (weighted
//      pairings and de-weighted components) have decaying partial
//      square-sum tails, measured by a fitted log-log slope.
// Component coefficients are solved once per sample by least squares
// against the distinguished directions; a rank-deficient system raises
// SingularDecomposition. Conditions 1 and 2 record a worst-case witness
// across the sample family.
Report check_conditions(const AbstractSpace& s, double tol = 1e-8);

// Solves for the operator J relating the two forms, <x,y>_G = <x,Jy>_H,
// i.e. J = H^{-1} G via a Cholesky factorization of H. Throws
// NotPositiveDefinite if H is not symmetric positive definite and
// TruncationMismatch if the shapes disagree.
Eigen::MatrixXd finite_metric_solve(const GramMatrix& G, const GramMatrix& H);

// True when J is invertible with a bounded inverse at this scale: the
// smallest singular value is at least rel_threshold times the largest.
bool maximality_check(const Eigen::MatrixXd& J, double rel_threshold = 1e-8);

// Sampled estimate of the coupling strength of distinguished direction i:
// each sample is rescaled so its i-th component equals one, samples whose
// norm then exceeds radius are discarded, and the largest |<chi_i, v>_G|
// over the survivors is returned (0 if none survive). The norm is taken
// from `hilbert` when given, otherwise Euclidean coordinates are used.
// Nondecreasing in radius. Throws EmptyFamily when there are no samples.
double beta_tilde_estimate(const AbstractSpace& s, int i, double radius,
                           const Eigen::MatrixXd* hilbert = nullptr);

// Packages a constructed system as abstract data: the coordinate-model
// Gram, unit axes for the distinguished directions, the profile weights,
// and a deterministic family of geometric-decay samples that exercise the
// asymptotic checks.
AbstractSpace export_model(const NeutralSystem& sys, int h_dim = 3,
                           int samples = 6);

// Synthetic space with power-law data: gamma_i = (i+1)^{-(1/2+eps)},
// sample pairings decaying like (i+1)^{-(1+delta)} with 0 < eps < delta,
// and components chosen square-summable after de-weighting. All three
// checks pass on it.
AbstractSpace polynomial_example(int count = 40, double eps_tilde = 0.25,
                                 double delta_tilde = 0.5);

}  // namespace kreinreg

#endif  // KREINREG_ABSTRACT_SPACE_HPP
