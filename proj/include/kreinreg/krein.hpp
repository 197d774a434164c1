#pragma once

#include <vector>

#include <Eigen/Dense>

#include "kreinreg/funcrep.hpp"
#include "kreinreg/neutral.hpp"
#include "kreinreg/profile.hpp"
#include "kreinreg/regularize.hpp"
#include "kreinreg/report.hpp"

namespace kreinreg {

// Coordinate model of the completed space at truncation N: a concrete
// function slot with vanishing jet (the positive part), plus two coordinate
// blocks of length N+1 — `a` along the dual axes v_i and `b` along the
// family members chi_i. The pairing couples a against b (hyperbolic
// planes); the scalar product squares each block.
struct KreinVector {
  int order_n = 0;
  FunctionRep h;          // zero-jet function component
  std::vector<double> a;  // dual coordinates
  std::vector<double> b;  // family coordinates
};

enum class GramMode { indefinite, hilbert };

struct GramMatrix {
  int dim = 0;
  Eigen::MatrixXd entries;
};

// Pairing / scalar product in coordinates:
//   indefinite: <x.h, y.h>_L2 + sum_i (x.a_i y.b_i) + sum_i (x.b_i y.a_i)
//   hilbert:    <x.h, y.h>_L2 + sum_i (x.a_i y.a_i) + sum_i (x.b_i y.b_i)
// The two coordinate sums are accumulated separately and added last, so
// swapping the blocks (the metric operator) changes nothing, bit for bit.
// Throws TruncationMismatch when the vectors disagree on N.
double gram(const KreinVector& x, const KreinVector& y,
            const NeutralSystem& sys, GramMode mode);

// The fundamental symmetry J: identity on the function slot, swap of the
// two coordinate blocks. An involution; J-transported hilbert gram equals
// the indefinite gram exactly.
KreinVector metric_apply(const KreinVector& x);

// Dual axis vector (0, e_i, 0). Throws IndexOutOfRange for i outside 0..N.
KreinVector v_basis_vector(int i, int order_n);

// Coordinates of a concrete function: h = zero-jet remainder, b_i = scaled
// derivative values f^i, a_i = pairing <chi_i, f>.
KreinVector embed(const FunctionRep& f, const NeutralSystem& sys);

// Gram matrix of the model basis {far-off unit bumps, v_0..v_N, chi-axes}
// in the requested mode.
GramMatrix model_gram(const NeutralSystem& sys, GramMode mode,
                      int h_dim = 3);

// Number of negative eigenvalues of a symmetric Gram matrix. Throws
// DegenerateGram when the smallest eigenvalue magnitude falls below
// 1e-10 times the largest.
int negativity_rank(const GramMatrix& g);

// For every unordered pair from fs and every system in sys_sequence,
// compares the coordinate-model pairing of the embeddings against the
// high-order reference pairing, records |difference| against the dropped
// subtraction terms plus quadrature/tail budget, and flags pairs whose
// error fails to decrease strictly along the sequence once above the noise
// floor. Systems must share rule, delta, and beta (nested weights).
Report embedding_consistency(const std::vector<FunctionRep>& fs,
                             const std::vector<const NeutralSystem*>& systems,
                             int reference_order = 10);

}  // namespace kreinreg
