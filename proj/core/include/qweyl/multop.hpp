// Left and right multiplication operators on the quantized matrix algebras,
// and their realization as Weyl-algebra elements.
//
// Left multiplication by a generator expands, after normal ordering, into a
// leading term (the generator's M dressed by the northwest hook of H's) plus
// correction terms indexed by NW-partitions of (i,j): pairs of strictly
// increasing sequences a_1 < ... < a_r < i, b_1 < ... < b_r < j.  A partition
// prescribes the M/D factor placement
//   M_{i,b_1} * prod_{k=1..r} D_{a_k, b_{r-k+1}} M_{a_k, b_{r-k+2}}
// (with b_{r+1} = j); the accompanying diagonal (H) monomial and scalar are
// not prescribed and are fitted against the rewrite engine, which is always
// the ground truth.  Right multiplication mirrors this with SE-partitions
// i < a_1 < ... < a_r <= n, j < b_1 < ... < b_r <= n and factor placement
//   M_{a_r, j} * prod_{x=0..r-1} D_{a_{r-x}, b_{x+1}} M_{a_{r-x-1}, b_{x+1}}
// (with a_0 = i).

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "qweyl/matrixalg.hpp"
#include "qweyl/weyl.hpp"

namespace qweyl {

enum class Chirality { LeftMult, RightMult };

struct MultOperator {
    int i = 1, j = 1;
    Side side = Side::Plus;
    Chirality chirality = Chirality::LeftMult;
};

// matrix of x -> g*x (LeftMult) or x -> x*g (RightMult) from degree d to d+1,
// computed by the normal-ordering engine
OperatorMatrix mult_matrix(const MultOperator& op, int n, int d);

struct PartitionSkeleton {
    int r = 0;
    std::vector<int> a, b;        // the interior sequences, 0-based storage
    std::vector<int> m_nodes;     // positions carrying an M factor
    std::vector<int> d_nodes;     // positions carrying a D factor
};

// all NW- (LeftMult) or SE- (RightMult) partition skeletons of op's node
std::vector<PartitionSkeleton> partition_skeletons(const MultOperator& op, int n);

// the partition-free summand: M at (i,j) dressed by the NW (left) or SE
// (right) hook of H's
WeylElement leading_term(const MultOperator& op, int n);

struct FitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The unique Weyl element supported on the leading term plus the partition
// skeletons whose action matches mult_matrix on all degrees <= d_max.  Each
// skeleton's unknown diagonal dressing (one H-Laurent-monomial) and scalar
// (gamma^r times a q-power) are solved from probe monomials; the assembled
// element is then re-verified against the engine entrywise.  Throws FitError
// if the oracle is not supported on the claimed skeletons.
WeylElement fit_weyl_skeleton(const MultOperator& op, int n, int d_max);

// Structural scan of a fitted element: in every non-leading term, each row
// except row i carries either no M/D factors or exactly one of each, with the
// D strictly on the NW (left) / SE (right) side of the M; likewise for
// columns with column j exempt, and the exempt row/column carry exactly one
// M and no D.
struct ObservationReport {
    int checked = 0;  // non-leading terms scanned
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};
ObservationReport check_observations(const WeylElement& fitted, const MultOperator& op);

}  // namespace qweyl
