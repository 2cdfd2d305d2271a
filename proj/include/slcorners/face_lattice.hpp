#pragma once

// The boundary face lattice: one face per node subset S, with dimension
// bookkeeping for the fibration of the face over two copies of the flag
// variety, plus projector-based parabolic and fiber membership tests.

#include <vector>

#include "slcorners/common.hpp"
#include "slcorners/decompositions.hpp"
#include "slcorners/flag.hpp"
#include "slcorners/root_datum.hpp"

namespace slcorners::faces {

struct FaceDescriptor {
  int n = 1;
  std::vector<int> subset;       // S
  std::vector<int> block_sizes;  // partition of n by D \ S
  int codim = 0;                 // |D \ S|
  int dim_flag = 0;              // sum_{i<j} d_i d_j
  int dim_levi = 0;              // sum d_i^2 - 1 - codim
  int dim_face = 0;              // 2 dim_flag + dim_levi
};

FaceDescriptor face_descriptor(int n, const std::vector<int>& subset);

// All 2^{n-1} faces, ordered by subset bitmask.
std::vector<FaceDescriptor> enumerate_faces(int n);

// F_{S1} is a boundary face of F_{S2} iff S1 is contained in S2.
bool face_partial_order(const std::vector<int>& s1, const std::vector<int>& s2);

// True iff every entry of g below the block diagonal induced by D \ S
// vanishes within tol.
bool standard_parabolic_membership(const decomp::SpecialLinearElement& g,
                                   const std::vector<int>& subset, double tol);

// True iff g maps each flag subspace into itself within tol.
bool flag_stabilizer_check(const decomp::SpecialLinearElement& g,
                           const chart::PartialFlag& flag, double tol);

// A parabolic represented by the flag it stabilizes.
struct ParabolicDescriptor {
  chart::PartialFlag flag;
  std::vector<int> subset;

  ParabolicDescriptor(chart::PartialFlag f, std::vector<int> s);
};

// True iff g carries the flag of p onto the flag of p_prime and the
// horospherical factorization of g in p's flag basis has trivial a_S and
// n_S factors, i.e. g lies in K * M_P.
bool is_fiber_element(const decomp::SpecialLinearElement& g,
                      const ParabolicDescriptor& p,
                      const ParabolicDescriptor& p_prime, double tol);

// Dynkin diagram flip i -> n - i.
std::vector<int> opposite_face(int n, const std::vector<int>& subset);

chart::PartialFlag opposite_flag(const chart::PartialFlag& flag);

}  // namespace slcorners::faces
