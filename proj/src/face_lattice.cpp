#include "slcorners/face_lattice.hpp"

#include <algorithm>

namespace slcorners::faces {

FaceDescriptor face_descriptor(int n, const std::vector<int>& subset) {
  require(n >= 1, "face_descriptor: n must be >= 1");
  require(roots::is_node_subset(n, subset), "face_descriptor: invalid node subset");
  FaceDescriptor face;
  face.n = n;
  face.subset = subset;
  const std::vector<int> breaks = roots::breaks_from_subset(n, subset);
  face.block_sizes = roots::block_sizes_from_breaks(n, breaks);
  face.codim = static_cast<int>(breaks.size());
  int squares = 0;
  for (std::size_t i = 0; i < face.block_sizes.size(); ++i) {
    squares += face.block_sizes[i] * face.block_sizes[i];
    for (std::size_t j = i + 1; j < face.block_sizes.size(); ++j)
      face.dim_flag += face.block_sizes[i] * face.block_sizes[j];
  }
  face.dim_levi = squares - 1 - face.codim;
  face.dim_face = 2 * face.dim_flag + face.dim_levi;
  return face;
}

std::vector<FaceDescriptor> enumerate_faces(int n) {
  require(n >= 1, "enumerate_faces: n must be >= 1");
  std::vector<FaceDescriptor> faces;
  const int count = 1 << (n - 1);
  faces.reserve(count);
  for (int mask = 0; mask < count; ++mask) {
    std::vector<int> subset;
    for (int k = 1; k <= n - 1; ++k)
      if (mask & (1 << (k - 1))) subset.push_back(k);
    faces.push_back(face_descriptor(n, subset));
  }
  return faces;
}

bool face_partial_order(const std::vector<int>& s1, const std::vector<int>& s2) {
  return std::includes(s2.begin(), s2.end(), s1.begin(), s1.end());
}

bool standard_parabolic_membership(const decomp::SpecialLinearElement& g,
                                   const std::vector<int>& subset, double tol) {
  const int n = g.dim();
  const std::vector<int> breaks = roots::breaks_from_subset(n, subset);
  const Eigen::MatrixXd& m = g.matrix();
  for (int c : breaks)
    if (m.block(c, 0, n - c, c).cwiseAbs().maxCoeff() > tol) return false;
  return true;
}

bool flag_stabilizer_check(const decomp::SpecialLinearElement& g,
                           const chart::PartialFlag& flag, double tol) {
  const int n = g.dim();
  require(flag.dim() == n, "flag_stabilizer_check: dimension mismatch");
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n, n);
  for (int i = 1; i <= flag.rank(); ++i) {
    const Eigen::MatrixXd pi = flag.projector(i);
    if (((identity - pi) * g.matrix() * pi).norm() > tol) return false;
  }
  return true;
}

ParabolicDescriptor::ParabolicDescriptor(chart::PartialFlag f, std::vector<int> s)
    : flag(std::move(f)), subset(std::move(s)) {
  require(flag.breaks == roots::breaks_from_subset(flag.dim(), subset),
          "ParabolicDescriptor: flag breaks must equal D \\ S");
}

bool is_fiber_element(const decomp::SpecialLinearElement& g,
                      const ParabolicDescriptor& p,
                      const ParabolicDescriptor& p_prime, double tol) {
  require(p.subset == p_prime.subset, "is_fiber_element: parabolics must share S");
  const int n = g.dim();
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n, n);
  const double scale = std::max(1.0, g.matrix().operatorNorm());

  // (a) g carries each subspace of p's flag onto the matching subspace of
  // p_prime's flag.
  for (int i = 1; i <= p.flag.rank(); ++i) {
    const Eigen::MatrixXd pi = p.flag.projector(i);
    const Eigen::MatrixXd pi_prime = p_prime.flag.projector(i);
    if (((identity - pi_prime) * g.matrix() * pi).norm() > tol * scale) return false;
  }

  // (b) trivial a_S and n_S in p's flag basis, i.e. g lies in K * M_P.
  const auto factors =
      decomp::horospherical_matrix(g.matrix() * p.flag.basis, p.subset);
  if ((factors.block_scales.array() - 1.0).abs().maxCoeff() > tol) return false;
  if ((factors.n_s - identity).norm() > tol) return false;
  return true;
}

std::vector<int> opposite_face(int n, const std::vector<int>& subset) {
  require(roots::is_node_subset(n, subset), "opposite_face: invalid node subset");
  std::vector<int> flipped;
  for (auto it = subset.rbegin(); it != subset.rend(); ++it) flipped.push_back(n - *it);
  return flipped;
}

chart::PartialFlag opposite_flag(const chart::PartialFlag& flag) { return flag.opposite(); }

}  // namespace slcorners::faces
