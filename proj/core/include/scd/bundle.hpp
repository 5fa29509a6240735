#pragma once

#include <vector>

#include <Eigen/Dense>

#include "scd/subspace.hpp"

namespace scd {

// Which graphical-derivative object a bundle approximates: the primal
// subspaces or their adjoints. For the normal cone of a convex polyhedral
// set the two collections coincide member by member.
enum class BundleFlavor { Primal, Dual };

struct BundleMember {
  Subspace subspace;
  // Inequality rows of the critical cone forced to equality on the
  // generating face; empty when the member is not face-derived.
  std::vector<int> face_active;
  // Dimension of the generating face's span, -1 when not face-derived.
  int face_dim = -1;
};

// A finite family of candidate derivative subspaces attached to one point
// of the graph of a set-valued map. Members are pairwise distinct.
struct DerivativeBundle {
  BundleFlavor flavor = BundleFlavor::Dual;
  std::vector<BundleMember> members;
  // Graph point the bundle was computed at; empty until a generalized
  // equation attaches one.
  Eigen::VectorXd point_x;
  Eigen::VectorXd point_y;
};

}  // namespace scd
