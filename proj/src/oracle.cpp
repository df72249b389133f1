#include "slicelab/oracle.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace slicelab {

double difference_function(const GeneratingFamily& f, double level, double x1, double x2,
                           double x2_other) {
  return f.value({x1, x2}) - f.value({x1, x2_other}) - level * (x2 - x2_other);
}

namespace {

struct Jet {
  Eigen::Vector3d grad;
  Eigen::Matrix3d hess;
};

Jet jet(const GeneratingFamily& f, double level, const Eigen::Vector3d& z) {
  const Vec2 p{z[0], z[1]}, q{z[0], z[2]};
  const Vec2 gp = f.gradient(p), gq = f.gradient(q);
  const SecondPartials hp = f.hessian(p), hq = f.hessian(q);
  Jet j;
  j.grad << gp.x - gq.x, gp.y - level, -gq.y + level;
  j.hess << hp.f11 - hq.f11, hp.f12, -hq.f12,
            hp.f12, hp.f22, 0.0,
            -hq.f12, 0.0, -hq.f22;
  return j;
}

OraclePoint refine(const GeneratingFamily& f, double level, Eigen::Vector3d z, double scale) {
  OraclePoint out;
  for (int it = 0; it < 60; ++it) {
    const Jet j = jet(f, level, z);
    const Eigen::Vector3d step = j.hess.fullPivLu().solve(-j.grad);
    if (!step.allFinite()) throw OracleError("singular Hessian during Newton refinement");
    z += step;
    out.iterations = it + 1;
    if (step.norm() < 1e-13 * std::max(1.0, z.norm())) break;
    if (step.norm() > 10.0 * scale) throw OracleError("Newton refinement diverged");
  }
  const Jet j = jet(f, level, z);
  if (j.grad.norm() > 1e-8) throw OracleError("Newton refinement did not converge");
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(j.hess);
  out.x1 = z[0];
  out.x2 = z[1];
  out.x2_other = z[2];
  out.value = difference_function(f, level, z[0], z[1], z[2]);
  out.min_abs_eigenvalue = eig.eigenvalues().cwiseAbs().minCoeff();
  for (int k = 0; k < 3; ++k) out.index += eig.eigenvalues()[k] < 0.0;
  return out;
}

}  // namespace

OracleResult hessian_oracle(const GeneratingFamily& family, const SliceResult& slice,
                            std::size_t crossing) {
  const SliceDiagram& d = slice.diagram;
  if (crossing >= d.crossings().size()) throw InvalidInput("crossing index out of range");
  const Crossing& x = d.crossings()[crossing];
  std::array<double, 2> lift{};
  for (int s = 0; s < 2; ++s) {
    const auto& ref = x.strands[s];
    lift[s] = d.components()[ref.component].lift_at(ref.segment, ref.t);
  }
  OracleResult out;
  const double scale = std::hypot(family.support().width(), family.support().height());
  for (int b = 0; b < 2; ++b) {
    out.branches[b] = refine(family, slice.level, {x.point.x, lift[b], lift[1 - b]}, scale);
    out.near_singular |= out.branches[b].min_abs_eigenvalue < 1e-8;
  }
  return out;
}

}  // namespace slicelab
