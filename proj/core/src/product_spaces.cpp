#include "parageo/models/product_spaces.hpp"

namespace parageo {

namespace {
void factor_box(Surf2 kind, double& lo0, double& hi0, double& lo1,
                double& hi1) {
  switch (kind) {
    case Surf2::sphere:  // keep away from the axis poles
      lo0 = 0.35;
      hi0 = 2.7915926535897931;
      lo1 = -2.6;
      hi1 = 2.6;
      break;
    case Surf2::hyperbolic:  // r = 0 is the chart's coordinate singularity
      lo0 = 0.25;
      hi0 = 1.6;
      lo1 = -2.6;
      hi1 = 2.6;
      break;
    case Surf2::flat:
      lo0 = -1.5;
      hi0 = 1.5;
      lo1 = -1.5;
      hi1 = 1.5;
      break;
  }
}
}  // namespace

Box ProductSpace::domain() const {
  Box b;
  b.dim = 4;
  factor_box(f1_, b.lo[0], b.hi[0], b.lo[1], b.hi[1]);
  factor_box(f2_, b.lo[2], b.hi[2], b.lo[3], b.hi[3]);
  return b;
}

}  // namespace parageo
