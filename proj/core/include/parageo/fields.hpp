#pragma once

// Runtime-polymorphic fields on a chart domain, evaluable at every level of
// the jet tower (double, Jet2, Jet2b, Jet2c).  Concrete fields implement one
// generic eval_impl<T>; the CRTP adapters generate the virtual overrides.

#include <algorithm>
#include <memory>
#include <vector>

#include "parageo/jet.hpp"
#include "parageo/linalg.hpp"

namespace parageo {

enum class DerivMode { jets, fd };

struct DerivCtx {
  DerivMode mode = DerivMode::jets;
  double h = 2e-3;          // fd base step
  double fd_err = 0.0;      // accumulated fd error estimate (max over calls)
  void absorb(double e) { fd_err = std::max(fd_err, e); }
};

// axis-aligned sampling domain of a chart
struct Box {
  VecN<double, 4> lo{}, hi{};
  int dim = 0;
};

// uniform lattice, endpoints pulled inward by `margin` (fraction of range)
inline std::vector<VecN<double, 4>> lattice(const Box& b,
                                            const std::array<int, 4>& counts,
                                            double margin = 0.12) {
  std::vector<VecN<double, 4>> pts;
  std::array<int, 4> c{1, 1, 1, 1};
  for (int i = 0; i < b.dim; ++i) c[i] = std::max(1, counts[i]);
  for (int i0 = 0; i0 < c[0]; ++i0)
    for (int i1 = 0; i1 < c[1]; ++i1)
      for (int i2 = 0; i2 < c[2]; ++i2)
        for (int i3 = 0; i3 < c[3]; ++i3) {
          const std::array<int, 4> idx{i0, i1, i2, i3};
          VecN<double, 4> p(b.dim);
          for (int a = 0; a < b.dim; ++a) {
            const double s =
                c[a] == 1 ? 0.5
                          : margin + (1.0 - 2.0 * margin) * idx[a] / (c[a] - 1);
            p[a] = b.lo[a] + s * (b.hi[a] - b.lo[a]);
          }
          pts.push_back(p);
        }
  return pts;
}

#define PARAGEO_FIELD_DISPATCH(OUT_T)                                        \
  virtual void eval_d(const VecN<double, 4>&, OUT_T<double>&) const = 0;     \
  virtual void eval_j(const VecN<Jet2, 4>&, OUT_T<Jet2>&) const = 0;         \
  virtual void eval_jb(const VecN<Jet2b, 4>&, OUT_T<Jet2b>&) const = 0;      \
  virtual void eval_jc(const VecN<Jet2c, 4>&, OUT_T<Jet2c>&) const = 0;

template <class T>
using Mat4T = MatN<T, 4>;
template <class T>
using Vec4T = VecN<T, 4>;

// symmetric metric g_ij on an n-dimensional chart (n = 3 or 4 here)
class MetricField {
 public:
  virtual ~MetricField() = default;
  virtual int dim() const = 0;
  virtual Box domain() const = 0;
  PARAGEO_FIELD_DISPATCH(Mat4T)
};

// endomorphism field with components P^i_j (first index row)
class EndoField {
 public:
  virtual ~EndoField() = default;
  virtual int dim() const = 0;
  PARAGEO_FIELD_DISPATCH(Mat4T)
};

// immersion of a 3-dimensional chart into a 4-dimensional chart
class Immersion {
 public:
  virtual ~Immersion() = default;
  virtual Box domain() const = 0;  // 3d parameter box
  PARAGEO_FIELD_DISPATCH(Vec4T)
};

#undef PARAGEO_FIELD_DISPATCH

#define PARAGEO_FIELD_CRTP(BASE, OUT_T)                                     \
  template <class D>                                                        \
  class BASE##CRTP : public BASE {                                          \
   public:                                                                  \
    void eval_d(const VecN<double, 4>& x, OUT_T<double>& o) const override {\
      self()->template eval_impl<double>(x, o);                             \
    }                                                                       \
    void eval_j(const VecN<Jet2, 4>& x, OUT_T<Jet2>& o) const override {    \
      self()->template eval_impl<Jet2>(x, o);                               \
    }                                                                       \
    void eval_jb(const VecN<Jet2b, 4>& x, OUT_T<Jet2b>& o) const override { \
      self()->template eval_impl<Jet2b>(x, o);                              \
    }                                                                       \
    void eval_jc(const VecN<Jet2c, 4>& x, OUT_T<Jet2c>& o) const override { \
      self()->template eval_impl<Jet2c>(x, o);                              \
    }                                                                       \
                                                                            \
   private:                                                                 \
    const D* self() const { return static_cast<const D*>(this); }           \
  };

PARAGEO_FIELD_CRTP(MetricField, Mat4T)
PARAGEO_FIELD_CRTP(EndoField, Mat4T)
PARAGEO_FIELD_CRTP(Immersion, Vec4T)

#undef PARAGEO_FIELD_CRTP

// scalar-level dispatch
template <class T, class Field, class Out>
void eval_field(const Field& f, const VecN<T, 4>& x, Out& out) {
  if constexpr (std::is_same_v<T, double>)
    f.eval_d(x, out);
  else if constexpr (std::is_same_v<T, Jet2>)
    f.eval_j(x, out);
  else if constexpr (std::is_same_v<T, Jet2b>)
    f.eval_jb(x, out);
  else
    f.eval_jc(x, out);
}

// lift chart coordinates to jet variables one layer up
template <class T>
VecN<lift_t<T>, 4> lift_vars(const VecN<T, 4>& x, int arity) {
  VecN<lift_t<T>, 4> r(x.n);
  for (int i = 0; i < x.n; ++i)
    r[i] = i < arity ? jet_var<lift_t<T>>(x[i], i, arity)
                     : lift_t<T>(x[i]);
  return r;
}

}  // namespace parageo
