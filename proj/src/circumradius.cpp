#include "circum/circumradius.hpp"

namespace circum {

TriangleSides sides_between(const NormSpec& spec, const VectorRef& u,
                            const VectorRef& v, const VectorRef& w) {
  return {dist(spec, u, v), dist(spec, v, w), dist(spec, w, u)};
}

ExtendedRadius circumradius_points(const NormSpec& spec, const VectorRef& u,
                                   const VectorRef& v, const VectorRef& w,
                                   const CircumradiusOptions& opts) {
  return circumradius(sides_between(spec, u, v, w), opts);
}

}  // namespace circum
