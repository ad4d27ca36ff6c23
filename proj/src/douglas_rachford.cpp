#include "mrsc/douglas_rachford.hpp"

#include <stdexcept>
#include <string>

namespace mrsc {

DrState dr_iterate(const DrState& state, const ResolventPair& pair,
                   const DrOptions& options) {
  const Signal& x = state.x;
  const Signal jd = pair.resolvent_D(x);

  Signal reflected = scale(jd, 2.0);
  axpy(-1.0, x, reflected);  // R_D x = 2 J_D x - x
  const Signal jb = pair.resolvent_B(reflected);

  Signal next = jb;
  axpy(1.0, x, next);
  axpy(-1.0, jd, next);  // J_B(R_D x) + x - J_D x

  if (options.check_reflector_form) {
    Signal rb = scale(jb, 2.0);
    axpy(-1.0, reflected, rb);       // R_B R_D x
    Signal half = add(rb, x);
    scale_in_place(half, 0.5);       // (R_B R_D + Id)/2
    const double gap = norm_diff(half, next);
    if (gap > options.check_tol) {
      throw std::logic_error("dr_iterate: resolvent and reflector forms disagree by " +
                             std::to_string(gap));
    }
  }

  return DrState{std::move(next), state.eta};
}

ResolventFn make_line_projector(const Signal& direction, const Signal& point) {
  const double dd = dot(direction, direction);
  if (dd == 0.0) {
    throw std::invalid_argument("make_line_projector: zero direction");
  }
  const Signal dir = direction;
  const Signal anchor = point;
  return [dir, anchor, dd](const Signal& x) {
    Signal rel = sub(x, anchor);
    const double t = dot(rel, dir) / dd;
    Signal out = anchor;
    axpy(t, dir, out);
    return out;
  };
}

}  // namespace mrsc
