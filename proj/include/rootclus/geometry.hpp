// Axis-aligned dyadic boxes and discs in the complex plane, with the exact
// predicates the subdivision driver needs (dilation, containing disc,
// box/disc and disc/disc intersection). Everything here is exact dyadic
// arithmetic; no rounding.
#pragma once

#include <cstdint>

#include "rootclus/dyadic.hpp"

namespace rootclus {

struct Disc {
  Dyadic cx, cy;
  Dyadic radius;  // > 0

  // same-center dilation k*Disc
  Disc dilated_ui(unsigned long k) const { return Disc{cx, cy, radius.mul_ui(k)}; }
};

struct Box {
  Dyadic cx, cy;
  Dyadic width;  // > 0
  std::int64_t depth = 0;

  Dyadic half() const { return width.mul_2exp(-1); }
  Dyadic xmin() const { return cx - half(); }
  Dyadic xmax() const { return cx + half(); }
  Dyadic ymin() const { return cy - half(); }
  Dyadic ymax() const { return cy + half(); }
};

// Disc covering a box: radius 3/4 of the box width, same center. The children
// of a split box have discs that still cover the parent box with overlap.
inline Disc containing_disc(const Box& b) {
  return Disc{b.cx, b.cy, b.width.mul_ui(3).mul_2exp(-2)};
}

// squared euclidean distance from a point to a (closed) box, exact
inline Dyadic box_point_dist2(const Box& b, const Dyadic& px, const Dyadic& py) {
  Dyadic dx, dy;
  if (px < b.xmin()) {
    dx = b.xmin() - px;
  } else if (px > b.xmax()) {
    dx = px - b.xmax();
  }
  if (py < b.ymin()) {
    dy = b.ymin() - py;
  } else if (py > b.ymax()) {
    dy = py - b.ymax();
  }
  return dx * dx + dy * dy;
}

// closed-set intersection tests
inline bool intersects(const Disc& d, const Box& b) {
  return box_point_dist2(b, d.cx, d.cy) <= d.radius * d.radius;
}

inline bool intersects(const Disc& a, const Disc& b) {
  Dyadic dx = a.cx - b.cx, dy = a.cy - b.cy;
  Dyadic s = a.radius + b.radius;
  return dx * dx + dy * dy <= s * s;
}

inline bool disc_inside_box(const Disc& d, const Box& b) {
  return d.cx - d.radius >= b.xmin() && d.cx + d.radius <= b.xmax() &&
         d.cy - d.radius >= b.ymin() && d.cy + d.radius <= b.ymax();
}

inline bool point_in_disc(const Disc& d, const Dyadic& px, const Dyadic& py) {
  Dyadic dx = px - d.cx, dy = py - d.cy;
  return dx * dx + dy * dy <= d.radius * d.radius;
}

}  // namespace rootclus
