// Subdivision driver: quadtree refinement of the initial box, 8-connected
// component grouping, cluster validation against the naturality condition
// #f(D) = #f(3D), epsilon / escape-bound stopping, and run statistics.
#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <map>
#include <optional>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "rootclus/pellet.hpp"

namespace rootclus {

class MaxDepthError : public std::runtime_error {
 public:
  explicit MaxDepthError(const std::string& what) : std::runtime_error(what) {}
};

struct Cluster {
  Disc disc;
  int multiplicity = 0;
};

inline mpq_class pow2_q(long e) {
  mpq_class q;
  if (e >= 0) {
    mpz_ui_pow_ui(q.get_num().get_mpz_t(), 2, static_cast<unsigned long>(e));
  } else {
    mpz_ui_pow_ui(q.get_den().get_mpz_t(), 2, static_cast<unsigned long>(-e));
  }
  return q;
}

struct Config {
  Strategy strategy = Strategy::V4;
  mpq_class epsilon = pow2_q(-53);
  Box initial_box;
  std::int64_t max_depth = -1;  // < 0: derived from epsilon and box width
  int threads = 1;
  bool record_trace = false;
};

struct RunStats {
  TestCounters counters;
  std::int64_t tree_depth = 0;
  std::int64_t tree_size = 0;  // boxes created, initial box included
  std::int64_t clusters = 0;
  std::int64_t total_multiplicity = 0;
};

struct SubdivisionTrace {
  std::vector<Box> boxes;  // creation order; [0] is the initial box
};

// Edge-or-corner-connected set of same-depth boxes plus its containing disc.
struct Component {
  std::int64_t depth = 0;
  std::vector<Box> boxes;
  Disc disc;
  // certified total multiplicity of roots inside this component's boxes,
  // when known (inherited through sole-child subdivision chains)
  std::optional<int> known_count;
};

namespace cluster_detail {

struct DyadicPairLess {
  bool operator()(const std::pair<Dyadic, Dyadic>& a,
                  const std::pair<Dyadic, Dyadic>& b) const {
    int c = cmp(a.first, b.first);
    if (c != 0) return c < 0;
    return cmp(a.second, b.second) < 0;
  }
};

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[b] = a;
  }
};

template <typename F>
inline void parallel_for(int n, int threads, F&& fn) {
  if (threads <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::vector<std::exception_ptr> errors(n);
  int nw = std::min(threads, n);
  std::vector<std::thread> workers;
  workers.reserve(nw);
  for (int w = 0; w < nw; ++w) {
    workers.emplace_back([&] {
      while (true) {
        int i = next.fetch_add(1);
        if (i >= n) break;
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
          failed.store(true);
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  if (failed.load()) {
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
}

}  // namespace cluster_detail

// Partition same-depth, non-overlapping boxes into maximal 8-connected
// components; each gets the containing disc of its bounding square.
inline std::vector<Component> group_components(const std::vector<Box>& boxes) {
  std::vector<Component> out;
  if (boxes.empty()) return out;
  const Dyadic& w = boxes.front().width;
  std::map<std::pair<Dyadic, Dyadic>, int, cluster_detail::DyadicPairLess> index;
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    index.emplace(std::make_pair(boxes[i].cx, boxes[i].cy), static_cast<int>(i));
  }
  cluster_detail::UnionFind uf(static_cast<int>(boxes.size()));
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    for (int dx = -1; dx <= 1; ++dx) {
      for (int dy = -1; dy <= 1; ++dy) {
        if (dx == 0 && dy == 0) continue;
        Dyadic nx = dx == 0 ? boxes[i].cx : (dx > 0 ? boxes[i].cx + w : boxes[i].cx - w);
        Dyadic ny = dy == 0 ? boxes[i].cy : (dy > 0 ? boxes[i].cy + w : boxes[i].cy - w);
        auto it = index.find(std::make_pair(nx, ny));
        if (it != index.end()) uf.unite(static_cast<int>(i), it->second);
      }
    }
  }
  std::map<int, std::vector<Box>> groups;
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    groups[uf.find(static_cast<int>(i))].push_back(boxes[i]);
  }
  for (auto& [root, group] : groups) {
    Component c;
    c.depth = group.front().depth;
    std::sort(group.begin(), group.end(), [](const Box& a, const Box& b) {
      int v = cmp(a.cx, b.cx);
      if (v != 0) return v < 0;
      return cmp(a.cy, b.cy) < 0;
    });
    Dyadic minx = group.front().cx, maxx = group.front().cx;
    Dyadic miny = group.front().cy, maxy = group.front().cy;
    for (const Box& b : group) {
      if (b.cx < minx) minx = b.cx;
      if (b.cx > maxx) maxx = b.cx;
      if (b.cy < miny) miny = b.cy;
      if (b.cy > maxy) maxy = b.cy;
    }
    Dyadic side = max(maxx - minx, maxy - miny) + w;
    c.disc.cx = (minx + maxx).mul_2exp(-1);
    c.disc.cy = (miny + maxy).mul_2exp(-1);
    c.disc.radius = side.mul_ui(3).mul_2exp(-2);
    c.boxes = std::move(group);
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const Component& a, const Component& b) {
    int v = cmp(a.disc.cx, b.disc.cx);
    if (v != 0) return v < 0;
    return cmp(a.disc.cy, b.disc.cy) < 0;
  });
  return out;
}

// Candidate criterion: 4*disc(C) intersects no box of any other active
// component and no emitted cluster disc.
inline bool component_separated(const std::vector<Component>& comps, std::size_t self,
                                const std::vector<Cluster>& emitted) {
  Disc big = comps[self].disc.dilated_ui(4);
  for (std::size_t j = 0; j < comps.size(); ++j) {
    if (j == self) continue;
    if (!intersects(big, comps[j].disc)) continue;  // disc covers all its boxes
    for (const Box& b : comps[j].boxes) {
      if (intersects(big, b)) return false;
    }
  }
  for (const Cluster& cl : emitted) {
    if (intersects(big, cl.disc)) return false;
  }
  return true;
}

struct ValidationResult {
  std::optional<Cluster> cluster;
  int m = -1;   // #f(disc)
  int m3 = -1;  // #f(3*disc)
};

// Validation of a candidate: two counting tests certify the naturality
// condition; emission additionally requires radius <= epsilon, or m = 1 under
// the escape-bound strategy.
inline ValidationResult validate_component(const CoeffOracle& f, const Component& C,
                                           const Config& cfg, TestCounters& ctr) {
  int d = f.degree();
  ValidationResult res;
  res.m = counting_test(f, C.disc, d, ctr);
  res.m3 = counting_test(f, C.disc.dilated_ui(3), d, ctr);
  if (res.m == res.m3 && res.m >= 1) {
    bool small = C.disc.radius.to_mpq() <= cfg.epsilon;
    bool escape = cfg.strategy == Strategy::V4e && res.m == 1;
    if (small || escape) res.cluster = Cluster{C.disc, res.m};
  }
  return res;
}

// Split every box of C into 4 half-width children and keep those whose
// containing disc survives the exclusion test.
inline std::vector<Box> split_and_test(const CoeffOracle& f, const Component& C,
                                       Strategy strategy, TestCounters& ctr,
                                       std::vector<Box>* created = nullptr) {
  std::vector<Box> survivors;
  for (const Box& b : C.boxes) {
    Dyadic w2 = b.width.mul_2exp(-1);
    Dyadic q = w2.mul_2exp(-1);
    const Dyadic xs[2] = {b.cx - q, b.cx + q};
    const Dyadic ys[2] = {b.cy - q, b.cy + q};
    for (int iy = 0; iy < 2; ++iy) {
      for (int ix = 0; ix < 2; ++ix) {
        Box child{xs[ix], ys[iy], w2, b.depth + 1};
        if (created) created->push_back(child);
        ExclusionResult r = exclusion_test(f, containing_disc(child), strategy, ctr);
        if (!r.exclude) survivors.push_back(child);
      }
    }
  }
  return survivors;
}

struct ProcessOutcome {
  bool candidate = false;
  std::vector<Box> children;
};

// One subdivision step for a component: mark it candidate when separated,
// otherwise split and test its children.
inline ProcessOutcome process_component(const CoeffOracle& f, const std::vector<Component>& comps,
                                        std::size_t self, const std::vector<Cluster>& emitted,
                                        const Config& cfg, TestCounters& ctr) {
  ProcessOutcome out;
  if (component_separated(comps, self, emitted)) {
    out.candidate = true;
    return out;
  }
  out.children = split_and_test(f, comps[self], cfg.strategy, ctr);
  return out;
}

struct ClusterOutput {
  std::vector<Cluster> clusters;
  RunStats stats;
  SubdivisionTrace trace;
};

namespace cluster_detail {

inline std::int64_t ceil_log2_q(const mpq_class& q) {
  // smallest e with q <= 2^e, for q > 0
  std::int64_t nb = static_cast<std::int64_t>(mpz_sizeinbase(q.get_num().get_mpz_t(), 2));
  std::int64_t db = static_cast<std::int64_t>(mpz_sizeinbase(q.get_den().get_mpz_t(), 2));
  return nb - db + 1;
}

inline std::int64_t default_max_depth(const Config& cfg) {
  std::int64_t eps_bits = std::max<std::int64_t>(53, -ceil_log2_q(cfg.epsilon) + 1);
  const Dyadic& w = cfg.initial_box.width;
  std::int64_t wlog = w.mantissa() == 1 ? w.mag2() - 1 : w.mag2();
  return eps_bits + std::max<std::int64_t>(0, wlog) + 64;
}

}  // namespace cluster_detail

// Breadth-first subdivision of the initial box. Emits pairwise-disjoint
// cluster discs whose multiplicities satisfy #f(D) = #f(3D), covering every
// root of the box (discs may extend outside it, and then count roots beyond
// it too). Deterministic: clusters ordered by (center re, center im).
inline ClusterOutput cluster_roots(const CoeffOracle& f, const Config& cfg) {
  if (f.degree() < 1) throw std::invalid_argument("cluster_roots: degree >= 1 required");
  if (cfg.epsilon <= 0) throw std::invalid_argument("cluster_roots: epsilon > 0 required");
  if (cfg.initial_box.width.sign() <= 0) {
    throw std::invalid_argument("cluster_roots: box width > 0 required");
  }
  const int d = f.degree();
  const std::int64_t max_depth =
      cfg.max_depth >= 0 ? cfg.max_depth : cluster_detail::default_max_depth(cfg);

  ClusterOutput out;
  Box b0 = cfg.initial_box;
  b0.depth = 0;
  out.stats.tree_size = 1;
  if (cfg.record_trace) out.trace.boxes.push_back(b0);

  std::vector<Component> comps = group_components({b0});
  std::vector<Cluster> clusters;
  std::int64_t depth = 0;

  while (!comps.empty()) {
    if (depth > max_depth) {
      throw MaxDepthError("subdivision exceeded depth " + std::to_string(max_depth) +
                          "; suspected boundary-degenerate input");
    }
    const int n = static_cast<int>(comps.size());

    // --- candidate detection and validation ---
    std::vector<char> cand(n, 0);
    for (int i = 0; i < n; ++i) {
      cand[i] = component_separated(comps, static_cast<std::size_t>(i), clusters) ? 1 : 0;
    }
    std::vector<char> run_validation(n, 0);
    for (int i = 0; i < n; ++i) {
      if (!cand[i]) continue;
      bool small = comps[i].disc.radius.to_mpq() <= cfg.epsilon;
      if (small) {
        run_validation[i] = 1;
      } else if (cfg.strategy == Strategy::V4e) {
        // escape bound: only a simple root can be emitted early, so a
        // component certified to hold several roots skips the re-validation
        if (!(comps[i].known_count && *comps[i].known_count > 1)) run_validation[i] = 1;
      }
    }
    std::vector<ValidationResult> vres(n);
    std::vector<TestCounters> vctr(n);
    cluster_detail::parallel_for(n, cfg.threads, [&](int i) {
      if (run_validation[i]) vres[i] = validate_component(f, comps[i], cfg, vctr[i]);
    });
    for (int i = 0; i < n; ++i) out.stats.counters.merge(vctr[i]);

    std::vector<Component> remaining;
    remaining.reserve(n);
    std::size_t emitted_before = clusters.size();
    for (int i = 0; i < n; ++i) {
      bool emit = false;
      if (run_validation[i] && vres[i].cluster) {
        emit = true;
        // candidacy was checked against the pre-round cluster set; re-check
        // against discs emitted earlier in this round
        for (std::size_t e = emitted_before; e < clusters.size() && emit; ++e) {
          if (intersects(comps[i].disc.dilated_ui(4), clusters[e].disc)) emit = false;
        }
      }
      if (emit) {
        clusters.push_back(*vres[i].cluster);
      } else {
        // a separated interior component whose disc count is certified knows
        // the multiplicity carried by its boxes
        if (run_validation[i] && cand[i] && vres[i].m >= 0 &&
            disc_inside_box(comps[i].disc, b0)) {
          comps[i].known_count = vres[i].m;
        }
        remaining.push_back(std::move(comps[i]));
      }
    }

    // --- subdivision ---
    const int nr = static_cast<int>(remaining.size());
    std::vector<std::vector<Box>> survivors(nr);
    std::vector<std::vector<Box>> created(nr);
    std::vector<TestCounters> sctr(nr);
    cluster_detail::parallel_for(nr, cfg.threads, [&](int i) {
      survivors[i] = split_and_test(f, remaining[i], cfg.strategy, sctr[i],
                                    cfg.record_trace ? &created[i] : nullptr);
    });
    std::vector<Box> all_children;
    std::vector<int> parent_of;  // aligned with all_children
    for (int i = 0; i < nr; ++i) {
      out.stats.counters.merge(sctr[i]);
      out.stats.tree_size += 4 * static_cast<std::int64_t>(remaining[i].boxes.size());
      if (cfg.record_trace) {
        out.trace.boxes.insert(out.trace.boxes.end(), created[i].begin(), created[i].end());
      }
      for (const Box& b : survivors[i]) {
        all_children.push_back(b);
        parent_of.push_back(i);
      }
    }
    if (nr > 0) out.stats.tree_depth = std::max(out.stats.tree_depth, depth + 1);

    std::vector<Component> next = group_components(all_children);
    // sole-child count inheritance: when a new component holds exactly the
    // surviving children of one parent, the parent's certified box
    // multiplicity carries over (discarded children were root-free)
    if (!next.empty()) {
      std::map<std::pair<Dyadic, Dyadic>, int, cluster_detail::DyadicPairLess> box_parent;
      for (std::size_t bi = 0; bi < all_children.size(); ++bi) {
        box_parent.emplace(std::make_pair(all_children[bi].cx, all_children[bi].cy),
                           parent_of[bi]);
      }
      for (auto& comp : next) {
        int parent = -1;
        bool sole = true;
        for (const Box& b : comp.boxes) {
          int p = box_parent.at(std::make_pair(b.cx, b.cy));
          if (parent == -1) parent = p;
          if (parent != p) {
            sole = false;
            break;
          }
        }
        if (sole && parent >= 0 && comp.boxes.size() == survivors[parent].size() &&
            remaining[parent].known_count) {
          comp.known_count = remaining[parent].known_count;
        }
      }
    }
    comps = std::move(next);
    depth += 1;
  }

  std::sort(clusters.begin(), clusters.end(), [](const Cluster& a, const Cluster& b) {
    int v = cmp(a.disc.cx, b.disc.cx);
    if (v != 0) return v < 0;
    return cmp(a.disc.cy, b.disc.cy) < 0;
  });
  out.clusters = std::move(clusters);
  out.stats.clusters = static_cast<std::int64_t>(out.clusters.size());
  for (const Cluster& c : out.clusters) out.stats.total_multiplicity += c.multiplicity;
  return out;
}

}  // namespace rootclus
