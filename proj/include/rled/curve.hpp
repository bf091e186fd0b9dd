#pragma once

// Piecewise-linear functions with gradients in {-1, 0, +1}, stored as a
// sequence of segments in a treap with three kinds of lazily propagated
// updates: sliding-window minimum (applied first), gradient change
// (second) and shift (last).
//
// Conventions used throughout this header:
//   * Every x and y coordinate is stored doubled, so half-integer turning
//     points (which SWM produces) stay exact in signed 64-bit integers.
//   * SWM window widths are in plain (undoubled) x units.
//   * Turning points are typed by the gradients of their incident segments
//     (Decreasing / Flat / Increasing); each segment stores the gradients
//     of its two neighbours, so both segments incident to a turning point
//     know its type. A DI turning point (a sharp valley) is never stored:
//     joins replace it by DF + a length-0 flat segment + FI.
//   * Curves are single-use values: every operation consumes its inputs
//     and returns fresh handles.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <utility>
#include <vector>

#include "rled/errors.hpp"
#include "rled/random_instance.hpp"

#define RLED_CHECK(cond)                                                      \
    (static_cast<bool>(cond)                                                  \
         ? void(0)                                                            \
         : ::rled::detail::check_failed(#cond, __FILE__, __LINE__))

namespace rled {

struct CurveStats {
    std::uint64_t ops = 0;                 // public curve operations
    std::uint64_t segments_created = 0;
    std::uint64_t segments_discarded = 0;  // dropped by combine/join/split
    std::uint64_t segments_collapsed = 0;  // removed by SWM collapses

    void reset() { *this = CurveStats{}; }
};

inline CurveStats& curve_stats() {
    thread_local CurveStats stats;
    return stats;
}

namespace detail {

[[noreturn]] inline void check_failed(const char* cond, const char* file, int line) {
    throw InvariantError(std::string("invariant violated: ") + cond + " at " +
                         file + ":" + std::to_string(line));
}

inline constexpr std::int64_t kInfCollapse = std::numeric_limits<std::int64_t>::max();
inline constexpr std::int8_t kNoGrad = 2;  // open side of a curve endpoint

inline constexpr std::uint8_t kDecBit = 1;
inline constexpr std::uint8_t kFlatBit = 2;
inline constexpr std::uint8_t kIncBit = 4;

inline std::uint8_t grad_bit(std::int8_t g) {
    return static_cast<std::uint8_t>(1u << (g + 1));
}

struct Node {
    // Segment endpoints, doubled coordinates.
    std::int64_t xl, yl, xr, yr;
    // Deferred updates, in application order: SWM, gradient change, shift.
    std::int64_t swm_w = 0;           // plain x units, >= 0
    std::int64_t dx = 0, dy = 0;      // doubled
    // Subtree aggregates; valid whenever the node is quiescent, and already
    // reflect the node's own deferred updates.
    std::int64_t min_collapse = kInfCollapse;
    std::int64_t size = 1;
    std::uint64_t prio;
    Node* left = nullptr;
    Node* right = nullptr;
    std::int8_t grad_change = 0;      // net deferred gradient change, in {-1,0,+1}
    std::int8_t grad_before;          // gradient of the preceding segment, kNoGrad at curve start
    std::int8_t grad_after;           // gradient of the following segment, kNoGrad at curve end
    std::uint8_t grad_mask;           // gradients present in the subtree
};

inline std::uint64_t next_prio() {
    thread_local SplitMix64 rng(0x1d2e3f4a5b6c7d8eULL);
    return rng.next();
}

inline std::int8_t own_grad(const Node* v) {
    std::int64_t dx = v->xr - v->xl, dy = v->yr - v->yl;
    RLED_CHECK(dx >= 0 && (dy == 0 || dy == dx || dy == -dx));
    if (dy == 0) return 0;
    return dy > 0 ? 1 : -1;
}

inline Node* make_node(std::int64_t xl, std::int64_t yl, std::int64_t xr,
                       std::int64_t yr, std::int8_t before, std::int8_t after) {
    Node* n = new Node;
    n->xl = xl;
    n->yl = yl;
    n->xr = xr;
    n->yr = yr;
    n->prio = next_prio();
    n->grad_before = before;
    n->grad_after = after;
    n->grad_mask = grad_bit(own_grad(n));
    curve_stats().segments_created += 1;
    return n;
}

inline void free_tree(Node* v) {
    if (!v) return;
    free_tree(v->left);
    free_tree(v->right);
    delete v;
}

inline std::int64_t count_and_free(Node* v) {
    if (!v) return 0;
    std::int64_t c = 1 + count_and_free(v->left) + count_and_free(v->right);
    delete v;
    return c;
}

inline void discard_tree(Node* v) {
    curve_stats().segments_discarded +=
        static_cast<std::uint64_t>(count_and_free(v));
}

inline std::int64_t tree_size(const Node* v) { return v ? v->size : 0; }
inline std::int64_t tree_min_collapse(const Node* v) {
    return v ? v->min_collapse : kInfCollapse;
}
inline std::uint8_t tree_mask(const Node* v) { return v ? v->grad_mask : 0; }

// Movement of a turning point per unit window width (doubled coordinates).
// `a` and `b` are the gradients incident on the left and right; kNoGrad
// marks a curve endpoint. FD/DF points and left endpoints stay put, FI/IF
// points and right endpoints move right, ID points slide down the diagonal.
struct Motion {
    std::int64_t dx, dy;
};

inline Motion swm_motion(std::int8_t a, std::int8_t b) {
    if (a == kNoGrad) {
        RLED_CHECK(b != 1);  // a -I endpoint must have been substituted
        return {0, 0};
    }
    if (b == kNoGrad) {
        RLED_CHECK(a != -1);  // a D- endpoint must have been substituted
        return {2, 0};
    }
    if ((a == 0 && b == 1) || (a == 1 && b == 0)) return {2, 0};   // FI, IF
    if (a == 1 && b == -1) return {1, -1};                         // ID
    if ((a == 0 && b == -1) || (a == -1 && b == 0)) return {0, 0}; // FD, DF
    // DI or equal incident gradients: never stored
    check_failed("swm_motion: illegal turning point type", __FILE__, __LINE__);
}

// Collapse time of a segment, in window-width units: the Manhattan distance
// between its endpoints for the three collapsible kinds (ID--DF, IF--FD,
// FI--ID), infinite otherwise. For valid trees the neighbour-gradient pair
// identifies the kind even once the segment has shrunk to length zero.
inline std::int64_t own_collapse(const Node* v) {
    std::int8_t b = v->grad_before, a = v->grad_after;
    bool collapsible = (b == 1 && a == 0) ||   // ID--DF
                       (b == 1 && a == -1) ||  // IF--FD
                       (b == 0 && a == -1);    // FI--ID
    if (!collapsible) return kInfCollapse;
    std::int64_t manhattan2 = (v->xr - v->xl) + std::llabs(v->yr - v->yl);
    RLED_CHECK(manhattan2 % 2 == 0);
    return manhattan2 / 2;
}

inline std::uint8_t shift_mask(std::uint8_t m, std::int8_t g) {
    if (g > 0) {
        RLED_CHECK(!(m & kIncBit));
        return static_cast<std::uint8_t>((m << 1) & 7u);
    }
    if (g < 0) {
        RLED_CHECK(!(m & kDecBit));
        return static_cast<std::uint8_t>(m >> 1);
    }
    return m;
}

// --- deferred-update requests --------------------------------------------
// Compose an update into an inactive node, keeping the aggregates in sync.

inline void request_swm(Node* v, std::int64_t w) {
    if (!v || w == 0) return;
    if (v->grad_change == 0) {
        v->swm_w += w;
        if (v->min_collapse != kInfCollapse) {
            v->min_collapse -= w;  // callers never request past the known minimum
            RLED_CHECK(v->min_collapse >= 0);
        }
    } else if (v->grad_change > 0) {
        // Subtree is logically non-decreasing: the SWM reduces to a shift.
        RLED_CHECK(v->min_collapse == kInfCollapse);
        v->dx += 2 * w;
    } else {
        // Logically non-increasing: the SWM is void.
        RLED_CHECK(v->min_collapse == kInfCollapse);
    }
}

inline void request_grad(Node* v, std::int8_t g) {
    if (!v || g == 0) return;
    // A gradient change slides past a pending shift by adjusting its dy.
    v->dy += g * v->dx;
    v->grad_change = static_cast<std::int8_t>(v->grad_change + g);
    RLED_CHECK(v->grad_change >= -1 && v->grad_change <= 1);
    v->grad_mask = shift_mask(v->grad_mask, g);
    RLED_CHECK(v->min_collapse == kInfCollapse);  // monotone subtree
}

inline void request_shift(Node* v, std::int64_t dx, std::int64_t dy) {
    if (!v) return;
    v->dx += dx;
    v->dy += dy;
}

// Activation: apply the node's deferred updates to its own segment and pass
// them to the children. Accessing a node is only legal once every ancestor
// has been pushed down.
inline void push_down(Node* v) {
    if (v->swm_w != 0) {
        std::int64_t t = v->swm_w;
        request_swm(v->left, t);
        request_swm(v->right, t);
        std::int8_t g = own_grad(v);
        Motion ml = swm_motion(v->grad_before, g);
        Motion mr = swm_motion(g, v->grad_after);
        v->xl += ml.dx * t;
        v->yl += ml.dy * t;
        v->xr += mr.dx * t;
        v->yr += mr.dy * t;
        RLED_CHECK(v->xl <= v->xr);
        v->swm_w = 0;
    }
    if (v->grad_change != 0) {
        std::int8_t g = v->grad_change;
        request_grad(v->left, g);
        request_grad(v->right, g);
        v->yl += g * v->xl;
        v->yr += g * v->xr;
        if (v->grad_before != kNoGrad) {
            v->grad_before = static_cast<std::int8_t>(v->grad_before + g);
            RLED_CHECK(v->grad_before >= -1 && v->grad_before <= 1);
        }
        if (v->grad_after != kNoGrad) {
            v->grad_after = static_cast<std::int8_t>(v->grad_after + g);
            RLED_CHECK(v->grad_after >= -1 && v->grad_after <= 1);
        }
        v->grad_change = 0;
    }
    if (v->dx != 0 || v->dy != 0) {
        request_shift(v->left, v->dx, v->dy);
        request_shift(v->right, v->dx, v->dy);
        v->xl += v->dx;
        v->xr += v->dx;
        v->yl += v->dy;
        v->yr += v->dy;
        v->dx = v->dy = 0;
    }
}

// Deactivation: recompute the aggregates from the (quiescent) children.
inline void pull_up(Node* v) {
    RLED_CHECK(v->swm_w == 0 && v->grad_change == 0 && v->dx == 0 && v->dy == 0);
    v->size = 1 + tree_size(v->left) + tree_size(v->right);
    std::int64_t mc = own_collapse(v);
    mc = std::min(mc, tree_min_collapse(v->left));
    mc = std::min(mc, tree_min_collapse(v->right));
    v->min_collapse = mc;
    v->grad_mask = static_cast<std::uint8_t>(
        grad_bit(own_grad(v)) | tree_mask(v->left) | tree_mask(v->right));
}

// --- treap primitives -----------------------------------------------------

inline Node* merge_trees(Node* a, Node* b) {
    if (!a) return b;
    if (!b) return a;
    if (a->prio >= b->prio) {
        push_down(a);
        a->right = merge_trees(a->right, b);
        pull_up(a);
        return a;
    }
    push_down(b);
    b->left = merge_trees(a, b->left);
    pull_up(b);
    return b;
}

// Splits by x-coordinate: segments ending at or before x go left, segments
// starting at or after x go right, a straddling segment is cut in two, and
// a length-0 segment sitting exactly at x is dropped.
inline std::pair<Node*, Node*> split_x(Node* t, std::int64_t x) {
    if (!t) return {nullptr, nullptr};
    push_down(t);
    if (t->xl == t->xr && t->xl == x) {
        Node* l = t->left;
        Node* r = t->right;
        delete t;
        curve_stats().segments_discarded += 1;
        return {l, r};
    }
    if (x <= t->xl) {
        auto [a, b] = split_x(t->left, x);
        t->left = b;
        pull_up(t);
        return {a, t};
    }
    if (x >= t->xr) {
        auto [a, b] = split_x(t->right, x);
        t->right = a;
        pull_up(t);
        return {t, b};
    }
    // Cut the straddling segment at x.
    std::int8_t g = own_grad(t);
    std::int64_t ym = t->yl + g * (x - t->xl);
    Node* w = make_node(x, ym, t->xr, t->yr, kNoGrad, t->grad_after);
    t->xr = x;
    t->yr = ym;
    t->grad_after = kNoGrad;
    Node* r = t->right;
    t->right = nullptr;
    pull_up(t);
    return {t, merge_trees(w, r)};
}

// Splits off the first k segments.
inline std::pair<Node*, Node*> split_idx(Node* t, std::int64_t k) {
    if (!t) {
        RLED_CHECK(k == 0);
        return {nullptr, nullptr};
    }
    if (k == 0) return {nullptr, t};
    if (k == t->size) return {t, nullptr};
    push_down(t);
    if (k <= tree_size(t->left)) {
        auto [a, b] = split_idx(t->left, k);
        t->left = b;
        pull_up(t);
        return {a, t};
    }
    auto [a, b] = split_idx(t->right, k - tree_size(t->left) - 1);
    t->right = a;
    pull_up(t);
    return {t, b};
}

template <class F>
void with_leftmost(Node* v, F&& f) {
    push_down(v);
    if (v->left)
        with_leftmost(v->left, f);
    else
        f(v);
    pull_up(v);
}

template <class F>
void with_rightmost(Node* v, F&& f) {
    push_down(v);
    if (v->right)
        with_rightmost(v->right, f);
    else
        f(v);
    pull_up(v);
}

// Detaches the leftmost segment; `removed` receives the detached node.
inline Node* remove_leftmost(Node* v, Node*& removed) {
    push_down(v);
    if (!v->left) {
        removed = v;
        Node* r = v->right;
        v->right = nullptr;
        return r;
    }
    v->left = remove_leftmost(v->left, removed);
    pull_up(v);
    return v;
}

inline Node* remove_rightmost(Node* v, Node*& removed) {
    push_down(v);
    if (!v->right) {
        removed = v;
        Node* l = v->left;
        v->left = nullptr;
        return l;
    }
    v->right = remove_rightmost(v->right, removed);
    pull_up(v);
    return v;
}

// Flushes all deferred updates off the leftmost or rightmost root path, so
// that the boundary segments can be read and typed directly.
inline void flush_spine(Node* v, bool leftmost) {
    if (!v) return;
    push_down(v);
    flush_spine(leftmost ? v->left : v->right, leftmost);
    pull_up(v);
}

inline void flush_boundaries(Node* v) {
    flush_spine(v, true);
    flush_spine(v, false);
}

// Joins two trees whose in-order segment sequences meet at a shared point.
// Fixes up the junction turning point: equal gradients merge into one
// segment, a would-be DI point is replaced by DF + length-0 flat + FI, and
// a length-0 segment at the junction facing a different gradient is
// absorbed (keeping it would plant a pinned-flat segment inside a possibly
// monotone curve, where a later gradient change could not retype it).
inline Node* join_trees(Node* a, Node* b) {
    for (;;) {
        if (!a) {
            if (b) with_leftmost(b, [](Node* n) { n->grad_before = kNoGrad; });
            return b;
        }
        if (!b) {
            with_rightmost(a, [](Node* n) { n->grad_after = kNoGrad; });
            return a;
        }
        std::int64_t bxl = 0, byl = 0, bxr = 0, byr = 0;
        std::int8_t gb = 0, b_after = kNoGrad;
        with_leftmost(b, [&](Node* n) {
            bxl = n->xl;
            byl = n->yl;
            bxr = n->xr;
            byr = n->yr;
            gb = own_grad(n);
            b_after = n->grad_after;
        });
        std::int8_t ga = 0;
        bool a_zero = false;
        with_rightmost(a, [&](Node* n) {
            RLED_CHECK(n->xr == bxl && n->yr == byl);
            ga = own_grad(n);
            a_zero = (n->xl == n->xr);
        });
        if (ga == gb) {
            with_rightmost(a, [&](Node* n) {
                n->xr = bxr;
                n->yr = byr;
                n->grad_after = b_after;
            });
            Node* dead = nullptr;
            b = remove_leftmost(b, dead);
            delete dead;
            curve_stats().segments_discarded += 1;
            return merge_trees(a, b);
        }
        if (a_zero) {
            Node* dead = nullptr;
            a = remove_rightmost(a, dead);
            delete dead;
            curve_stats().segments_discarded += 1;
            continue;
        }
        if (bxl == bxr) {
            Node* dead = nullptr;
            b = remove_leftmost(b, dead);
            delete dead;
            curve_stats().segments_discarded += 1;
            continue;
        }
        if (ga == -1 && gb == 1) {  // DI replacement
            with_rightmost(a, [](Node* n) { n->grad_after = 0; });
            Node* z = make_node(bxl, byl, bxl, byl, -1, 1);
            a = merge_trees(a, z);
            with_leftmost(b, [](Node* n) { n->grad_before = 0; });
        } else {
            with_rightmost(a, [&](Node* n) { n->grad_after = gb; });
            with_leftmost(b, [&](Node* n) { n->grad_before = ga; });
        }
        return merge_trees(a, b);
    }
}

// --- read-only descent ------------------------------------------------------
// A PendingView accumulates the deferred updates met along a root-to-node
// path, letting evaluate/materialize read logical coordinates without
// touching the tree.

struct PendingView {
    std::int64_t t = 0;
    std::int8_t g = 0;
    std::int64_t dx = 0, dy = 0;
};

inline PendingView compose(const Node* v, const PendingView& above) {
    PendingView p{v->swm_w, v->grad_change, v->dx, v->dy};
    if (above.t != 0) {
        if (p.g == 0)
            p.t += above.t;
        else if (p.g > 0)
            p.dx += 2 * above.t;
        // p.g < 0: the SWM is void on a non-increasing subtree
    }
    if (above.g != 0) {
        p.dy += above.g * p.dx;
        p.g = static_cast<std::int8_t>(p.g + above.g);
    }
    p.dx += above.dx;
    p.dy += above.dy;
    return p;
}

struct Seg {
    std::int64_t xl, yl, xr, yr;
};

inline Seg apply_view(const Node* v, const PendingView& p) {
    Seg s{v->xl, v->yl, v->xr, v->yr};
    if (p.t != 0) {
        std::int8_t g = own_grad(v);
        Motion ml = swm_motion(v->grad_before, g);
        Motion mr = swm_motion(g, v->grad_after);
        s.xl += ml.dx * p.t;
        s.yl += ml.dy * p.t;
        s.xr += mr.dx * p.t;
        s.yr += mr.dy * p.t;
    }
    if (p.g != 0) {
        s.yl += p.g * s.xl;
        s.yr += p.g * s.xr;
    }
    s.xl += p.dx;
    s.xr += p.dx;
    s.yl += p.dy;
    s.yr += p.dy;
    return s;
}

inline std::int8_t seg_grad(const Seg& s) {
    std::int64_t dx = s.xr - s.xl, dy = s.yr - s.yl;
    RLED_CHECK(dx >= 0 && (dy == 0 || dy == dx || dy == -dx));
    if (dy == 0) return 0;
    return dy > 0 ? 1 : -1;
}

inline std::int64_t seg_value(const Seg& s, std::int64_t x) {
    if (s.xl == s.xr) return s.yl;
    return s.yl + seg_grad(s) * (x - s.xl);
}

inline std::int64_t eval_tree(const Node* v, std::int64_t x,
                              const PendingView& above = {}) {
    RLED_CHECK(v != nullptr);
    PendingView p = compose(v, above);
    Seg s = apply_view(v, p);
    if (x < s.xl) return eval_tree(v->left, x, p);
    if (x > s.xr) return eval_tree(v->right, x, p);
    return seg_value(s, x);
}

// One logical segment together with its neighbour gradients.
struct LogicalSegment {
    std::int64_t xl, yl, xr, yr;
    std::int8_t before, after;  // kNoGrad at the curve ends
};

inline void collect_segments(const Node* v, const PendingView& above,
                             std::vector<LogicalSegment>& out) {
    if (!v) return;
    PendingView p = compose(v, above);
    collect_segments(v->left, p, out);
    Seg s = apply_view(v, p);
    std::int8_t before = v->grad_before, after = v->grad_after;
    if (p.g != 0) {
        if (before != kNoGrad) before = static_cast<std::int8_t>(before + p.g);
        if (after != kNoGrad) after = static_cast<std::int8_t>(after + p.g);
    }
    out.push_back({s.xl, s.yl, s.xr, s.yr, before, after});
    collect_segments(v->right, p, out);
}

struct CurveAccess;

}  // namespace detail

// Handle to a piecewise-linear function. Move-only; operations consume
// their inputs. A moved-from curve is empty and must not be used again.
class Curve {
public:
    Curve() = default;
    ~Curve() { detail::free_tree(root_); }
    Curve(Curve&& o) noexcept
        : root_(std::exchange(o.root_, nullptr)), xl_(o.xl_), xr_(o.xr_) {}
    Curve& operator=(Curve&& o) noexcept {
        if (this != &o) {
            detail::free_tree(root_);
            root_ = std::exchange(o.root_, nullptr);
            xl_ = o.xl_;
            xr_ = o.xr_;
        }
        return *this;
    }
    Curve(const Curve&) = delete;
    Curve& operator=(const Curve&) = delete;

    bool valid() const { return root_ != nullptr; }
    std::int64_t x_left() const { return xl_; }    // doubled
    std::int64_t x_right() const { return xr_; }   // doubled
    std::int64_t segment_count() const { return detail::tree_size(root_); }

private:
    detail::Node* root_ = nullptr;
    std::int64_t xl_ = 0, xr_ = 0;

    friend struct detail::CurveAccess;
};

namespace detail {

struct CurveAccess {
    static Curve make(Node* root, std::int64_t xl, std::int64_t xr) {
        Curve c;
        c.root_ = root;
        c.xl_ = xl;
        c.xr_ = xr;
        return c;
    }
    static Node* release(Curve& c) {
        RLED_CHECK(c.root_ != nullptr);
        return std::exchange(c.root_, nullptr);
    }
    static Node* root(const Curve& c) { return c.root_; }
};

// Internal op bodies, shared between the public wrappers and combine/swm.

inline std::pair<Curve, Curve> split_impl(Curve f, std::int64_t x) {
    std::int64_t xl = f.x_left(), xr = f.x_right();
    if (x < xl || x > xr) throw RangeError("split: x outside the domain");
    Node* root = CurveAccess::release(f);
    if (x == xl || x == xr) {
        std::int64_t v = eval_tree(root, x);
        Node* pt = make_node(x, v, x, v, kNoGrad, kNoGrad);
        if (x == xl)
            return {CurveAccess::make(pt, x, x), CurveAccess::make(root, xl, xr)};
        return {CurveAccess::make(root, xl, xr), CurveAccess::make(pt, x, x)};
    }
    auto [a, b] = split_x(root, x);
    RLED_CHECK(a && b);
    with_rightmost(a, [](Node* n) { n->grad_after = kNoGrad; });
    with_leftmost(b, [](Node* n) { n->grad_before = kNoGrad; });
    flush_boundaries(a);
    flush_boundaries(b);
    return {CurveAccess::make(a, xl, x), CurveAccess::make(b, x, xr)};
}

inline Curve join_impl(Curve left, Curve right) {
    if (left.x_right() != right.x_left())
        throw DomainError("join: domains must abut");
    std::int64_t xm = left.x_right();
    if (eval_tree(CurveAccess::root(left), xm) !=
        eval_tree(CurveAccess::root(right), xm))
        throw DomainError("join: curves do not share the junction value");
    std::int64_t xl = left.x_left(), xr = right.x_right();
    Node* r = join_trees(CurveAccess::release(left), CurveAccess::release(right));
    flush_boundaries(r);
    return CurveAccess::make(r, xl, xr);
}

// Defined after the public operations below.
inline Node* remove_collapsed(Node* r);
inline bool find_cross_ltr(Node* v, const Node* other, Seg& out);
inline bool find_cross_rtl(Node* v, const Node* other, Seg& out);

}  // namespace detail

// --- public operations ------------------------------------------------------

// Single-segment curve with the given (doubled) endpoints.
inline Curve create(std::int64_t xl2, std::int64_t yl2, std::int64_t xr2,
                    std::int64_t yr2) {
    curve_stats().ops += 1;
    if (xr2 < xl2) throw DomainError("create: left endpoint right of right endpoint");
    std::int64_t dx = xr2 - xl2, dy = yr2 - yl2;
    if (!(dy == 0 || dy == dx || dy == -dx))
        throw InvariantError("create: gradient must be -1, 0 or +1");
    detail::Node* n =
        detail::make_node(xl2, yl2, xr2, yr2, detail::kNoGrad, detail::kNoGrad);
    return detail::CurveAccess::make(n, xl2, xr2);
}

// Concatenates two curves sharing their junction value.
inline Curve join(Curve left, Curve right) {
    curve_stats().ops += 1;
    return detail::join_impl(std::move(left), std::move(right));
}

// Cuts at x2 (doubled); both halves contain the value at x2. Splitting at a
// domain endpoint yields a length-0 curve on that side.
inline std::pair<Curve, Curve> split(Curve f, std::int64_t x2) {
    curve_stats().ops += 1;
    return detail::split_impl(std::move(f), x2);
}

// F'(x) = F(x - dx) + dy, with dx and dy doubled.
inline Curve shift(Curve f, std::int64_t dx2, std::int64_t dy2) {
    curve_stats().ops += 1;
    std::int64_t xl = f.x_left(), xr = f.x_right();
    detail::Node* r = detail::CurveAccess::release(f);
    detail::request_shift(r, dx2, dy2);
    detail::flush_boundaries(r);
    return detail::CurveAccess::make(r, xl + dx2, xr + dx2);
}

// F'(x) = F(x) + dg*x. dg = +1 needs a non-increasing curve, dg = -1 a
// non-decreasing one, so the result's gradients stay within {-1, 0, +1}.
inline Curve gradient_change(Curve f, int dg) {
    curve_stats().ops += 1;
    if (dg != 1 && dg != -1) throw DomainError("gradient_change: dg must be +-1");
    std::int64_t xl = f.x_left(), xr = f.x_right();
    detail::Node* r = detail::CurveAccess::release(f);
    std::uint8_t m = detail::tree_mask(r);
    if (dg == 1 && (m & detail::kIncBit)) {
        detail::free_tree(r);
        throw InvariantError("gradient_change(+1) requires a non-increasing curve");
    }
    if (dg == -1 && (m & detail::kDecBit)) {
        detail::free_tree(r);
        throw InvariantError("gradient_change(-1) requires a non-decreasing curve");
    }
    detail::request_grad(r, static_cast<std::int8_t>(dg));
    detail::flush_boundaries(r);
    return detail::CurveAccess::make(r, xl, xr);
}

// Sliding-window minimum with window width t (plain x units):
// F'(x) = min{ F(x') : x' in [x-t, x] ∩ dom(F) }, dom extended right by t.
inline Curve swm(Curve f, std::int64_t t) {
    curve_stats().ops += 1;
    if (t < 0) throw RangeError("swm: negative window width");
    if (t > (std::int64_t{1} << 61))
        throw RangeError("swm: window width exceeds 2^61");  // doubled arithmetic
    if (t == 0) return f;  // identity; endpoint substitution is skipped
    std::int64_t xl = f.x_left(), xr = f.x_right();
    detail::Node* r = detail::CurveAccess::release(f);

    // Endpoint substitutions: -I becomes -F + FI, D- becomes DF + F-, each
    // with an artificial length-0 flat segment.
    {
        bool need = false;
        std::int64_t px = 0, py = 0;
        detail::with_leftmost(r, [&](detail::Node* n) {
            if (detail::own_grad(n) == 1) {
                need = true;
                px = n->xl;
                py = n->yl;
                n->grad_before = 0;
            }
        });
        if (need) {
            detail::Node* z =
                detail::make_node(px, py, px, py, detail::kNoGrad, 1);
            r = detail::merge_trees(z, r);
        }
    }
    {
        bool need = false;
        std::int64_t px = 0, py = 0;
        detail::with_rightmost(r, [&](detail::Node* n) {
            if (detail::own_grad(n) == -1) {
                need = true;
                px = n->xr;
                py = n->yr;
                n->grad_after = 0;
            }
        });
        if (need) {
            detail::Node* z =
                detail::make_node(px, py, px, py, -1, detail::kNoGrad);
            r = detail::merge_trees(r, z);
        }
    }

    // Apply the window gradually: a lazy request may not exceed the minimum
    // collapse time, and collapsed segments are removed before continuing.
    std::int64_t remaining = t;
    while (remaining > 0) {
        std::int64_t step = std::min(remaining, detail::tree_min_collapse(r));
        RLED_CHECK(step > 0);
        detail::request_swm(r, step);
        detail::flush_boundaries(r);
        remaining -= step;
        while (detail::tree_min_collapse(r) == 0) r = detail::remove_collapsed(r);
    }
    detail::flush_boundaries(r);
    return detail::CurveAccess::make(r, xl, xr + 2 * t);
}

// Pointwise minimum of two curves over the same domain, assuming a single
// crossing: f1 > f2 strictly left of some x_M and f1 <= f2 from x_M on.
inline Curve combine(Curve f1, Curve f2) {
    curve_stats().ops += 1;
    if (f1.x_left() != f2.x_left() || f1.x_right() != f2.x_right())
        throw DomainError("combine: domains differ");
    std::int64_t xl = f1.x_left(), xr = f1.x_right();
    using detail::CurveAccess;

    std::int64_t a1 = detail::eval_tree(CurveAccess::root(f1), xl);
    std::int64_t a2 = detail::eval_tree(CurveAccess::root(f2), xl);
    std::int64_t b1 = detail::eval_tree(CurveAccess::root(f1), xr);
    std::int64_t b2 = detail::eval_tree(CurveAccess::root(f2), xr);
    if (a1 <= a2) {  // crossed already at xl: f1 is the minimum everywhere
        if (b1 > b2)
            throw InvariantError("combine: endpoint orientation contradicts a single crossing");
        detail::discard_tree(CurveAccess::release(f2));
        return f1;
    }
    if (b1 > b2) {  // never crosses: f2 is the minimum everywhere
        detail::discard_tree(CurveAccess::release(f1));
        return f2;
    }

    // Locate the crossing segments: the leftmost segment of f1 whose right
    // endpoint is at or below f2, and the rightmost segment of f2 whose left
    // endpoint is strictly below f1.
    detail::Seg s1{}, s2{};
    RLED_CHECK(detail::find_cross_ltr(CurveAccess::root(f1),
                                      CurveAccess::root(f2), s1));
    RLED_CHECK(detail::find_cross_rtl(CurveAccess::root(f2),
                                      CurveAccess::root(f1), s2));
    std::int64_t lo = std::max(s1.xl, s2.xl);
    std::int64_t hi = std::min(s1.xr, s2.xr);
    std::int64_t d_lo = detail::seg_value(s1, lo) - detail::seg_value(s2, lo);
    RLED_CHECK(d_lo > 0);
    std::int8_t g1 = detail::seg_grad(s1), g2 = detail::seg_grad(s2);
    if (g2 <= g1)
        throw InvariantError("combine: curves do not cross within one segment pair");
    std::int64_t slope = g2 - g1;  // decrease of f1-f2 per doubled-x step
    std::int64_t steps = (d_lo + slope - 1) / slope;
    std::int64_t xm = lo + steps;
    if (xm > hi || d_lo - steps * slope != 0)
        throw InvariantError("combine: single-crossing precondition violated");

    if (xm == xr) {
        detail::discard_tree(CurveAccess::release(f1));
        return f2;
    }
    auto [f2l, f2r] = detail::split_impl(std::move(f2), xm);
    auto [f1l, f1r] = detail::split_impl(std::move(f1), xm);
    detail::discard_tree(CurveAccess::release(f2r));
    detail::discard_tree(CurveAccess::release(f1l));
    return detail::join_impl(std::move(f2l), std::move(f1r));
}

// F(x2) without structural changes; x2 doubled, result doubled.
inline std::int64_t evaluate(const Curve& f, std::int64_t x2) {
    curve_stats().ops += 1;
    if (!f.valid() || x2 < f.x_left() || x2 > f.x_right())
        throw RangeError("evaluate: x outside the domain");
    return detail::eval_tree(detail::CurveAccess::root(f), x2);
}

// Ordered turning-point list, doubled coordinates, deferred updates applied.
// Length-0 segments show up as two coincident points.
inline std::vector<std::pair<std::int64_t, std::int64_t>> materialize(
    const Curve& f) {
    std::vector<detail::LogicalSegment> segs;
    detail::collect_segments(detail::CurveAccess::root(f), {}, segs);
    std::vector<std::pair<std::int64_t, std::int64_t>> pts;
    pts.reserve(segs.size() + 1);
    for (const auto& s : segs) {
        if (pts.empty()) pts.emplace_back(s.xl, s.yl);
        pts.emplace_back(s.xr, s.yr);
    }
    return pts;
}

// Rebuilds a curve from a materialize()-style point list. This is the only
// way to duplicate a curve, and costs O(size) create/join operations.
inline Curve curve_from_points(
    const std::vector<std::pair<std::int64_t, std::int64_t>>& pts) {
    if (pts.size() < 2) throw DomainError("curve_from_points: need >= 2 points");
    Curve c = create(pts[0].first, pts[0].second, pts[1].first, pts[1].second);
    for (std::size_t i = 2; i < pts.size(); ++i) {
        Curve piece = create(pts[i - 1].first, pts[i - 1].second, pts[i].first,
                             pts[i].second);
        c = join(std::move(c), std::move(piece));
    }
    return c;
}

namespace detail {

// Finds the leftmost collapse-time-0 segment; the tree must be quiescent.
inline std::int64_t find_collapse_idx(Node* v) {
    RLED_CHECK(v && v->min_collapse == 0);
    push_down(v);
    std::int64_t idx;
    if (v->left && v->left->min_collapse == 0) {
        idx = find_collapse_idx(v->left);
    } else if (own_collapse(v) == 0) {
        idx = tree_size(v->left);
    } else {
        RLED_CHECK(v->right && v->right->min_collapse == 0);
        idx = tree_size(v->left) + 1 + find_collapse_idx(v->right);
    }
    pull_up(v);
    return idx;
}

// Removes one collapsed segment, merging its turning points; when two
// adjacent segments collapse simultaneously (FI--ID followed by ID--DF),
// both are removed and the flanking flat segments merge into one.
inline Node* remove_collapsed(Node* r) {
    std::int64_t idx = find_collapse_idx(r);
    auto [l, rest] = split_idx(r, idx);
    Node* mid = nullptr;
    rest = remove_leftmost(rest, mid);
    RLED_CHECK(mid && mid->xl == mid->xr && mid->yl == mid->yr);
    RLED_CHECK(l && rest);  // collapsed segments are never at the curve ends
    bool was_fi_id = (mid->grad_before == 0 && mid->grad_after == -1);
    delete mid;
    curve_stats().segments_collapsed += 1;
    if (was_fi_id) {
        bool simultaneous = false;
        with_leftmost(rest, [&](Node* n) {
            simultaneous = (n->xl == n->xr && n->grad_before == 1 &&
                            n->grad_after == 0);
        });
        if (simultaneous) {
            Node* mid2 = nullptr;
            rest = remove_leftmost(rest, mid2);
            RLED_CHECK(rest);
            delete mid2;
            curve_stats().segments_collapsed += 1;
        }
    }
    return join_trees(l, rest);
}

inline bool find_cross_ltr(Node* v, const Node* other, Seg& out) {
    if (!v) return false;
    push_down(v);
    bool found = find_cross_ltr(v->left, other, out);
    if (!found && v->yr <= eval_tree(other, v->xr)) {
        out = {v->xl, v->yl, v->xr, v->yr};
        found = true;
    }
    if (!found) found = find_cross_ltr(v->right, other, out);
    pull_up(v);
    return found;
}

inline bool find_cross_rtl(Node* v, const Node* other, Seg& out) {
    if (!v) return false;
    push_down(v);
    bool found = find_cross_rtl(v->right, other, out);
    if (!found && eval_tree(other, v->xl) > v->yl) {
        out = {v->xl, v->yl, v->xr, v->yr};
        found = true;
    }
    if (!found) found = find_cross_rtl(v->left, other, out);
    pull_up(v);
    return found;
}

}  // namespace detail

// --- structural audits ------------------------------------------------------
// Used by the test suites: each throws InvariantError with a description
// when the checked invariant fails. All are read-only.

namespace curve_audit {

inline std::vector<detail::LogicalSegment> logical_segments(const Curve& f) {
    std::vector<detail::LogicalSegment> segs;
    detail::collect_segments(detail::CurveAccess::root(f), {}, segs);
    return segs;
}

// Gradient closure, chain continuity, neighbour-type mirroring, DI absence,
// and the rule that zero-length segments are flat.
inline void check_structure(const Curve& f) {
    auto segs = logical_segments(f);
    RLED_CHECK(!segs.empty());
    for (std::size_t i = 0; i < segs.size(); ++i) {
        const auto& s = segs[i];
        std::int64_t dx = s.xr - s.xl, dy = s.yr - s.yl;
        if (dx < 0 || !(dy == 0 || dy == dx || dy == -dx))
            throw InvariantError("audit: segment gradient outside {-1,0,+1}");
        if (dx == 0 && dy != 0)
            throw InvariantError("audit: length-0 segment is not flat");
        std::int8_t g = dy == 0 ? 0 : (dy > 0 ? 1 : -1);
        if (i == 0) {
            if (s.before != detail::kNoGrad)
                throw InvariantError("audit: first segment has a left neighbour type");
        } else {
            const auto& p = segs[i - 1];
            if (p.xr != s.xl || p.yr != s.yl)
                throw InvariantError("audit: consecutive segments do not share a point");
            std::int8_t gp = (p.yr == p.yl) ? 0 : (p.yr > p.yl ? 1 : -1);
            if (s.before != gp || p.after != g)
                throw InvariantError("audit: neighbour gradient fields out of sync");
            if (gp == -1 && g == 1)
                throw InvariantError("audit: DI turning point stored");
            if (gp == g && !(p.xl == p.xr || s.xl == s.xr))
                throw InvariantError("audit: equal-gradient neighbours not merged");
        }
        if (i + 1 == segs.size() && s.after != detail::kNoGrad)
            throw InvariantError("audit: last segment has a right neighbour type");
    }
}

// Integer closure: at every even x2 in the domain the value is even.
// Per segment: +-1 segments need x2+y2 even at both endpoints; flat
// segments need even y2 unless they are length-0 at an odd x2.
inline void check_parity(const Curve& f) {
    for (const auto& s : logical_segments(f)) {
        std::int64_t dy = s.yr - s.yl;
        if (dy != 0) {
            if (((s.xl ^ s.yl) & 1) != 0 || ((s.xr ^ s.yr) & 1) != 0)
                throw InvariantError("audit: sloped segment breaks integer parity");
        } else if ((s.yl & 1) != 0 && !(s.xl == s.xr && (s.xl & 1) != 0)) {
            throw InvariantError("audit: flat segment breaks integer parity");
        }
    }
}

// No deferred updates on the leftmost or rightmost root path.
inline void check_boundary_clean(const Curve& f) {
    for (bool leftmost : {true, false}) {
        const detail::Node* v = detail::CurveAccess::root(f);
        while (v) {
            if (v->swm_w != 0 || v->grad_change != 0 || v->dx != 0 || v->dy != 0)
                throw InvariantError("audit: deferred update on a boundary path");
            v = leftmost ? v->left : v->right;
        }
    }
}

// Root min-collapse equals the minimum collapse time over a direct scan.
inline void check_min_collapse(const Curve& f) {
    std::int64_t expect = detail::kInfCollapse;
    for (const auto& s : logical_segments(f)) {
        std::int8_t b = s.before, a = s.after;
        bool collapsible = (b == 1 && a == 0) || (b == 1 && a == -1) ||
                           (b == 0 && a == -1);
        if (!collapsible) continue;
        std::int64_t manhattan2 = (s.xr - s.xl) + std::llabs(s.yr - s.yl);
        expect = std::min(expect, manhattan2 / 2);
    }
    if (detail::tree_min_collapse(detail::CurveAccess::root(f)) != expect)
        throw InvariantError("audit: stale subtree minimum collapse time");
}

inline void check_all(const Curve& f) {
    check_structure(f);
    check_parity(f);
    check_boundary_clean(f);
    check_min_collapse(f);
}

}  // namespace curve_audit
}  // namespace rled
