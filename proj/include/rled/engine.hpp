#pragma once

// Block-decomposed edit distance on run-length encoded strings. The DP
// table is cut into blocks, one per pair of runs; each block turns its
// input border (left column + top row, held as curves) into its output
// border (bottom row + right column) with a constant number of curve
// operations, so a whole distance costs O(mn) operations on the structure.
//
// Borders live in diagonal coordinates: a border cell (i, j) is stored at
// x = j - i with value ED(i, j). Every border meets each diagonal exactly
// once, borders are piecewise linear with gradients in {-1, 0, +1}, and a
// match block's output is simply the identity on its input.

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "rled/curve.hpp"
#include "rled/errors.hpp"
#include "rled/rle.hpp"

namespace rled {

// One block of the decomposition: runs p of X (rows r0..r1) and q of Y
// (columns c0..c1), so the block spans h = r1-r0+1 rows and w = c1-c0+1
// cells per row, borders included.
struct BlockCtx {
    std::int64_t p, q;
    std::int64_t r0, r1, c0, c1;
    std::int64_t h, w;
    bool is_match;
};

// Materialized output border of one block, for differential testing.
struct BlockDump {
    std::int64_t p, q;
    bool is_match;
    std::vector<std::pair<std::int64_t, std::int64_t>> bottom;  // doubled coords
    std::vector<std::pair<std::int64_t, std::int64_t>> right;
};

struct EngineOptions {
    // Audit every curve produced inside block processing (slow).
    bool check_invariants = false;
    // Called with each block's materialized output border.
    std::function<void(const BlockDump&)> on_block;
};

// Sweep state: bottom borders of the previous block row, one per column
// run, plus the left border curves for every block row. Each curve is
// consumed exactly once.
struct Frontier {
    std::vector<Curve> bottoms;
    std::vector<Curve> lefts;
};

namespace engine_detail {

inline void audit(const Curve& c, const EngineOptions& opts) {
    if (!opts.check_invariants) return;
    curve_audit::check_structure(c);
    curve_audit::check_parity(c);
    curve_audit::check_boundary_clean(c);
}

}  // namespace engine_detail

// Table borders as curves: ED(0, j) = j on top (diagonal j, value j) and
// ED(i, 0) = i on the left (diagonal -i, value i), one create per run.
inline Frontier init_borders(const RleString& x, const RleString& y) {
    Frontier f;
    f.bottoms.reserve(y.run_count());
    f.lefts.reserve(x.run_count());
    std::int64_t c0 = 0;
    for (const Run& r : y.runs()) {
        std::int64_t c1 = c0 + r.length;
        f.bottoms.push_back(create(2 * c0, 2 * c0, 2 * c1, 2 * c1));
        c0 = c1;
    }
    std::int64_t r0 = 0;
    for (const Run& r : x.runs()) {
        std::int64_t r1 = r0 + r.length;
        f.lefts.push_back(create(-2 * r1, 2 * r1, -2 * r0, 2 * r0));
        r0 = r1;
    }
    return f;
}

// Match block: values copy along diagonals (Lemma of the block DP), which
// in diagonal coordinates is the identity, so the output border is just
// the joined input border, split at the bottom-right corner's diagonal.
inline std::pair<Curve, Curve> process_match_block(const BlockCtx& ctx,
                                                   Curve left, Curve top) {
    Curve out = join(std::move(left), std::move(top));
    auto [bottom, right] = split(std::move(out), 2 * (ctx.c1 - ctx.r1));
    return {std::move(bottom), std::move(right)};
}

// Mismatch block. With d0 = c0 - r1 (the block's lowest diagonal) and
// dm = c1 - r1 (the corner diagonal), the two candidate borders are
//
//   OUT_LEFT(d) = min{LEFT(d') : d' in [d-(w-1), d]} + min(d - d0, w-1)
//   OUT_TOP(d)  = min{TOP(d')  : d' in [d, d+(h-1)]} + min(h-1, c1-r0-d)
//
// i.e. a window minimum over the border, plus the unavoidable number of
// steps to reach the output cell. The output border is their pointwise
// minimum, which crosses at most once (top wins from some diagonal on).
inline std::pair<Curve, Curve> process_mismatch_block(
    const BlockCtx& ctx, Curve left, Curve top,
    const EngineOptions& opts = {}) {
    const std::int64_t d0 = ctx.c0 - ctx.r1;
    const std::int64_t dm = ctx.c1 - ctx.r1;

    Curve s = swm(std::move(left), ctx.w - 1);
    engine_detail::audit(s, opts);
    auto [sl, sr] = split(std::move(s), 2 * dm);
    sl = gradient_change(std::move(sl), +1);  // prefix minima are non-increasing
    sl = shift(std::move(sl), 0, -2 * d0);
    sr = shift(std::move(sr), 0, 2 * (ctx.w - 1));
    Curve out_left = join(std::move(sl), std::move(sr));
    engine_detail::audit(out_left, opts);

    Curve u = swm(std::move(top), ctx.h - 1);
    u = shift(std::move(u), -2 * (ctx.h - 1), 0);  // forward window alignment
    engine_detail::audit(u, opts);
    auto [tl, tr] = split(std::move(u), 2 * dm);
    tl = shift(std::move(tl), 0, 2 * (ctx.h - 1));
    tr = gradient_change(std::move(tr), -1);  // suffix minima are non-decreasing
    tr = shift(std::move(tr), 0, 2 * (ctx.c1 - ctx.r0));
    Curve out_top = join(std::move(tl), std::move(tr));
    engine_detail::audit(out_top, opts);

    Curve out = combine(std::move(out_top), std::move(out_left));
    engine_detail::audit(out, opts);
    auto [bottom, right] = split(std::move(out), 2 * dm);
    return {std::move(bottom), std::move(right)};
}

// Row-major sweep over all m*n blocks. Returns the bottom-right table
// value, read off the last block's right border at diagonal N - M.
inline std::int64_t sweep(const RleString& x, const RleString& y,
                          const EngineOptions& opts = {}) {
    Frontier frontier = init_borders(x, y);
    const std::size_t m = x.run_count(), n = y.run_count();

    Curve last_right;
    std::int64_t r0 = 0;
    for (std::size_t p = 0; p < m; ++p) {
        std::int64_t r1 = r0 + x.runs()[p].length;
        Curve right = std::move(frontier.lefts[p]);
        std::int64_t c0 = 0;
        for (std::size_t q = 0; q < n; ++q) {
            std::int64_t c1 = c0 + y.runs()[q].length;
            BlockCtx ctx{static_cast<std::int64_t>(p),
                         static_cast<std::int64_t>(q),
                         r0,
                         r1,
                         c0,
                         c1,
                         r1 - r0 + 1,
                         c1 - c0 + 1,
                         x.runs()[p].symbol == y.runs()[q].symbol};
            auto [bottom, next_right] =
                ctx.is_match
                    ? process_match_block(ctx, std::move(right),
                                          std::move(frontier.bottoms[q]))
                    : process_mismatch_block(ctx, std::move(right),
                                             std::move(frontier.bottoms[q]),
                                             opts);
            if (opts.on_block) {
                BlockDump dump{ctx.p, ctx.q, ctx.is_match, materialize(bottom),
                               materialize(next_right)};
                opts.on_block(dump);
            }
            frontier.bottoms[q] = std::move(bottom);
            right = std::move(next_right);
            c0 = c1;
        }
        last_right = std::move(right);
        r0 = r1;
    }

    std::int64_t answer2 = evaluate(last_right, 2 * (y.length() - x.length()));
    RLED_CHECK(answer2 % 2 == 0 && answer2 >= 0);
    return answer2 / 2;
}

// Exact unit-cost Levenshtein distance between decompress(x) and
// decompress(y), computed without decompressing.
inline std::int64_t rle_edit_distance(const RleString& x, const RleString& y,
                                      const EngineOptions& opts = {}) {
    if (x.empty()) return y.length();
    if (y.empty()) return x.length();
    return sweep(x, y, opts);
}

}  // namespace rled
