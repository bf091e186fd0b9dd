#pragma once

// Reference implementations used for differential testing: the classic
// dense dynamic program, sliding-window minima on arrays, and the array
// forms of the mismatch-block border transforms. Everything here favours
// being obviously correct over being fast; sizes are guarded.

#include <algorithm>
#include <cstdint>
#include <string_view>
#include <vector>

#include "rled/errors.hpp"
#include "rled/rle.hpp"

namespace rled::oracle {

inline constexpr std::int64_t kDenseCellCap = 100'000'000;

// Full (M+1) x (N+1) table of prefix edit distances.
// ed(i, j) = distance between a[0..i) and b[0..j).
class DenseTable {
public:
    DenseTable(std::string_view a, std::string_view b) {
        rows_ = static_cast<std::int64_t>(a.size()) + 1;
        cols_ = static_cast<std::int64_t>(b.size()) + 1;
        if (rows_ * cols_ > kDenseCellCap)
            throw GuardError("dense table would exceed the cell cap");
        cells_.resize(static_cast<std::size_t>(rows_ * cols_));
        for (std::int64_t j = 0; j < cols_; ++j) at(0, j) = j;
        for (std::int64_t i = 1; i < rows_; ++i) {
            at(i, 0) = i;
            for (std::int64_t j = 1; j < cols_; ++j) {
                std::int64_t sub = at(i - 1, j - 1) + (a[i - 1] != b[j - 1] ? 1 : 0);
                at(i, j) = std::min({sub, at(i - 1, j) + 1, at(i, j - 1) + 1});
            }
        }
    }

    std::int64_t& at(std::int64_t i, std::int64_t j) {
        return cells_[static_cast<std::size_t>(i * cols_ + j)];
    }
    std::int64_t at(std::int64_t i, std::int64_t j) const {
        return cells_[static_cast<std::size_t>(i * cols_ + j)];
    }
    std::int64_t rows() const { return rows_; }
    std::int64_t cols() const { return cols_; }

private:
    std::int64_t rows_ = 0, cols_ = 0;
    std::vector<std::int64_t> cells_;
};

// Unit-cost Levenshtein distance via the full table.
inline std::int64_t naive_ed(std::string_view a, std::string_view b) {
    return DenseTable(a, b).at(static_cast<std::int64_t>(a.size()),
                               static_cast<std::int64_t>(b.size()));
}

// Independently coded two-row version, kept as a cross-check on naive_ed.
inline std::int64_t naive_ed_rows(std::string_view a, std::string_view b) {
    std::vector<std::int64_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = static_cast<std::int64_t>(j);
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = static_cast<std::int64_t>(i);
        for (std::size_t j = 1; j <= b.size(); ++j) {
            std::int64_t sub = prev[j - 1] + (a[i - 1] != b[j - 1] ? 1 : 0);
            cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

// SWM(S, h): out[i] = min{ S[j] : i-h+1 <= j <= i, 1 <= j <= n } for
// i in [1, n+h-1], all 1-indexed as in the defining formula.
inline std::vector<std::int64_t> array_swm(const std::vector<std::int64_t>& s,
                                           std::int64_t h) {
    if (s.empty()) throw DomainError("array_swm: empty input");
    if (h < 1) throw DomainError("array_swm: window must be >= 1");
    std::int64_t n = static_cast<std::int64_t>(s.size());
    std::vector<std::int64_t> out(static_cast<std::size_t>(n + h - 1));
    for (std::int64_t i = 1; i <= n + h - 1; ++i) {
        std::int64_t lo = std::max<std::int64_t>(1, i - h + 1);
        std::int64_t hi = std::min(n, i);
        std::int64_t m = s[static_cast<std::size_t>(lo - 1)];
        for (std::int64_t j = lo + 1; j <= hi; ++j)
            m = std::min(m, s[static_cast<std::size_t>(j - 1)]);
        out[static_cast<std::size_t>(i - 1)] = m;
    }
    return out;
}

// Border transforms for a mismatch block of height h and width w.
// LEFT[1..h] is the left part of the input border bottom-to-top,
// TOP[1..w] the top part left-to-right; both include the shared corner.
// The output has w+h-1 entries: bottom row left-to-right, then the right
// column bottom-to-top, overlapping at the bottom-right corner.

// Three-case form; requires h <= w.
inline std::vector<std::int64_t> out_left_paper(const std::vector<std::int64_t>& left,
                                                std::int64_t h, std::int64_t w) {
    if (static_cast<std::int64_t>(left.size()) != h)
        throw DomainError("out_left_paper: |LEFT| != h");
    if (h > w) throw DomainError("out_left_paper: requires h <= w");
    auto sw = array_swm(left, h);  // length 2h-1
    std::vector<std::int64_t> out(static_cast<std::size_t>(w + h - 1));
    for (std::int64_t i = 1; i <= w + h - 1; ++i) {
        std::int64_t v;
        if (i <= h)
            v = sw[static_cast<std::size_t>(i - 1)] + i - 1;
        else if (i <= w)
            v = sw[static_cast<std::size_t>(h - 1)] + i - 1;
        else
            v = sw[static_cast<std::size_t>(i - w + h - 1)] + w - 1;
        out[static_cast<std::size_t>(i - 1)] = v;
    }
    return out;
}

inline std::vector<std::int64_t> out_top_paper(const std::vector<std::int64_t>& top,
                                               std::int64_t h, std::int64_t w) {
    if (static_cast<std::int64_t>(top.size()) != w)
        throw DomainError("out_top_paper: |TOP| != w");
    if (h > w) throw DomainError("out_top_paper: requires h <= w");
    auto sw = array_swm(top, h);  // length w+h-1
    std::vector<std::int64_t> out(static_cast<std::size_t>(w + h - 1));
    for (std::int64_t i = 1; i <= w + h - 1; ++i) {
        std::int64_t v = sw[static_cast<std::size_t>(i - 1)];
        out[static_cast<std::size_t>(i - 1)] = (i <= w) ? v + h - 1 : v + w + h - 1 - i;
    }
    return out;
}

// Generalized forms, valid for any h, w (they reduce to the paper forms
// when h <= w). These are what the block engine mirrors with curves.
inline std::vector<std::int64_t> out_left_general(const std::vector<std::int64_t>& left,
                                                  std::int64_t h, std::int64_t w) {
    if (static_cast<std::int64_t>(left.size()) != h)
        throw DomainError("out_left_general: |LEFT| != h");
    auto sw = array_swm(left, w);  // length w+h-1
    std::vector<std::int64_t> out(static_cast<std::size_t>(w + h - 1));
    for (std::int64_t i = 1; i <= w + h - 1; ++i)
        out[static_cast<std::size_t>(i - 1)] =
            sw[static_cast<std::size_t>(i - 1)] + std::min(i, w) - 1;
    return out;
}

inline std::vector<std::int64_t> out_top_general(const std::vector<std::int64_t>& top,
                                                 std::int64_t h, std::int64_t w) {
    if (static_cast<std::int64_t>(top.size()) != w)
        throw DomainError("out_top_general: |TOP| != w");
    auto sw = array_swm(top, h);  // length w+h-1
    std::vector<std::int64_t> out(static_cast<std::size_t>(w + h - 1));
    for (std::int64_t i = 1; i <= w + h - 1; ++i)
        out[static_cast<std::size_t>(i - 1)] =
            sw[static_cast<std::size_t>(i - 1)] + std::min(h, w + h - i) - 1;
    return out;
}

// Direct block transform: each output cell is the cheapest entry through
// the input border, paying max(row gap, col gap) inside the block. Used to
// validate the formulas above on arbitrary Lipschitz borders.
inline std::vector<std::int64_t> out_border_direct(const std::vector<std::int64_t>& left,
                                                   const std::vector<std::int64_t>& top,
                                                   std::int64_t h, std::int64_t w) {
    std::vector<std::int64_t> out(static_cast<std::size_t>(w + h - 1));
    for (std::int64_t i = 1; i <= w + h - 1; ++i) {
        // Output cell i: (h-1, i-1) for i <= w, else (h-1-(i-w), w-1),
        // with the block's own corner at row 0 / col 0.
        std::int64_t tr = (i <= w) ? h - 1 : h - 1 - (i - w);
        std::int64_t tc = (i <= w) ? i - 1 : w - 1;
        std::int64_t best = -1;
        for (std::int64_t j = 1; j <= h; ++j) {  // left border cell (h-j, 0)
            std::int64_t br = h - j;
            if (br > tr) continue;
            std::int64_t c = left[static_cast<std::size_t>(j - 1)] + std::max(tr - br, tc);
            if (best < 0 || c < best) best = c;
        }
        for (std::int64_t j = 1; j <= w; ++j) {  // top border cell (0, j-1)
            std::int64_t bc = j - 1;
            if (bc > tc) continue;
            std::int64_t c = top[static_cast<std::size_t>(j - 1)] + std::max(tr, tc - bc);
            if (best < 0 || c < best) best = c;
        }
        out[static_cast<std::size_t>(i - 1)] = best;
    }
    return out;
}

// Per-block border values extracted from the dense table, following the
// same cell conventions as the block engine.
struct BlockBorders {
    std::int64_t p, q;      // run indices (0-based)
    std::int64_t h, w;      // block height/width in cells
    bool is_match;
    std::vector<std::int64_t> left;  // LEFT[1..h], bottom-to-top
    std::vector<std::int64_t> top;   // TOP[1..w], left-to-right
    std::vector<std::int64_t> out;   // OUT[1..w+h-1]
};

inline std::vector<BlockBorders> brute_block_borders(
    const RleString& x, const RleString& y,
    std::int64_t cap = kDefaultDecompressCap) {
    std::string a = decompress(x, cap);
    std::string b = decompress(y, cap);
    DenseTable t(a, b);

    std::vector<BlockBorders> blocks;
    std::int64_t r0 = 0;
    for (std::size_t p = 0; p < x.run_count(); ++p) {
        std::int64_t r1 = r0 + x.runs()[p].length;
        std::int64_t c0 = 0;
        for (std::size_t q = 0; q < y.run_count(); ++q) {
            std::int64_t c1 = c0 + y.runs()[q].length;
            BlockBorders bb;
            bb.p = static_cast<std::int64_t>(p);
            bb.q = static_cast<std::int64_t>(q);
            bb.h = r1 - r0 + 1;
            bb.w = c1 - c0 + 1;
            bb.is_match = x.runs()[p].symbol == y.runs()[q].symbol;
            for (std::int64_t j = 1; j <= bb.h; ++j)
                bb.left.push_back(t.at(r1 - j + 1, c0));
            for (std::int64_t j = 1; j <= bb.w; ++j)
                bb.top.push_back(t.at(r0, c0 + j - 1));
            for (std::int64_t i = 1; i <= bb.w + bb.h - 1; ++i) {
                std::int64_t row = (i <= bb.w) ? r1 : r1 - (i - bb.w);
                std::int64_t col = (i <= bb.w) ? c0 + i - 1 : c1;
                bb.out.push_back(t.at(row, col));
            }
            blocks.push_back(std::move(bb));
            c0 = c1;
        }
        r0 = r1;
    }
    return blocks;
}

}  // namespace rled::oracle
