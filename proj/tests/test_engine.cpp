#include "doctest.h"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "border_check.hpp"
#include "rled/engine.hpp"
#include "rled/oracle.hpp"
#include "rled/random_instance.hpp"

using namespace rled;
using Pts = std::vector<std::pair<std::int64_t, std::int64_t>>;

TEST_CASE("paper instance: a3b6a3 vs a9 has distance 6") {
    CHECK(rle_edit_distance(parse_rle("a3b6a3"), parse_rle("a9")) == 6);
    CHECK(rle_edit_distance(parse_rle("a9"), parse_rle("a3b6a3")) == 6);
}

TEST_CASE("identical strings have distance 0") {
    for (const char* s : {"a1", "a3b6a3", "x7y1x7", "a1b1a1b1a1"}) {
        RleString x = parse_rle(s);
        RleString y = parse_rle(s);
        CHECK(rle_edit_distance(x, y) == 0);
    }
}

TEST_CASE("disjoint alphabets give max(M, N)") {
    CHECK(rle_edit_distance(parse_rle("a5"), parse_rle("b3")) == 5);
    CHECK(rle_edit_distance(parse_rle("a2c3"), parse_rle("b9")) == 9);
}

TEST_CASE("empty inputs degenerate to the other length") {
    CHECK(rle_edit_distance(RleString{}, parse_rle("a4b2")) == 6);
    CHECK(rle_edit_distance(parse_rle("a4b2"), RleString{}) == 6);
    CHECK(rle_edit_distance(RleString{}, RleString{}) == 0);
}

TEST_CASE("huge runs, no decompression") {
    const std::int64_t k = 1'000'000'000'000;  // 10^12
    RleString ak = parse_rle("a1000000000000");
    RleString bk = parse_rle("b1000000000000");
    RleString akbk = parse_rle("a1000000000000b1000000000000");
    RleString ak7 = parse_rle("a999999999993");
    CHECK(rle_edit_distance(ak, bk) == k);
    CHECK(rle_edit_distance(ak, ak7) == 7);
    CHECK(rle_edit_distance(akbk, ak) == k);
}

TEST_CASE("init_borders uses exactly m+n create operations") {
    RleString x = parse_rle("a3b6a3");
    RleString y = parse_rle("a4c2a1b5");
    curve_stats().reset();
    Frontier f = init_borders(x, y);
    CHECK(curve_stats().ops == x.run_count() + y.run_count());
    CHECK(f.bottoms.size() == y.run_count());
    CHECK(f.lefts.size() == x.run_count());
    // Top border: ED(0, j) = j, in diagonal coordinates the identity.
    CHECK(materialize(f.bottoms[0]) == Pts{{0, 0}, {8, 8}});
    CHECK(materialize(f.bottoms[1]) == Pts{{8, 8}, {12, 12}});
    // Left border: ED(i, 0) = i at diagonal -i.
    CHECK(materialize(f.lefts[0]) == Pts{{-6, 6}, {0, 0}});
}

TEST_CASE("match block copies values along diagonals") {
    // 2x2 match block: left values [1,0] on diagonals [-1,0], top values
    // [0,1] on [0,1]; output border equals the input border pointwise.
    BlockCtx ctx{0, 0, 0, 1, 0, 1, 2, 2, true};
    Curve left = create(-2, 2, 0, 0);
    Curve top = create(0, 0, 2, 2);
    auto [bottom, right] = process_match_block(ctx, std::move(left), std::move(top));
    CHECK(materialize(bottom) == Pts{{-2, 2}, {0, 0}});
    CHECK(materialize(right) == Pts{{0, 0}, {2, 2}});
}

namespace {

// Values of a border curve at consecutive integer diagonals.
std::vector<std::int64_t> curve_values(const Curve& c) {
    std::vector<std::int64_t> out;
    for (std::int64_t x2 = c.x_left(); x2 <= c.x_right(); x2 += 2) {
        std::int64_t v = evaluate(c, x2);
        REQUIRE(v % 2 == 0);
        out.push_back(v / 2);
    }
    return out;
}

}  // namespace

TEST_CASE("mismatch block reproduces the dense-table transform") {
    // Real borders taken from the a^2 x b^3 table (one mismatch block).
    RleString x = parse_rle("a2");
    RleString y = parse_rle("b3");
    auto blocks = oracle::brute_block_borders(x, y);
    REQUIRE(blocks.size() == 1);
    const auto& blk = blocks[0];

    BlockCtx ctx{0, 0, 0, 2, 0, 3, 3, 4, false};
    Curve left = create(-4, 4, 0, 0);  // ED(i,0) = i on diagonals [-2,0]
    Curve top = create(0, 0, 6, 6);    // ED(0,j) = j on diagonals [0,3]
    auto [bottom, right] =
        process_mismatch_block(ctx, std::move(left), std::move(top));
    auto bvals = curve_values(bottom);
    auto rvals = curve_values(right);
    // OUT[1..w] is the bottom row, OUT[w..w+h-1] the right column.
    std::vector<std::int64_t> expect_bottom(blk.out.begin(),
                                            blk.out.begin() + blk.w);
    std::vector<std::int64_t> expect_right(blk.out.begin() + blk.w - 1,
                                           blk.out.end());
    CHECK(bvals == expect_bottom);
    CHECK(rvals == expect_right);
}

TEST_CASE("engine distance equals the naive DP on random instances") {
    SplitMix64 rng(501);
    int cases = 3000;
    for (int it = 0; it < cases; ++it) {
        RleString x = gen_random_rle(rng.bounded(9), 6, 3, rng.next());
        RleString y = gen_random_rle(rng.bounded(9), 6, 3, rng.next());
        std::int64_t got = rle_edit_distance(x, y);
        std::int64_t want = oracle::naive_ed_rows(decompress(x), decompress(y));
        CAPTURE(render(x));
        CAPTURE(render(y));
        REQUIRE(got == want);
    }
}

TEST_CASE("per-block borders of the a3b6a3 vs a9 instance match its table") {
    border_check::check_instance(parse_rle("a3b6a3"), parse_rle("a9"));
}

TEST_CASE("per-block borders equal the dense table rows and columns") {
    SplitMix64 rng(502);
    for (int it = 0; it < 120; ++it) {
        RleString x = gen_random_rle(1 + rng.bounded(6), 5, 3, rng.next());
        RleString y = gen_random_rle(1 + rng.bounded(6), 5, 3, rng.next());
        CAPTURE(render(x));
        CAPTURE(render(y));
        border_check::check_instance(x, y);
    }
}

TEST_CASE("block shape stress: unit runs, tall and wide blocks") {
    // all-unit runs: every block is 2x2
    RleString x = encode_raw("abababababababababab");
    RleString y = encode_raw("babababab");
    CHECK(rle_edit_distance(x, y) ==
          oracle::naive_ed_rows(decompress(x), decompress(y)));

    // single tall run against many unit runs: h >> w mismatch blocks
    RleString tall = parse_rle("a100");
    RleString units = encode_raw("bcbcbcbcbcbcbcbcbcbc");
    CHECK(rle_edit_distance(tall, units) ==
          oracle::naive_ed_rows(decompress(tall), decompress(units)));
    border_check::check_instance(tall, units);

    // and the transpose: w >> h
    CHECK(rle_edit_distance(units, tall) ==
          oracle::naive_ed_rows(decompress(units), decompress(tall)));
    border_check::check_instance(units, tall);

    // long mixed instance, still within the naive guard
    SplitMix64 rng(601);
    for (int it = 0; it < 30; ++it) {
        RleString a = gen_random_rle(10 + rng.bounded(15), 12, 2, rng.next());
        RleString b = gen_random_rle(10 + rng.bounded(15), 12, 2, rng.next());
        CAPTURE(render(a));
        CAPTURE(render(b));
        REQUIRE(rle_edit_distance(a, b) ==
                oracle::naive_ed_rows(decompress(a), decompress(b)));
    }
}

TEST_CASE("metric properties on random triples") {
    SplitMix64 rng(503);
    for (int it = 0; it < 400; ++it) {
        RleString x = gen_random_rle(rng.bounded(7), 6, 3, rng.next());
        RleString y = gen_random_rle(rng.bounded(7), 6, 3, rng.next());
        RleString z = gen_random_rle(rng.bounded(7), 6, 3, rng.next());
        std::int64_t dxy = rle_edit_distance(x, y);
        std::int64_t dyx = rle_edit_distance(y, x);
        std::int64_t dxz = rle_edit_distance(x, z);
        std::int64_t dyz = rle_edit_distance(y, z);
        std::int64_t dxx = rle_edit_distance(x, x);
        CHECK(dxx == 0);
        CHECK(dxy == dyx);
        CHECK(dxz <= dxy + dyz);
        CHECK(dxy >= std::llabs(x.length() - y.length()));
        CHECK(dxy <= std::max(x.length(), y.length()));
    }
}

TEST_CASE("curve operation count stays within a fixed multiple of mn") {
    SplitMix64 rng(504);
    for (int it = 0; it < 40; ++it) {
        std::int64_t m = 1 + static_cast<std::int64_t>(rng.bounded(12));
        std::int64_t n = 1 + static_cast<std::int64_t>(rng.bounded(12));
        RleString x = gen_random_rle(m, 1'000'000, 2, rng.next());
        RleString y = gen_random_rle(n, 1'000'000, 2, rng.next());
        curve_stats().reset();
        rle_edit_distance(x, y);
        const CurveStats& s = curve_stats();
        CHECK(s.ops <= 24 * static_cast<std::uint64_t>(m * n));
        CHECK(s.segments_created <= 4 * s.ops);
        CHECK(s.segments_discarded + s.segments_collapsed <= s.segments_created);
    }
}
