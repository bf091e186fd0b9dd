#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rled/errors.hpp"

namespace rled {

// One maximal run: `length` repetitions of `symbol`. Symbols are opaque bytes
// compared only for equality; digits are reserved for counts in the text form.
struct Run {
    char symbol;
    std::int64_t length;

    friend bool operator==(const Run&, const Run&) = default;
};

// Run lengths and total length are capped at 2^61 so that the doubled
// coordinates used by the curve structure stay exact in signed 64 bits.
inline constexpr std::int64_t kMaxRunLength = std::int64_t{1} << 61;

// A canonical run-length encoded string: adjacent runs always carry distinct
// symbols and every run has positive length. Immutable after construction.
class RleString {
public:
    RleString() = default;

    // Appends a run, merging with the previous one when symbols match.
    void append(char symbol, std::int64_t length) {
        if (length < 1) throw DomainError("run length must be positive");
        if (length > kMaxRunLength) throw DomainError("run length exceeds 2^61");
        if (total_ > kMaxRunLength - length)
            throw DomainError("total decompressed length exceeds 2^61");
        total_ += length;
        if (!runs_.empty() && runs_.back().symbol == symbol) {
            runs_.back().length += length;
        } else {
            runs_.push_back({symbol, length});
        }
    }

    const std::vector<Run>& runs() const { return runs_; }
    std::size_t run_count() const { return runs_.size(); }
    bool empty() const { return runs_.empty(); }

    // Uncompressed length (sum of run lengths).
    std::int64_t length() const { return total_; }

    friend bool operator==(const RleString&, const RleString&) = default;

private:
    std::vector<Run> runs_;
    std::int64_t total_ = 0;
};

// Parses the text grammar  rle := run* ; run := SYMBOL COUNT? ;
// SYMBOL := any byte except '0'..'9' ; COUNT := [1-9][0-9]*.
// An omitted count means 1. Equal-symbol tokens merge into one run.
inline RleString parse_rle(std::string_view text) {
    RleString out;
    std::size_t i = 0;
    while (i < text.size()) {
        char sym = text[i];
        if (sym >= '0' && sym <= '9')
            throw ParseError(i, "expected a symbol, got a digit");
        std::size_t sym_at = i;
        ++i;
        std::int64_t count = 1;
        if (i < text.size() && text[i] >= '0' && text[i] <= '9') {
            if (text[i] == '0') throw ParseError(i, "count must not start with 0");
            count = 0;
            while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
                int digit = text[i] - '0';
                if (count > (kMaxRunLength - digit) / 10)
                    throw ParseError(i, "count exceeds 2^61");
                count = count * 10 + digit;
                ++i;
            }
        }
        try {
            out.append(sym, count);
        } catch (const DomainError& e) {
            throw ParseError(sym_at, e.what());
        }
    }
    return out;
}

// Canonical RLE of literal text (no grammar; digits are ordinary symbols).
inline RleString encode_raw(std::string_view text) {
    RleString out;
    std::size_t i = 0;
    while (i < text.size()) {
        std::size_t j = i;
        while (j < text.size() && text[j] == text[i]) ++j;
        out.append(text[i], static_cast<std::int64_t>(j - i));
        i = j;
    }
    return out;
}

inline constexpr std::int64_t kDefaultDecompressCap = 10'000'000;

// Literal expansion, for tests and the naive oracle only. Refuses to
// materialize more than `cap` characters.
inline std::string decompress(const RleString& s,
                              std::int64_t cap = kDefaultDecompressCap) {
    if (s.length() > cap)
        throw GuardError("refusing to decompress " + std::to_string(s.length()) +
                         " characters (cap " + std::to_string(cap) + ")");
    std::string out;
    out.reserve(static_cast<std::size_t>(s.length()));
    for (const Run& r : s.runs())
        out.append(static_cast<std::size_t>(r.length), r.symbol);
    return out;
}

// Prints each run as symbol+count; the count is always emitted, including 1.
inline std::string render(const RleString& s) {
    std::string out;
    for (const Run& r : s.runs()) {
        out.push_back(r.symbol);
        out += std::to_string(r.length);
    }
    return out;
}

}  // namespace rled
