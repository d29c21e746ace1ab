#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace emzv {

enum class Parity { even, odd };

/// A finite tuple (k_1, ..., k_r) of non-negative integers, the argument of
/// an eMZV I^A(k_1, ..., k_r). Read as a word it is e_{k_1} ... e_{k_r}.
///
/// Indices are ordered canonically by (length, weight, lexicographic), which
/// fixes the iteration order of every container keyed by Index.
class Index {
public:
    using value_type = std::uint32_t;
    static constexpr std::uint64_t entry_limit = std::uint64_t{1} << 31;

    Index() = default;

    Index(std::initializer_list<long long> entries) {
        entries_.reserve(entries.size());
        for (long long e : entries) push_back(e);
    }

    explicit Index(std::span<const value_type> entries)
        : entries_(entries.begin(), entries.end()) {
        for (auto e : entries_) check_entry(e);
    }

    explicit Index(std::vector<value_type> entries) : entries_(std::move(entries)) {
        for (auto e : entries_) check_entry(e);
    }

    void push_back(long long e) {
        check_entry(e);
        entries_.push_back(static_cast<value_type>(e));
    }

    [[nodiscard]] std::size_t length() const noexcept { return entries_.size(); }
    [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
    [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }

    [[nodiscard]] std::uint64_t weight() const noexcept {
        std::uint64_t w = 0;
        for (auto e : entries_) w += e;
        return w;
    }

    /// (weight + length) mod 2.
    [[nodiscard]] Parity parity() const noexcept {
        return (weight() + length()) % 2 == 0 ? Parity::even : Parity::odd;
    }

    /// First and last entries differ from 1 (vacuously true when empty).
    [[nodiscard]] bool is_admissible() const noexcept {
        return entries_.empty() || (entries_.front() != 1 && entries_.back() != 1);
    }

    [[nodiscard]] bool is_zero_one() const noexcept {
        for (auto e : entries_)
            if (e > 1) return false;
        return true;
    }

    [[nodiscard]] value_type operator[](std::size_t i) const { return entries_[i]; }
    [[nodiscard]] value_type front() const { return entries_.front(); }
    [[nodiscard]] value_type back() const { return entries_.back(); }

    [[nodiscard]] auto begin() const noexcept { return entries_.begin(); }
    [[nodiscard]] auto end() const noexcept { return entries_.end(); }
    [[nodiscard]] const std::vector<value_type>& entries() const noexcept { return entries_; }

    [[nodiscard]] Index reversed() const {
        Index r;
        r.entries_.assign(entries_.rbegin(), entries_.rend());
        return r;
    }

    /// Entries in [from, to).
    [[nodiscard]] Index slice(std::size_t from, std::size_t to) const {
        Index r;
        r.entries_.assign(entries_.begin() + static_cast<std::ptrdiff_t>(from),
                          entries_.begin() + static_cast<std::ptrdiff_t>(to));
        return r;
    }

    [[nodiscard]] Index prefix(std::size_t n) const { return slice(0, n); }
    [[nodiscard]] Index suffix_from(std::size_t n) const { return slice(n, length()); }

    [[nodiscard]] friend Index concat(const Index& a, const Index& b) {
        Index r = a;
        r.entries_.insert(r.entries_.end(), b.entries_.begin(), b.entries_.end());
        return r;
    }

    friend bool operator==(const Index&, const Index&) = default;

    friend std::strong_ordering operator<=>(const Index& a, const Index& b) {
        if (auto c = a.length() <=> b.length(); c != 0) return c;
        if (auto c = a.weight() <=> b.weight(); c != 0) return c;
        return a.entries_ <=> b.entries_;
    }

private:
    static void check_entry(long long e) {
        if (e < 0 || static_cast<std::uint64_t>(e) >= entry_limit)
            throw ArgumentError("index entry out of range: " + std::to_string(e));
    }

    std::vector<value_type> entries_;
};

/// Textual form: comma-separated decimal entries, "-" for the empty index.
inline std::string to_string(const Index& k) {
    if (k.empty()) return "-";
    std::string out;
    for (std::size_t i = 0; i < k.length(); ++i) {
        if (i) out += ',';
        out += std::to_string(k[i]);
    }
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const Index& k) { return os << to_string(k); }

inline Index parse_index(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    if (text == "-") return {};
    if (text.empty()) throw ParseError("empty index text (use '-' for the empty index)");
    Index k;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        auto piece = trim(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start));
        if (piece.empty()) throw ParseError("malformed index: '" + std::string(text) + "'");
        long long value = 0;
        for (char c : piece) {
            if (c < '0' || c > '9') throw ParseError("malformed index: '" + std::string(text) + "'");
            value = value * 10 + (c - '0');
            if (static_cast<std::uint64_t>(value) >= Index::entry_limit)
                throw ParseError("index entry too large in '" + std::string(text) + "'");
        }
        k.push_back(value);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return k;
}

/// All indices of the given length whose entries sum to `weight`, in
/// lexicographic order of the entry vectors. Zero entries are allowed.
inline std::vector<Index> compositions(std::uint64_t weight, std::size_t length) {
    std::vector<Index> out;
    if (length == 0) {
        if (weight == 0) out.emplace_back();
        return out;
    }
    std::vector<Index::value_type> cur(length, 0);
    auto rec = [&](auto&& self, std::size_t pos, std::uint64_t remaining) -> void {
        if (pos + 1 == length) {
            cur[pos] = static_cast<Index::value_type>(remaining);
            out.emplace_back(cur);
            return;
        }
        for (std::uint64_t a = 0; a <= remaining; ++a) {
            cur[pos] = static_cast<Index::value_type>(a);
            self(self, pos + 1, remaining - a);
        }
    };
    rec(rec, 0, weight);
    return out;
}

/// Every index with 1 <= length <= max_length and weight <= max_weight, in
/// canonical order.
inline std::vector<Index> indices_up_to(std::uint64_t max_weight, std::size_t max_length) {
    std::vector<Index> out;
    for (std::size_t r = 1; r <= max_length; ++r)
        for (std::uint64_t w = 0; w <= max_weight; ++w)
            for (auto& k : compositions(w, r)) out.push_back(std::move(k));
    return out;
}

}  // namespace emzv
