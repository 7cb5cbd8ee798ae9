#pragma once

// graph6, short form only (n <= 62). The upper triangle is written column
// by column: (0,1), (0,2), (1,2), (0,3), ... six bits per printable byte,
// most significant bit first, each byte offset by 63.

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "domopt/error.hpp"
#include "domopt/graph.hpp"

namespace domopt {

inline std::string to_graph6(const Graph& g)
{
    const int n = g.order();
    std::string out;
    out.push_back(static_cast<char>(63 + n));
    int acc = 0, filled = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i) {
            acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
            if (++filled == 6) {
                out.push_back(static_cast<char>(63 + acc));
                acc = filled = 0;
            }
        }
    }
    if (filled > 0) out.push_back(static_cast<char>(63 + (acc << (6 - filled))));
    return out;
}

inline Graph parse_graph6(std::string_view line)
{
    // Tolerate a trailing newline and the optional ">>graph6<<" header.
    while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.remove_suffix(1);
    std::size_t base = 0;
    if (line.starts_with(">>graph6<<")) base = 10;
    line.remove_prefix(base);

    if (line.empty()) throw ParseError("empty graph6 line", base);
    const auto head = static_cast<unsigned char>(line[0]);
    if (head == 126) throw CapExceeded("graph6 long form (n > 62) is not supported");
    if (head < 63 || head > 125) throw ParseError("graph6 header byte out of range", base);
    const int n = head - 63;
    if (n > Graph::max_order) throw CapExceeded("graph order exceeds 62");

    const std::size_t bits = static_cast<std::size_t>(n) * (n - 1) / 2;
    const std::size_t expected = 1 + (bits + 5) / 6;
    for (std::size_t k = 1; k < line.size(); ++k) {
        const auto c = static_cast<unsigned char>(line[k]);
        if (c < 63 || c > 126) throw ParseError("graph6 byte out of range", base + k);
    }
    if (line.size() != expected)
        throw ParseError("graph6 length " + std::to_string(line.size()) + " does not match order " +
                             std::to_string(n) + " (expected " + std::to_string(expected) + ")",
                         base + std::min(line.size(), expected));

    std::vector<std::uint64_t> rows(static_cast<std::size_t>(n), 0);
    std::size_t bit = 0;
    auto next_bit = [&]() {
        const std::size_t byte = 1 + bit / 6;
        const int shift = 5 - static_cast<int>(bit % 6);
        ++bit;
        return ((static_cast<unsigned char>(line[byte]) - 63) >> shift) & 1;
    };
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i)
            if (next_bit()) {
                rows[i] |= std::uint64_t{1} << j;
                rows[j] |= std::uint64_t{1} << i;
            }
    while (bit % 6 != 0)
        if (next_bit()) throw ParseError("nonzero padding bits in graph6", base + line.size() - 1);
    return Graph::from_rows(n, std::move(rows));
}

} // namespace domopt
