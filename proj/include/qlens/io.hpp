#pragma once

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qlens/error.hpp"
#include "qlens/linalg.hpp"
#include "qlens/qsystem.hpp"
#include "qlens/triangulation.hpp"

namespace qlens {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r' || s.front() == '\n'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n'))
        s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t k = s.find(sep, start);
        out.push_back(s.substr(start, k == std::string_view::npos ? std::string_view::npos : k - start));
        if (k == std::string_view::npos) break;
        start = k + 1;
    }
    return out;
}

inline std::int64_t parse_int(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
        throw Error(ErrorKind::ParseError, "not an integer: '" + std::string(s) + "'");
    return v;
}

/// Integers separated by commas; '|' is accepted as a block separator.
inline IntVector parse_int_list(std::string_view s) {
    std::string flat(trim(s));
    for (auto& c : flat)
        if (c == '|') c = ',';
    if (flat.empty()) throw Error(ErrorKind::ParseError, "empty integer list");
    IntVector out;
    for (auto tok : split(flat, ',')) out.push_back(parse_int(tok));
    return out;
}

inline std::string join_ints(std::span<const std::int64_t> v, char sep = ',') {
    std::string out;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (k) out += sep;
        out += std::to_string(v[k]);
    }
    return out;
}

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

/// One line of the fixture format:
///   p=<int> q=<int> name=<word> tags=<tag,...> entries=<int,...> [checksum=fnv1a64:<hex>]
/// Blank lines and lines starting with '#' are ignored.
struct FixtureRecord {
    LensParams params;
    std::string name;
    std::vector<std::string> tags;
    QVector vector;
    std::optional<std::uint64_t> checksum;

    bool has(std::string_view tag) const {
        for (const auto& t : tags)
            if (t == tag) return true;
        return false;
    }
    /// Value of a "key:value" tag.
    std::optional<std::int64_t> tag_value(std::string_view key) const {
        for (const auto& t : tags)
            if (t.size() > key.size() && t.compare(0, key.size(), key) == 0 && t[key.size()] == ':')
                return parse_int(std::string_view(t).substr(key.size() + 1));
        return std::nullopt;
    }
};

inline FixtureRecord parse_fixture_line(std::string_view line) {
    FixtureRecord r;
    bool have_p = false, have_q = false, have_entries = false;
    int p = 0, q = 0;
    std::istringstream in{std::string(line)};
    std::string tok;
    std::string entries;
    while (in >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw Error(ErrorKind::ParseError, "fixture field without '=': " + tok);
        const std::string key = tok.substr(0, eq);
        const std::string_view value = std::string_view(tok).substr(eq + 1);
        if (key == "p") {
            p = static_cast<int>(parse_int(value));
            have_p = true;
        } else if (key == "q") {
            q = static_cast<int>(parse_int(value));
            have_q = true;
        } else if (key == "name") {
            r.name = value;
        } else if (key == "tags") {
            if (!value.empty())
                for (auto t : split(value, ',')) r.tags.emplace_back(t);
        } else if (key == "entries") {
            entries = value;
            have_entries = true;
        } else if (key == "checksum") {
            constexpr std::string_view prefix = "fnv1a64:";
            if (value.substr(0, prefix.size()) != prefix)
                throw Error(ErrorKind::ParseError, "unsupported checksum: " + std::string(value));
            const auto hex = value.substr(prefix.size());
            std::uint64_t c = 0;
            const auto [ptr, ec] = std::from_chars(hex.data(), hex.data() + hex.size(), c, 16);
            if (hex.empty() || ec != std::errc{} || ptr != hex.data() + hex.size())
                throw Error(ErrorKind::ParseError, "malformed checksum: " + std::string(value));
            r.checksum = c;
        } else {
            throw Error(ErrorKind::ParseError, "unknown fixture field: " + key);
        }
    }
    if (!have_p || !have_q || !have_entries)
        throw Error(ErrorKind::ParseError, "fixture record needs p, q and entries");
    r.params = make_params(p, q);
    r.vector = QVector(parse_int_list(entries));
    if (r.vector.p() != p)
        throw Error(ErrorKind::DimensionMismatch, "fixture '" + r.name + "' has " + std::to_string(r.vector.size()) +
                                                      " entries, expected " + std::to_string(3 * p));
    if (r.checksum && fnv1a64(join_ints(r.vector.entries())) != *r.checksum)
        throw Error(ErrorKind::ParseError, "checksum mismatch in fixture '" + r.name + "'");
    return r;
}

inline std::vector<FixtureRecord> parse_fixture_text(std::string_view text) {
    std::vector<FixtureRecord> out;
    std::size_t line_no = 0;
    for (auto line : split(text, '\n')) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        try {
            out.push_back(parse_fixture_line(line));
        } catch (const Error& e) {
            throw Error(e.kind(), "line " + std::to_string(line_no) + ": " + e.detail());
        }
    }
    return out;
}

inline std::string serialize_fixture(const FixtureRecord& r, bool with_checksum = false) {
    std::string tags;
    for (const auto& t : r.tags) tags += (tags.empty() ? "" : ",") + t;
    const std::string entries = join_ints(r.vector.entries());
    std::string out = "p=" + std::to_string(r.params.p) + " q=" + std::to_string(r.params.q) + " name=" + r.name +
                      " tags=" + tags + " entries=" + entries;
    if (with_checksum || r.checksum) out += " checksum=fnv1a64:" + hex64(fnv1a64(entries));
    return out;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// A vector argument: either "1,0,0,..." or "@path". A file holds fixture records or
/// bare comma-separated lines; only the first record is used.
struct VectorSource {
    IntVector entries;
    std::optional<LensParams> params;
};

inline VectorSource read_vector_argument(std::string_view arg) {
    arg = trim(arg);
    if (arg.empty() || arg.front() != '@') return {parse_int_list(arg), std::nullopt};
    const std::string text = read_file(std::string(arg.substr(1)));
    for (auto line : split(text, '\n')) {
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        if (line.find('=') != std::string_view::npos) {
            auto r = parse_fixture_line(line);
            return {r.vector.entries(), r.params};
        }
        return {parse_int_list(line), std::nullopt};
    }
    throw Error(ErrorKind::ParseError, "no vector in file: " + std::string(arg.substr(1)));
}

} // namespace qlens
