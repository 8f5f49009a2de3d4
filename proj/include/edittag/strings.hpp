#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace edittag {

// Minimal UTF-8 support: enough to change case at scalar positions without
// corrupting multi-byte sequences. Case tables cover ASCII and Latin-1
// (plus the y-with-diaeresis pair); anything else passes through unchanged.

inline std::vector<char32_t> utf8_decode(const std::string& s) {
    std::vector<char32_t> out;
    size_t i = 0;
    while (i < s.size()) {
        unsigned char b = static_cast<unsigned char>(s[i]);
        char32_t cp;
        size_t len;
        if (b < 0x80) {
            cp = b;
            len = 1;
        } else if ((b & 0xE0) == 0xC0) {
            cp = b & 0x1F;
            len = 2;
        } else if ((b & 0xF0) == 0xE0) {
            cp = b & 0x0F;
            len = 3;
        } else if ((b & 0xF8) == 0xF0) {
            cp = b & 0x07;
            len = 4;
        } else {
            // Stray continuation byte: keep it as-is so round-trips don't lose data.
            out.push_back(0xDC00 + b);
            ++i;
            continue;
        }
        if (i + len > s.size()) {
            out.push_back(0xDC00 + b);
            ++i;
            continue;
        }
        bool ok = true;
        for (size_t k = 1; k < len; ++k) {
            unsigned char c = static_cast<unsigned char>(s[i + k]);
            if ((c & 0xC0) != 0x80) {
                ok = false;
                break;
            }
            cp = (cp << 6) | (c & 0x3F);
        }
        if (!ok) {
            out.push_back(0xDC00 + b);
            ++i;
            continue;
        }
        out.push_back(cp);
        i += len;
    }
    return out;
}

inline void utf8_append(std::string& s, char32_t cp) {
    if (cp >= 0xDC00 && cp <= 0xDCFF) {  // raw byte escaped by the decoder
        s.push_back(static_cast<char>(cp - 0xDC00));
    } else if (cp < 0x80) {
        s.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        s.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        s.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        s.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        s.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        s.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        s.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        s.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        s.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        s.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

inline std::string utf8_encode(const std::vector<char32_t>& cps) {
    std::string out;
    for (char32_t cp : cps) utf8_append(out, cp);
    return out;
}

inline char32_t cp_to_upper(char32_t cp) {
    if (cp >= U'a' && cp <= U'z') return cp - 0x20;
    if (cp >= 0xE0 && cp <= 0xFE && cp != 0xF7) return cp - 0x20;  // Latin-1, skip division sign
    if (cp == 0xFF) return 0x178;                                  // y diaeresis
    return cp;
}

inline char32_t cp_to_lower(char32_t cp) {
    if (cp >= U'A' && cp <= U'Z') return cp + 0x20;
    if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;  // Latin-1, skip multiplication sign
    if (cp == 0x178) return 0xFF;
    return cp;
}

inline std::string to_lower(const std::string& s) {
    auto cps = utf8_decode(s);
    for (auto& cp : cps) cp = cp_to_lower(cp);
    return utf8_encode(cps);
}

inline std::string to_upper(const std::string& s) {
    auto cps = utf8_decode(s);
    for (auto& cp : cps) cp = cp_to_upper(cp);
    return utf8_encode(cps);
}

// Uppercase the scalar at the given position (0 or 1 in practice). Returns
// the input unchanged if the string is too short.
inline std::string upper_at(const std::string& s, size_t pos) {
    auto cps = utf8_decode(s);
    if (pos >= cps.size()) return s;
    cps[pos] = cp_to_upper(cps[pos]);
    return utf8_encode(cps);
}

inline size_t scalar_count(const std::string& s) { return utf8_decode(s).size(); }

inline std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

inline std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> out;
    size_t start = 0;
    for (size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

// FNV-1a, 64-bit, rendered as 16 hex digits. Used to fingerprint vocabulary
// files inside prediction records.
inline uint64_t fnv1a64(const std::string& data, uint64_t h = 0xcbf29ce484222325ull) {
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::string hex64(uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[v & 0xF];
        v >>= 4;
    }
    return out;
}

}  // namespace edittag
