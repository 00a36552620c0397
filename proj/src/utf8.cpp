#include "phonodetect/utf8.hpp"

#include <map>
#include <utility>

namespace phonodetect::utf8 {

char32_t decode_one(std::string_view s, size_t& pos) {
    const auto b0 = static_cast<unsigned char>(s[pos]);
    if (b0 < 0x80) {
        ++pos;
        return b0;
    }
    int extra = 0;
    char32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
        extra = 1;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        extra = 2;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        extra = 3;
        cp = b0 & 0x07;
    } else {
        ++pos;
        return 0xFFFD;
    }
    if (pos + static_cast<size_t>(extra) >= s.size()) {
        ++pos;
        return 0xFFFD;
    }
    for (int i = 1; i <= extra; ++i) {
        const auto b = static_cast<unsigned char>(s[pos + i]);
        if ((b & 0xC0) != 0x80) {
            ++pos;
            return 0xFFFD;
        }
        cp = (cp << 6) | (b & 0x3F);
    }
    pos += extra + 1;
    return cp;
}

std::vector<char32_t> decode(std::string_view s) {
    std::vector<char32_t> out;
    out.reserve(s.size());
    size_t pos = 0;
    while (pos < s.size()) out.push_back(decode_one(s, pos));
    return out;
}

std::string encode_one(char32_t cp) {
    std::string out;
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
    return out;
}

std::string encode(const std::vector<char32_t>& cps) {
    std::string out;
    for (char32_t cp : cps) out += encode_one(cp);
    return out;
}

size_t length(std::string_view s) {
    size_t n = 0, pos = 0;
    while (pos < s.size()) {
        decode_one(s, pos);
        ++n;
    }
    return n;
}

namespace {

// (base, combining mark) -> precomposed code point.
const std::map<std::pair<char32_t, char32_t>, char32_t>& composition_table() {
    static const std::map<std::pair<char32_t, char32_t>, char32_t> table = [] {
        std::map<std::pair<char32_t, char32_t>, char32_t> t;
        struct Row {
            char32_t mark;
            const char32_t* bases;
            const char32_t* composed;
        };
        // acute 0301
        static const char32_t ac_b[] = {U'a', U'e', U'i', U'o', U'u', U'y', U'n', 0};
        static const char32_t ac_c[] = {0xE1, 0xE9, 0xED, 0xF3, 0xFA, 0xFD, 0x144, 0};
        // grave 0300
        static const char32_t gr_b[] = {U'a', U'e', U'i', U'o', U'u', 0};
        static const char32_t gr_c[] = {0xE0, 0xE8, 0xEC, 0xF2, 0xF9, 0};
        // circumflex 0302
        static const char32_t ci_b[] = {U'a', U'e', U'i', U'o', U'u', 0};
        static const char32_t ci_c[] = {0xE2, 0xEA, 0xEE, 0xF4, 0xFB, 0};
        // tilde 0303
        static const char32_t ti_b[] = {U'a', U'e', U'i', U'o', U'u', U'n', 0};
        static const char32_t ti_c[] = {0xE3, 0x1EBD, 0x129, 0xF5, 0x169, 0xF1, 0};
        // macron 0304
        static const char32_t ma_b[] = {U'a', U'e', U'i', U'o', U'u', 0};
        static const char32_t ma_c[] = {0x101, 0x113, 0x12B, 0x14D, 0x16B, 0};
        // breve 0306
        static const char32_t br_b[] = {U'a', U'e', U'i', U'o', U'u', 0};
        static const char32_t br_c[] = {0x103, 0x115, 0x12D, 0x14F, 0x16D, 0};
        // diaeresis 0308
        static const char32_t di_b[] = {U'a', U'e', U'i', U'o', U'u', 0};
        static const char32_t di_c[] = {0xE4, 0xEB, 0xEF, 0xF6, 0xFC, 0};
        // caron 030C
        static const char32_t ca_b[] = {U'a', U'e', U'i', U'o', U'u', U'c', U's', U'z', 0};
        static const char32_t ca_c[] = {0x1CE, 0x11B, 0x1D0, 0x1D2, 0x1D4, 0x10D, 0x161, 0x17E, 0};
        // ring above 030A
        static const char32_t ri_b[] = {U'a', U'u', 0};
        static const char32_t ri_c[] = {0xE5, 0x16F, 0};
        // dot above 0307
        static const char32_t do_b[] = {U'z', 0};
        static const char32_t do_c[] = {0x17C, 0};
        const Row rows[] = {
            {0x0301, ac_b, ac_c}, {0x0300, gr_b, gr_c}, {0x0302, ci_b, ci_c},
            {0x0303, ti_b, ti_c}, {0x0304, ma_b, ma_c}, {0x0306, br_b, br_c},
            {0x0308, di_b, di_c}, {0x030C, ca_b, ca_c}, {0x030A, ri_b, ri_c},
            {0x0307, do_b, do_c},
        };
        for (const auto& r : rows)
            for (int i = 0; r.bases[i]; ++i) t[{r.bases[i], r.mark}] = r.composed[i];
        return t;
    }();
    return table;
}

}  // namespace

std::string compose(std::string_view s) {
    const auto& table = composition_table();
    std::vector<char32_t> cps = decode(s);
    std::vector<char32_t> out;
    out.reserve(cps.size());
    for (char32_t cp : cps) {
        if (!out.empty()) {
            auto it = table.find({out.back(), cp});
            if (it != table.end()) {
                out.back() = it->second;
                continue;
            }
        }
        out.push_back(cp);
    }
    return encode(out);
}

}  // namespace phonodetect::utf8
