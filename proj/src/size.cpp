#include "kbp/size.hpp"

#include <cmath>

#include "kbp/errors.hpp"

namespace kbp {

Size Size::from_double(double v)
{
    if (!std::isfinite(v) || v < 0)
        throw ParseError("size must be a finite non-negative number");
    return Size(static_cast<std::int64_t>(std::llround(v * scale)));
}

Size Size::parse(std::string_view text)
{
    auto fail = [&](const char* why) {
        return ParseError("bad size '" + std::string(text) + "': " + why);
    };
    if (text.empty()) throw fail("empty");
    std::size_t i = 0;
    if (text[0] == '+') ++i;
    std::int64_t whole = 0;
    bool digits = false;
    for (; i < text.size() && text[i] >= '0' && text[i] <= '9'; ++i) {
        digits = true;
        if (whole > (INT64_MAX / scale - 9) / 10) throw fail("too large");
        whole = whole * 10 + (text[i] - '0');
    }
    std::int64_t frac = 0;
    int places = 0;
    if (i < text.size() && text[i] == '.') {
        ++i;
        for (; i < text.size() && text[i] >= '0' && text[i] <= '9'; ++i) {
            digits = true;
            if (++places > 6) throw fail("more than 6 decimal places");
            frac = frac * 10 + (text[i] - '0');
        }
    }
    if (!digits || i != text.size()) throw fail("not a decimal number");
    for (int p = places; p < 6; ++p) frac *= 10;
    return Size(whole * scale + frac);
}

std::string Size::to_string() const
{
    std::int64_t whole = v_ / scale;
    std::int64_t frac = v_ % scale;
    std::string s = std::to_string(whole);
    if (frac == 0) return s;
    std::string f = std::to_string(frac);
    f.insert(0, 6 - f.size(), '0');
    while (f.back() == '0') f.pop_back();
    return s + "." + f;
}

}  // namespace kbp
