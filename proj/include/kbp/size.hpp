#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace kbp {

// Non-negative fixed-point quantity in micro-units (1 unit = 10^6 micro).
class Size {
public:
    static constexpr std::int64_t scale = 1'000'000;

    constexpr Size() = default;

    static constexpr Size micro(std::int64_t v) { return Size(v); }
    static constexpr Size units(std::int64_t v) { return Size(v * scale); }
    // Rounds to the nearest micro-unit.
    static Size from_double(double v);
    // Decimal string such as "12.5"; at most 6 fractional digits.
    static Size parse(std::string_view text);

    constexpr std::int64_t raw() const { return v_; }
    double to_double() const { return static_cast<double>(v_) / scale; }
    // Shortest decimal form: "3", "12.5", "0.000001".
    std::string to_string() const;

    constexpr auto operator<=>(const Size&) const = default;

    constexpr Size& operator+=(Size o) { v_ += o.v_; return *this; }
    constexpr Size& operator-=(Size o) { v_ -= o.v_; return *this; }
    friend constexpr Size operator+(Size a, Size b) { return Size(a.v_ + b.v_); }
    friend constexpr Size operator-(Size a, Size b) { return Size(a.v_ - b.v_); }
    friend constexpr Size operator*(Size a, std::int64_t f) { return Size(a.v_ * f); }
    friend constexpr Size operator*(std::int64_t f, Size a) { return Size(a.v_ * f); }

private:
    constexpr explicit Size(std::int64_t v) : v_(v) {}
    std::int64_t v_ = 0;
};

}  // namespace kbp
