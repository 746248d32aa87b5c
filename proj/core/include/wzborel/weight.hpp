#pragma once

#include <algorithm>
#include <compare>
#include <limits>
#include <string>

namespace wzborel {

/// Integer grading extended by negative infinity (the weight of zero).
class Weight {
public:
    constexpr Weight() = default; // -inf
    constexpr Weight(int value) : value_(value), finite_(true) {} // NOLINT(google-explicit-constructor)

    static constexpr Weight neg_inf() { return Weight(); }

    constexpr bool is_finite() const noexcept { return finite_; }
    constexpr int value() const noexcept { return finite_ ? value_ : std::numeric_limits<int>::min(); }

    friend constexpr Weight operator+(Weight a, Weight b)
    {
        return (a.finite_ && b.finite_) ? Weight(a.value_ + b.value_) : Weight();
    }
    friend constexpr Weight operator-(Weight a, int b) { return a.finite_ ? Weight(a.value_ - b) : a; }

    friend constexpr bool operator==(Weight a, Weight b)
    {
        return a.finite_ == b.finite_ && (!a.finite_ || a.value_ == b.value_);
    }
    friend constexpr std::strong_ordering operator<=>(Weight a, Weight b)
    {
        if (!a.finite_ || !b.finite_) {
            return a.finite_ <=> b.finite_;
        }
        return a.value_ <=> b.value_;
    }

    std::string str() const { return finite_ ? std::to_string(value_) : std::string("-inf"); }

private:
    int value_ = 0;
    bool finite_ = false;
};

constexpr Weight max(Weight a, Weight b) { return a < b ? b : a; }

} // namespace wzborel
