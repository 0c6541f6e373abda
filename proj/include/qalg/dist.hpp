#pragma once

#include <cstdint>
#include <functional>
#include <string>

namespace qalg {

// Extended nonnegative rational distance: a reduced fraction p/q or infinity.
// Infinity is encoded as den == 0.  Addition saturates at infinity; the order
// is total with infinity as top.  All arithmetic is exact.
class Dist {
public:
    Dist() : num_(0), den_(1) {}
    Dist(std::int64_t num, std::int64_t den);

    static Dist zero() { return Dist(); }
    static Dist infinity() {
        Dist d;
        d.num_ = 1;
        d.den_ = 0;
        return d;
    }
    // Parses "p", "p/q" or "inf"; throws InputError otherwise.
    static Dist parse(const std::string& text);

    bool is_infinite() const { return den_ == 0; }
    bool is_zero() const { return !is_infinite() && num_ == 0; }
    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    Dist operator+(const Dist& o) const;
    bool operator==(const Dist& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Dist& o) const { return !(*this == o); }
    bool operator<(const Dist& o) const;
    bool operator<=(const Dist& o) const { return !(o < *this); }
    bool operator>(const Dist& o) const { return o < *this; }
    bool operator>=(const Dist& o) const { return !(*this < o); }

    std::string str() const;

    friend Dist min(const Dist& a, const Dist& b) { return a < b ? a : b; }
    friend Dist max(const Dist& a, const Dist& b) { return a < b ? b : a; }

private:
    std::int64_t num_;
    std::int64_t den_;  // 0 means infinity
};

}  // namespace qalg

template <>
struct std::hash<qalg::Dist> {
    std::size_t operator()(const qalg::Dist& d) const {
        return std::hash<std::int64_t>()(d.num()) * 1000003u ^
               std::hash<std::int64_t>()(d.den());
    }
};
