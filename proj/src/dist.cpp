#include "qalg/dist.hpp"

#include <numeric>

#include "qalg/errors.hpp"

namespace qalg {

Dist::Dist(std::int64_t num, std::int64_t den) {
    if (num < 0 || den <= 0) throw InputError("distance must be a nonnegative rational");
    std::int64_t g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
}

Dist Dist::parse(const std::string& text) {
    if (text == "inf") return infinity();
    auto slash = text.find('/');
    auto is_digits = [](const std::string& s) {
        if (s.empty()) return false;
        for (char c : s)
            if (c < '0' || c > '9') return false;
        return true;
    };
    try {
        if (slash == std::string::npos) {
            if (!is_digits(text)) throw InputError("");
            return Dist(std::stoll(text), 1);
        }
        std::string p = text.substr(0, slash), q = text.substr(slash + 1);
        if (!is_digits(p) || !is_digits(q)) throw InputError("");
        return Dist(std::stoll(p), std::stoll(q));
    } catch (const std::exception&) {
        throw InputError("rational p/q expected, got '" + text + "'");
    }
}

Dist Dist::operator+(const Dist& o) const {
    if (is_infinite() || o.is_infinite()) return infinity();
    __int128 n = (__int128)num_ * o.den_ + (__int128)o.num_ * den_;
    __int128 d = (__int128)den_ * o.den_;
    // reduce in 128 bits before narrowing
    auto gcd128 = [](__int128 a, __int128 b) {
        while (b) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    };
    __int128 gg = gcd128(n, d);
    n /= gg;
    d /= gg;
    Dist r;
    r.num_ = (std::int64_t)n;
    r.den_ = (std::int64_t)d;
    return r;
}

bool Dist::operator<(const Dist& o) const {
    if (is_infinite()) return false;
    if (o.is_infinite()) return true;
    return (__int128)num_ * o.den_ < (__int128)o.num_ * den_;
}

std::string Dist::str() const {
    if (is_infinite()) return "inf";
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

}  // namespace qalg
