#include "rturan/rational.hpp"

#include <charconv>
#include <stdexcept>

namespace rturan {

std::string to_string(const Rational& r) {
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(const std::string& text) {
    auto parse = [&](std::string_view s) {
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
            throw std::invalid_argument("malformed rational '" + text + "'");
        }
        return v;
    };
    std::string_view s(text);
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rational(parse(s));
    std::int64_t den = parse(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    return Rational(parse(s.substr(0, slash)), den);
}

}  // namespace rturan
