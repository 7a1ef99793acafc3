#include "imago/rational.hpp"

#include <cctype>

#include "imago/errors.hpp"

namespace imago {

Rat make_rat(long num, long den) {
    if (den == 0) {
        throw DomainError("rational with zero denominator");
    }
    Rat q(num, den);
    q.canonicalize();
    return q;
}

Rat parse_rat(const std::string& text) {
    auto bad = [&] { return ParseError("malformed rational '" + text + "', expected \"p/q\""); };
    if (text.empty()) {
        throw bad();
    }
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '/' ||
            ((c == '-' || c == '+') && (i == 0 || text[i - 1] == '/'))) {
            continue;
        }
        throw bad();
    }
    mpq_class q;
    if (q.set_str(text, 10) != 0) {
        throw bad();
    }
    if (q.get_den() == 0) {
        throw ParseError("rational '" + text + "' has zero denominator");
    }
    q.canonicalize();
    return q;
}

std::string rat_str(const Rat& value) {
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

} // namespace imago
