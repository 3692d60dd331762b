#include "ternion/csv.hpp"

#include <charconv>
#include <ostream>

namespace ternion::csv {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void Writer::header(std::initializer_list<std::string_view> names) {
    bool first = true;
    for (auto n : names) {
        if (!first) os_ << ',';
        os_ << n;
        first = false;
    }
    os_ << '\n';
}

void Writer::row(std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
        if (!first) os_ << ',';
        os_ << format_double(v);
        first = false;
    }
    os_ << '\n';
}

void Writer::cells(const std::vector<std::string>& cells) {
    bool first = true;
    for (const auto& c : cells) {
        if (!first) os_ << ',';
        os_ << c;
        first = false;
    }
    os_ << '\n';
}

}  // namespace ternion::csv
