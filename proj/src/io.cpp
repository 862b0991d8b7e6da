#include "semifrac/io.hpp"

#include "semifrac/errors.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

namespace semifrac {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    std::string text(buf.data(), res.ptr);
    // fixed notation prints large integers exactly; cap at 17 significant digits
    if (text.find('e') == std::string::npos) {
        const auto first = text.find_first_of("123456789");
        const auto last = text.find_last_of("123456789");
        const auto dot = text.find('.');
        std::size_t digits = first == std::string::npos ? 0 : last - first + 1;
        if (dot != std::string::npos && first < dot && dot < last) --digits;
        if (digits > 17) {
            res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::scientific);
            text.assign(buf.data(), res.ptr);
        }
    }
    return text;
}

namespace {

double parse_number(const std::string& token, const std::string& grid) {
    double v = 0.0;
    const char* first = token.data();
    const char* last = first + token.size();
    while (first < last && *first == ' ') ++first;
    while (last > first && last[-1] == ' ') --last;
    const auto res = std::from_chars(first, last, v);
    if (first == last || res.ec != std::errc() || res.ptr != last || !std::isfinite(v))
        throw DomainError("grid '" + grid + "': '" + token + "' is not a finite number");
    return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, sep)) parts.push_back(item);
    if (!text.empty() && text.back() == sep) parts.emplace_back();
    return parts;
}

} // namespace

std::vector<double> parse_grid(const std::string& text) {
    if (text.empty()) throw DomainError("grid is empty");
    const auto colon = split(text, ':');
    if (colon.size() > 1) {
        if (colon.size() != 4 || (colon[0] != "lin" && colon[0] != "log"))
            throw DomainError("grid '" + text + "': expected lin:a:b:n or log:a:b:n");
        const double a = parse_number(colon[1], text);
        const double b = parse_number(colon[2], text);
        const double n = parse_number(colon[3], text);
        if (n < 1 || n != std::floor(n) || n > 1e7) throw DomainError("grid '" + text + "': n must be a positive integer");
        const int count = static_cast<int>(n);
        const bool log = colon[0] == "log";
        if (log && !(a > 0.0 && b > 0.0)) throw DomainError("grid '" + text + "': log grids need positive ends");
        if (count == 1 && a != b) throw DomainError("grid '" + text + "': a single point needs a == b");
        std::vector<double> out(static_cast<std::size_t>(count));
        for (int j = 0; j < count; ++j) {
            const double w = count == 1 ? 0.0 : static_cast<double>(j) / (count - 1);
            out[j] = log ? std::exp(std::log(a) + w * (std::log(b) - std::log(a))) : a + w * (b - a);
        }
        out.back() = b;
        return out;
    }
    std::vector<double> out;
    for (const auto& token : split(text, ',')) out.push_back(parse_number(token, text));
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DomainError("cannot open '" + path + "' for writing");
    out << content;
    out.flush();
    if (!out) throw DomainError("failed writing '" + path + "'");
}

} // namespace semifrac
