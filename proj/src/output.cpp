#include "stakesim/output.hpp"

#include <charconv>
#include <cmath>

namespace stakesim {

std::string format_double(double v, int precision) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto [ptr, ec] =
        precision > 0
            ? std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, precision)
            : std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, ptr);
}

double apply_precision(double v, int precision) {
    if (precision <= 0 || !std::isfinite(v)) return v;
    const std::string s = format_double(v, precision);
    double out = v;
    std::from_chars(s.data(), s.data() + s.size(), out);
    return out;
}

std::string csv_escape(std::string_view field) {
    if (field.find_first_of(",\"\n") == std::string_view::npos) {
        return std::string(field);
    }
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

}  // namespace stakesim
