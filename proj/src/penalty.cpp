#include "bnsl/penalty.hpp"

#include <cstdio>

namespace bnsl {

namespace {

double parse_number(const std::string& text, const std::string& flag) {
    std::size_t consumed = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &consumed);
    } catch (const std::exception&) {
        throw InputError("penalty: malformed value in '" + flag + "'");
    }
    if (consumed != text.size()) {
        throw InputError("penalty: malformed value in '" + flag + "'");
    }
    return value;
}

}  // namespace

Penalty Penalty::parse(const std::string& flag) {
    if (flag == "bic") return half_log();
    if (flag.rfind("const:", 0) == 0) {
        return constant(parse_number(flag.substr(6), flag));
    }
    if (flag.rfind("poly:", 0) == 0) {
        return polynomial(parse_number(flag.substr(5), flag));
    }
    throw InputError("penalty: unknown penalty '" + flag +
                     "' (expected const:<c> | bic | poly:<alpha>)");
}

std::string Penalty::flag_string() const {
    char buf[64];
    switch (kind_) {
        case Kind::Constant:
            std::snprintf(buf, sizeof(buf), "const:%.12g", param_);
            return buf;
        case Kind::HalfLog:
            return "bic";
        case Kind::Polynomial:
        default:
            std::snprintf(buf, sizeof(buf), "poly:%.12g", param_);
            return buf;
    }
}

}  // namespace bnsl
