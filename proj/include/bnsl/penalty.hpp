#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "bnsl/errors.hpp"

namespace bnsl {

/**
 * Penalty weight function psi(N) applied per parameter in the penalized
 * score. Three families:
 *   constant(c)      psi(N) = c           (AIC-style, c > 0)
 *   half_log         psi(N) = log2(N)/2   (BIC)
 *   polynomial(a)    psi(N) = N^a         (0 < a < 1)
 */
class Penalty {
public:
    enum class Kind { Constant, HalfLog, Polynomial };

    static Penalty constant(double c) {
        if (!(c > 0.0)) throw InputError("penalty: constant weight must be > 0");
        return Penalty(Kind::Constant, c);
    }
    static Penalty half_log() { return Penalty(Kind::HalfLog, 0.0); }
    static Penalty polynomial(double alpha) {
        if (!(alpha > 0.0 && alpha < 1.0)) {
            throw InputError("penalty: polynomial exponent must be in (0, 1)");
        }
        return Penalty(Kind::Polynomial, alpha);
    }

    // Flag grammar: const:<c> | bic | poly:<alpha>.
    static Penalty parse(const std::string& flag);

    Kind kind() const { return kind_; }
    double parameter() const { return param_; }

    double weight(std::int64_t n_samples) const {
        if (n_samples < 1) throw InputError("penalty: sample count must be >= 1");
        switch (kind_) {
            case Kind::Constant: return param_;
            case Kind::HalfLog: return 0.5 * std::log2(static_cast<double>(n_samples));
            case Kind::Polynomial:
            default: return std::pow(static_cast<double>(n_samples), param_);
        }
    }

    std::string flag_string() const;

private:
    Penalty(Kind kind, double param) : kind_(kind), param_(param) {}

    Kind kind_;
    double param_;
};

}  // namespace bnsl
