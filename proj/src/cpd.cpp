#include "prejsim/cpd.hpp"

#include <string>

#include "prejsim/errors.hpp"

namespace prejsim {

PayoffParams::PayoffParams(double cooperate, double temptation, double defect, double sucker)
    : cooperate_(cooperate), temptation_(temptation), defect_(defect), sucker_(sucker) {
    if (!(temptation > cooperate && cooperate > defect && defect > sucker)) {
        throw ConfigError("payoffs must satisfy T > C > D > S");
    }
    if (!(2.0 * cooperate > temptation + sucker)) {
        throw ConfigError("payoffs must satisfy 2C > T + S");
    }
}

namespace {

double one_sided(double own, double other, const PayoffParams& p) {
    const double own_bar = 1.0 - own;
    const double other_bar = 1.0 - other;
    return own * other * p.cooperate() + own * other_bar * p.sucker() +
           own_bar * other * p.temptation() + own_bar * other_bar * p.defect();
}

void check_level(double c, const char* name) {
    if (!(c >= 0.0 && c <= 1.0)) {
        throw DomainError(std::string("cooperation level ") + name + " = " + std::to_string(c) +
                          " outside [0, 1]");
    }
}

}  // namespace

PayoffPair payoff(double c0, double c1, const PayoffParams& params) {
    check_level(c0, "c0");
    check_level(c1, "c1");
    return {one_sided(c0, c1, params), one_sided(c1, c0, params)};
}

}  // namespace prejsim
