#pragma once

namespace prejsim {

/// Discrete prisoner's dilemma payoffs. Construction enforces
/// T > C > D > S and 2C > T + S.
class PayoffParams {
public:
    PayoffParams() = default;
    PayoffParams(double cooperate, double temptation, double defect, double sucker);

    double cooperate() const noexcept { return cooperate_; }
    double temptation() const noexcept { return temptation_; }
    double defect() const noexcept { return defect_; }
    double sucker() const noexcept { return sucker_; }

    friend bool operator==(const PayoffParams&, const PayoffParams&) = default;

private:
    double cooperate_ = 3.0;
    double temptation_ = 5.0;
    double defect_ = 1.0;
    double sucker_ = 0.0;
};

struct PayoffPair {
    double first;
    double second;
};

/// Continuous prisoner's dilemma: the discrete payoff matrix interpolated
/// bilinearly in both players' cooperation levels. Throws DomainError when
/// either level lies outside [0, 1].
PayoffPair payoff(double c0, double c1, const PayoffParams& params = {});

}  // namespace prejsim
