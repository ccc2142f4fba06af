#pragma once

#include <gangsched/task.hpp>

#include <optional>
#include <string>

namespace gangsched {

/// Piecewise weighting of a task utilization over [0, u_b]:
///
///   6/5 U                 for U <= u_b/6
///   9/5 U - u_b/10        for u_b/6 < U <= u_b/3
///   6/5 U + u_b/10        for u_b/3 < U <= u_b/2
///   6/5 U + 4 u_b/10      for u_b/2 < U <= u_b
///
/// Continuous at u_b/6 and u_b/3, jumps by 3/10 u_b just above u_b/2 and
/// reaches 8/5 u_b at u_b. Throws DomainViolation outside [0, u_b].
Rational weight_w(const Rational& utilization, const Rational& bound);

struct BoundCheck {
    bool holds = false;
    Rational lhs;
    Rational rhs;
    std::string reason;
};

struct Thm3Check : BoundCheck {
    /// Chosen divisor p; std::nullopt means unbounded (every u_i is zero).
    std::optional<long long> p;
};

/// sum W(U_i) <= (M - max volume) u_b. Inapplicable (false, reason
/// "domain-violation") when some U_i > u_b.
BoundCheck thm1_test(const TaskSet& tasks, int processors, const Rational& bound);

/// U <= (M - max volume + min volume) u_b / 2.
BoundCheck thm2_test(const TaskSet& tasks, int processors, const Rational& bound);

/// With p = floor(u_b / max u_i) >= 2: U <= p/(p+1) (M - max volume) u_b.
Thm3Check thm3_test(const TaskSet& tasks, int processors, const Rational& bound);

struct BoundReport {
    BoundCheck thm1;
    BoundCheck thm2;
    Thm3Check thm3;
    bool accepted = false;
};

/// SP-B: accepted iff any of the three bounds holds.
BoundReport sp_b(const TaskSet& tasks, int processors, const Rational& bound = Rational(1));

}  // namespace gangsched
