#include <gangsched/bounds.hpp>

#include <algorithm>
#include <limits>

namespace gangsched {

Rational weight_w(const Rational& utilization, const Rational& bound) {
    if (utilization < 0 || utilization > bound)
        throw Error(ErrorCode::DomainViolation, "utilization " + utilization.get_str() +
                                                    " outside [0, " + bound.get_str() + "]");
    const Rational& u = utilization;
    if (u <= bound / 6) return make_rational(6, 5) * u;
    if (u <= bound / 3) return make_rational(9, 5) * u - bound / 10;
    if (u <= bound / 2) return make_rational(6, 5) * u + bound / 10;
    return make_rational(6, 5) * u + make_rational(2, 5) * bound;
}

namespace {

bool fits_platform(const TaskSet& tasks, int processors, BoundCheck& check) {
    if (tasks.max_volume() > processors) {
        check.holds = false;
        check.reason = "platform-too-small";
        return false;
    }
    return true;
}

}  // namespace

BoundCheck thm1_test(const TaskSet& tasks, int processors, const Rational& bound) {
    BoundCheck check;
    check.rhs = Rational(processors - tasks.max_volume()) * bound;
    if (!fits_platform(tasks, processors, check)) return check;
    for (const auto& t : tasks) {
        if (t.utilization() > bound) {
            check.holds = false;
            check.reason = "domain-violation";
            return check;
        }
        check.lhs += weight_w(t.utilization(), bound);
    }
    check.holds = check.lhs <= check.rhs;
    check.reason = check.holds ? "ok" : "bound-exceeded";
    return check;
}

BoundCheck thm2_test(const TaskSet& tasks, int processors, const Rational& bound) {
    BoundCheck check;
    check.lhs = tasks.total_utilization();
    check.rhs = Rational(processors - tasks.max_volume() + tasks.min_volume()) * bound / 2;
    if (!fits_platform(tasks, processors, check)) return check;
    check.holds = check.lhs <= check.rhs;
    check.reason = check.holds ? "ok" : "bound-exceeded";
    return check;
}

Thm3Check thm3_test(const TaskSet& tasks, int processors, const Rational& bound) {
    Thm3Check check;
    check.lhs = tasks.total_utilization();
    if (!fits_platform(tasks, processors, check)) return check;
    if (tasks.empty()) {
        check.holds = true;
        check.reason = "unbounded";
        return check;
    }
    Rational max_u = 0;
    for (const auto& t : tasks) max_u = std::max(max_u, t.seq_utilization());

    const Rational ratio = bound / max_u;
    mpz_class p;
    mpz_fdiv_q(p.get_mpz_t(), ratio.get_num_mpz_t(), ratio.get_den_mpz_t());
    check.p = p.fits_slong_p() ? p.get_si() : std::numeric_limits<long>::max();
    if (p < 2) {
        check.holds = false;
        check.reason = "p-below-2";
        return check;
    }
    // A bigger p only loosens the bound, so the largest admissible p decides.
    const Rational p_rat(p);
    check.rhs = p_rat / (p_rat + 1) * Rational(processors - tasks.max_volume()) * bound;
    check.holds = check.lhs <= check.rhs;
    check.reason = check.holds ? "ok" : "bound-exceeded";
    return check;
}

BoundReport sp_b(const TaskSet& tasks, int processors, const Rational& bound) {
    BoundReport report;
    report.thm1 = thm1_test(tasks, processors, bound);
    report.thm2 = thm2_test(tasks, processors, bound);
    report.thm3 = thm3_test(tasks, processors, bound);
    report.accepted = report.thm1.holds || report.thm2.holds || report.thm3.holds;
    return report;
}

}  // namespace gangsched
