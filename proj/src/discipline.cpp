#include "nqsim/discipline.hpp"

#include "nqsim/errors.hpp"

namespace nqsim {

namespace {

void require_positive(double t, const char* what) {
    if (t <= 0.0) {
        throw InvalidParameterError(std::string(what) + " must be > 0");
    }
}

void require_nonnegative(double t, const char* what) {
    if (t < 0.0) {
        throw InvalidParameterError(std::string(what) + " must be >= 0");
    }
}

}  // namespace

DisciplineSpec n_model_or(double t) {
    require_positive(t, "n_model_or: threshold");
    DisciplineSpec d;
    d.kind = DisciplineKind::NModelOr;
    d.elig[0] = {Eligibility::Always, Eligibility::Never};
    d.elig[1] = {Eligibility::AfterThreshold, Eligibility::Always};
    d.threshold = {t, 0.0};
    return d;
}

DisciplineSpec n_model_ub(double t, ServiceOrder order) {
    require_positive(t, "n_model_ub: threshold");
    DisciplineSpec d;
    d.kind = DisciplineKind::NModelUb;
    d.elig[0] = {Eligibility::AfterThreshold, Eligibility::Never};
    d.elig[1] = {Eligibility::AfterThreshold, Eligibility::Always};
    d.threshold = {t, 0.0};
    d.order = order;
    return d;
}

DisciplineSpec n_model_fcfs() {
    DisciplineSpec d;
    d.kind = DisciplineKind::NModelFcfs;
    d.elig[0] = {Eligibility::Always, Eligibility::Never};
    d.elig[1] = {Eligibility::Always, Eligibility::Always};
    d.threshold = {0.0, 0.0};
    return d;
}

// Zero thresholds are allowed for the X variants: the type is then eligible
// immediately, which makes the system coincide with plain FCFS.
DisciplineSpec x_model_or(double t1, double t2) {
    require_nonnegative(t1, "x_model_or: t1");
    require_nonnegative(t2, "x_model_or: t2");
    DisciplineSpec d;
    d.kind = DisciplineKind::XModelOr;
    d.elig[0] = {Eligibility::Always, Eligibility::AfterThreshold};
    d.elig[1] = {Eligibility::AfterThreshold, Eligibility::Always};
    d.threshold = {t1, t2};
    return d;
}

DisciplineSpec x_model_ub(double t1, double t2) {
    require_nonnegative(t1, "x_model_ub: t1");
    require_nonnegative(t2, "x_model_ub: t2");
    DisciplineSpec d;
    d.kind = DisciplineKind::XModelUb;
    d.elig[0] = {Eligibility::AfterThreshold, Eligibility::AfterThreshold};
    d.elig[1] = {Eligibility::AfterThreshold, Eligibility::AfterThreshold};
    d.threshold = {t1, t2};
    return d;
}

DisciplineSpec x_model_fcfs() {
    DisciplineSpec d;
    d.kind = DisciplineKind::XModelOr;
    d.elig[0] = {Eligibility::Always, Eligibility::Always};
    d.elig[1] = {Eligibility::Always, Eligibility::Always};
    d.threshold = {0.0, 0.0};
    return d;
}

std::string_view to_string(DisciplineKind k) {
    switch (k) {
        case DisciplineKind::NModelOr: return "or";
        case DisciplineKind::NModelUb: return "ub";
        case DisciplineKind::NModelFcfs: return "fcfs";
        case DisciplineKind::XModelOr: return "x_or";
        case DisciplineKind::XModelUb: return "x_ub";
    }
    return "unknown";
}

}  // namespace nqsim
