#include "nqsim/scenario.hpp"

#include <cmath>
#include <string>

#include "nqsim/errors.hpp"

namespace nqsim {

namespace {

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw InvalidParameterError(std::string(name) + " must be positive and finite");
    }
}

}  // namespace

void ScenarioConfig::validate() const {
    require_positive(lambda1, "lambda1");
    require_positive(lambda2, "lambda2");
    require_positive(mu1, "mu1");
    require_positive(mu2, "mu2");
    require_positive(horizon, "horizon");
    if (threshold < 0.0 || !std::isfinite(threshold)) {
        throw InvalidParameterError("threshold must be finite and non-negative");
    }
    if (threshold == 0.0 && model != Model::Fcfs) {
        throw InvalidParameterError("threshold 0 is only valid for the FCFS variant");
    }
    if (model == Model::X) {
        throw InvalidParameterError("X-model scenarios need two thresholds; use XConfig");
    }
}

DisciplineSpec ScenarioConfig::discipline() const {
    switch (model) {
        case Model::Or:
            return n_model_or(threshold);
        case Model::Ub:
            return n_model_ub(threshold);
        case Model::Fcfs:
            return n_model_fcfs();
        case Model::X:
            break;
    }
    throw InvalidParameterError("no single-threshold discipline for this model");
}

void XConfig::validate() const {
    require_positive(lambda1, "lambda1");
    require_positive(lambda2, "lambda2");
    require_positive(mu1, "mu1");
    require_positive(mu2, "mu2");
    require_positive(horizon, "horizon");
    require_positive(t1, "t1");
    require_positive(t2, "t2");
}

}  // namespace nqsim
