#pragma once

namespace nqsim {

/// Job count of a single-server queue driven by an arrival stream and a
/// potential-completion stream: a completion jump with an empty system does
/// nothing.
struct Mm1State {
    long n_jobs = 0;
};

enum class Mm1Event { Arrival, PotentialCompletion };

inline Mm1State mm1_step(Mm1State state, Mm1Event event) {
    switch (event) {
        case Mm1Event::Arrival:
            ++state.n_jobs;
            break;
        case Mm1Event::PotentialCompletion:
            if (state.n_jobs > 0) --state.n_jobs;
            break;
    }
    return state;
}

}  // namespace nqsim
