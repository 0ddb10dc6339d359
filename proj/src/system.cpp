#include "nqsim/system.hpp"

#include <cassert>

#include "nqsim/errors.hpp"

namespace nqsim {

void SystemState::apply(const Event& ev, const Job* arrival) {
    assert(ev.time >= last_update_);
    const double now = ev.time;
    switch (ev.kind) {
        case EventKind::Arrival1:
        case EventKind::Arrival2:
            assert(arrival != nullptr);
            on_arrival(*arrival, now);
            break;
        case EventKind::ThresholdExpiry:
            if (!disc_.has_threshold(JobType::Type1) &&
                !disc_.has_threshold(JobType::Type2)) {
                throw InvalidEventError(
                    "threshold expiry delivered to a zero-threshold discipline");
            }
            on_expiry(ev.job, now);
            break;
        case EventKind::PotentialCompletion1:
            on_completion(0, now);
            break;
        case EventKind::PotentialCompletion2:
            on_completion(1, now);
            break;
    }
    last_update_ = now;
#ifndef NDEBUG
    validate(now);
#endif
}

void SystemState::on_arrival(const Job& job, double now) {
    if (job.id > last_seen_id_) {
        last_seen_id_ = job.id;
    }
    if (try_start_fresh(job, /*aged=*/!disc_.has_threshold(job.type), now)) {
        return;
    }
    auto& q = queues_[type_index(job.type)];
    if (disc_.has_threshold(job.type)) {
        q.below.push_back(job);
    } else {
        q.past.push_back(job);
    }
}

void SystemState::on_expiry(JobId id, double now) {
    if (id > last_seen_id_) {
        throw CorruptedTraceError("threshold expiry for unknown job id");
    }
    // Expiries fire in arrival order within a type, so a still-waiting job
    // must be at the front of its below-threshold queue; anything else is a
    // stale timer for a job that already started service.
    for (auto& q : queues_) {
        if (!q.below.empty() && q.below.front().id == id) {
            const Job job = q.below.front();
            q.below.pop_front();
            if (!try_start_fresh(job, /*aged=*/true, now)) {
                q.past.push_back(job);
            }
            return;
        }
#ifndef NDEBUG
        for (const Job& j : q.below) assert(j.id != id);
        for (const Job& j : q.past) assert(j.id != id);
#endif
    }
}

void SystemState::on_completion(int server_idx, double now) {
    if (!server_[server_idx].has_value()) {
        return;  // potential completion at an idle server: nothing happens
    }
    record_departure(server_idx, now);
    server_[server_idx].reset();
    if (std::deque<Job>* q = pick_for_server(server_idx)) {
        const Job job = q->front();
        q->pop_front();
        start_service(job, server_idx, now);
    }
}

std::deque<Job>* SystemState::pick_for_server(int server_idx) {
    std::deque<Job>* best = nullptr;
    bool best_own = false;
    for (int t = 0; t < 2; ++t) {
        std::deque<Job>* cand = nullptr;
        switch (disc_.elig[server_idx][t]) {
            case Eligibility::Always:
                if (!queues_[t].past.empty()) {
                    cand = &queues_[t].past;
                } else if (!queues_[t].below.empty()) {
                    cand = &queues_[t].below;
                }
                break;
            case Eligibility::AfterThreshold:
                if (!queues_[t].past.empty()) {
                    cand = &queues_[t].past;
                }
                break;
            case Eligibility::Never:
                break;
        }
        if (cand == nullptr) {
            continue;
        }
        const bool own = (t == server_idx);
        const double key = disc_.rank_key(cand->front());
        const double best_key = best ? disc_.rank_key(best->front()) : 0.0;
        if (best == nullptr || key < best_key ||
            (key == best_key && own && !best_own)) {
            best = cand;
            best_own = own;
        }
    }
    return best;
}

bool SystemState::try_start_fresh(const Job& job, bool aged, double now) {
    const int t = type_index(job.type);
    const int own = t;  // server index matching the job's type
    for (int j : {own, 1 - own}) {
        if (server_[j].has_value()) {
            continue;
        }
        const Eligibility e = disc_.elig[j][t];
        if (e == Eligibility::Always || (e == Eligibility::AfterThreshold && aged)) {
            start_service(job, j, now);
            return true;
        }
    }
    return false;
}

void SystemState::start_service(const Job& job, int server_idx, double now) {
    server_[server_idx] = job;
    if (log_ != nullptr) {
        log_->open[server_idx] = static_cast<std::ptrdiff_t>(log_->records.size());
        log_->records.push_back(ServiceRecord{job.id, server_idx + 1, now, -1.0});
    }
}

void SystemState::record_departure(int server_idx, double now) {
    if (log_ != nullptr && log_->open[server_idx] >= 0) {
        log_->records[static_cast<std::size_t>(log_->open[server_idx])].departure =
            now;
        log_->open[server_idx] = -1;
    }
}

Counters SystemState::counters() const {
    Counters c;
    c.q1_minus = static_cast<int>(queues_[0].below.size());
    c.q1_plus = static_cast<int>(queues_[0].past.size());
    c.q2 = static_cast<int>(queues_[1].below.size() + queues_[1].past.size());
    c.r1 = server_[0].has_value() ? 1 : 0;
    if (server_[1].has_value()) {
        (server_[1]->type == JobType::Type2 ? c.r2 : c.r3) = 1;
    }
    return c;
}

void SystemState::validate(double now, bool deep) const {
    auto expiry_of = [&](const Job& j) {
        return j.arrival_time + disc_.threshold[type_index(j.type)];
    };
    for (int t = 0; t < 2; ++t) {
        const auto& q = queues_[t];
        if (!disc_.has_threshold(static_cast<JobType>(t))) {
            assert(q.below.empty());
        }
        if (!q.below.empty()) {
            assert(expiry_of(q.below.front()) > now);
        }
        if (!q.past.empty() && disc_.has_threshold(static_cast<JobType>(t))) {
            assert(expiry_of(q.past.back()) <= now);
        }
        if (!q.past.empty() && !q.below.empty()) {
            assert(q.past.back().id < q.below.front().id);
        }
        if (deep) {
            for (const auto* dq : {&q.below, &q.past}) {
                for (std::size_t i = 0; i + 1 < dq->size(); ++i) {
                    assert((*dq)[i].id < (*dq)[i + 1].id);
                    assert((*dq)[i].arrival_time <= (*dq)[i + 1].arrival_time);
                }
                for (const Job& j : *dq) {
                    assert(type_index(j.type) == t);
                }
            }
            for (const Job& j : q.below) assert(expiry_of(j) > now);
            for (const Job& j : q.past) {
                if (disc_.has_threshold(static_cast<JobType>(t))) {
                    assert(expiry_of(j) <= now);
                }
            }
        }
    }
    // Non-idling with respect to each server's eligible jobs.
    for (int j = 0; j < 2; ++j) {
        if (server_[j].has_value()) {
            continue;
        }
        for (int t = 0; t < 2; ++t) {
            switch (disc_.elig[j][t]) {
                case Eligibility::Always:
                    assert(queues_[t].below.empty() && queues_[t].past.empty());
                    break;
                case Eligibility::AfterThreshold:
                    assert(queues_[t].past.empty());
                    break;
                case Eligibility::Never:
                    break;
            }
        }
    }
    // Server 1 only ever holds type-1 jobs in the N-model.
    if (server_[0].has_value() && disc_.elig[0][1] == Eligibility::Never) {
        assert(server_[0]->type == JobType::Type1);
    }
    (void)now;
}

}  // namespace nqsim
