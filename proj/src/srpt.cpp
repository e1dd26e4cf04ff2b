#include <pollbench/srpt.hpp>

#include <algorithm>
#include <stdexcept>

namespace pollbench {

void SrptSimulator::add_job(int ordinal, Time release, Time work) {
    if (release < now_) throw std::logic_error("srpt: job released in the past");
    if (!pending_.empty() && release < pending_.back().release)
        throw std::logic_error("srpt: releases must be fed in order");
    pending_.push_back(Pending{ordinal, release, work});
}

std::size_t SrptSimulator::running_index() const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < active_.size(); ++i) {
        const Active& a = active_[i];
        const Active& b = active_[best];
        if (a.remaining != b.remaining) {
            if (a.remaining < b.remaining) best = i;
        } else if (a.release != b.release) {
            if (a.release < b.release) best = i;
        } else if (a.ordinal < b.ordinal) {
            best = i;
        }
    }
    return best;
}

void SrptSimulator::finish_at(const std::vector<std::size_t>& idx, const Time& t) {
    // Record simultaneous completions ordered by (release, ordinal).
    std::vector<std::size_t> order = idx;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (active_[a].release != active_[b].release) return active_[a].release < active_[b].release;
        return active_[a].ordinal < active_[b].ordinal;
    });
    for (std::size_t i : order) {
        completed_order_.push_back(active_[i].ordinal);
        completion_times_[active_[i].ordinal] = t;
    }
    std::vector<Active> rest;
    for (std::size_t i = 0; i < active_.size(); ++i)
        if (std::find(idx.begin(), idx.end(), i) == idx.end()) rest.push_back(active_[i]);
    active_ = std::move(rest);
}

void SrptSimulator::advance(const Time& t) {
    if (t < now_) throw std::logic_error("srpt: advance into the past");
    while (true) {
        std::optional<Time> release_t;
        if (!pending_.empty()) release_t = pending_.front().release;

        std::optional<Time> finish_t;
        if (!active_.empty()) finish_t = now_ + active_[running_index()].remaining;

        std::optional<Time> next;
        if (release_t && *release_t <= t) next = release_t;
        if (finish_t && *finish_t <= t && (!next || *finish_t < *next)) next = finish_t;
        if (!next) break;

        Time step = *next;
        std::vector<std::size_t> done;
        if (!active_.empty()) {
            std::size_t run = running_index();
            active_[run].remaining -= (step - now_);
            if (active_[run].remaining.is_zero()) done.push_back(run);
        }
        now_ = step;

        // Releases at this instant come first; zero-work jobs complete here.
        std::vector<std::size_t> zero_releases;
        while (!pending_.empty() && pending_.front().release == now_) {
            const Pending& p = pending_.front();
            active_.push_back(Active{p.ordinal, p.release, p.work});
            if (p.work.is_zero()) zero_releases.push_back(active_.size() - 1);
            pending_.pop_front();
        }
        for (std::size_t z : zero_releases) done.push_back(z);
        if (!done.empty()) finish_at(done, now_);
    }
    if (!active_.empty()) {
        // Partial progress only: a completion at or before t was handled above.
        active_[running_index()].remaining -= (t - now_);
    }
    now_ = t;
}

void SrptSimulator::run_to_end() {
    while (!pending_.empty() || !active_.empty()) {
        std::optional<Time> nc = next_completion();
        Time target = nc ? *nc : pending_.front().release;
        advance(target);
    }
}

std::optional<Time> SrptSimulator::next_completion() const {
    if (active_.empty()) {
        if (pending_.empty()) return std::nullopt;
        // Nothing running: the earliest pending job bounds the next event.
        const Pending& p = pending_.front();
        return p.release + p.work;
    }
    return now_ + active_[running_index()].remaining;
}

Time SrptSimulator::total_completion() const {
    Time total(0);
    for (const auto& [ordinal, t] : completion_times_) {
        (void)ordinal;
        total += t;
    }
    return total;
}

} // namespace pollbench
