#include "prejsim/experience_store.hpp"

#include <algorithm>
#include <string>

#include "prejsim/errors.hpp"

namespace prejsim {

ExperienceStore::ExperienceStore(std::size_t agent_count, std::size_t capacity)
    : agent_count_(agent_count),
      capacity_(capacity),
      slot_index_(agent_count * agent_count, kNoWindow) {
    if (capacity == 0) {
        throw ConfigError("memory size must be at least 1");
    }
}

void ExperienceStore::record(AgentId observer, AgentId partner, double coop) {
    if (!(coop >= 0.0 && coop <= 1.0)) {
        throw DomainError("recorded cooperation " + std::to_string(coop) + " outside [0, 1]");
    }
    auto& idx = slot_index_[static_cast<std::size_t>(observer) * agent_count_ + partner];
    if (idx == kNoWindow) {
        idx = static_cast<std::int32_t>(windows_.size());
        windows_.emplace_back();
        values_.resize(values_.size() + capacity_, 0.0);
    }
    Window& w = windows_[static_cast<std::size_t>(idx)];
    double* base = values_.data() + static_cast<std::size_t>(idx) * capacity_;
    if (w.count < capacity_) {
        base[(w.head + w.count) % capacity_] = coop;
        ++w.count;
    } else {
        base[w.head] = coop;
        w.head = static_cast<std::uint32_t>((w.head + 1) % capacity_);
    }
}

std::vector<double> ExperienceStore::recall(AgentId observer, AgentId partner) const {
    const auto idx = slot(observer, partner);
    if (idx == kNoWindow) return {};
    const Window& w = windows_[static_cast<std::size_t>(idx)];
    const double* base = values_.data() + static_cast<std::size_t>(idx) * capacity_;
    std::vector<double> out;
    out.reserve(w.count);
    for (std::size_t i = 0; i < w.count; ++i) {
        out.push_back(base[(w.head + i) % capacity_]);
    }
    return out;
}

std::optional<double> ExperienceStore::mean(AgentId observer, AgentId partner) const {
    const auto idx = slot(observer, partner);
    if (idx == kNoWindow) return std::nullopt;
    const Window& w = windows_[static_cast<std::size_t>(idx)];
    const double* base = values_.data() + static_cast<std::size_t>(idx) * capacity_;
    // Summed in insertion order so the result does not depend on ring position.
    double sum = 0.0;
    for (std::size_t i = 0; i < w.count; ++i) {
        sum += base[(w.head + i) % capacity_];
    }
    return sum / static_cast<double>(w.count);
}

std::size_t ExperienceStore::length(AgentId observer, AgentId partner) const {
    const auto idx = slot(observer, partner);
    return idx == kNoWindow ? 0 : windows_[static_cast<std::size_t>(idx)].count;
}

std::size_t ExperienceStore::max_length() const noexcept {
    std::size_t best = 0;
    for (const auto& w : windows_) best = std::max<std::size_t>(best, w.count);
    return best;
}

}  // namespace prejsim
