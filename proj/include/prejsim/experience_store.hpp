#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "prejsim/model.hpp"

namespace prejsim {

/// Bounded per-ordered-pair memory of observed cooperation levels.
///
/// Each (observer, partner) pair owns a FIFO window of at most `capacity`
/// values. Windows are allocated lazily the first time a pair records
/// anything; pairs that never met cost one slot-index entry and nothing else.
class ExperienceStore {
public:
    ExperienceStore() = default;
    ExperienceStore(std::size_t agent_count, std::size_t capacity);

    /// Appends `coop` to the pair's window, evicting the oldest value once the
    /// window is full. Throws DomainError if `coop` is outside [0, 1].
    void record(AgentId observer, AgentId partner, double coop);

    /// Window contents, oldest first. Empty if the pair never recorded.
    std::vector<double> recall(AgentId observer, AgentId partner) const;

    /// Arithmetic mean of the pair's window, or nullopt when it is empty.
    std::optional<double> mean(AgentId observer, AgentId partner) const;

    std::size_t length(AgentId observer, AgentId partner) const;

    std::size_t capacity() const noexcept { return capacity_; }
    std::size_t agent_count() const noexcept { return agent_count_; }
    /// Number of pairs with a non-empty window.
    std::size_t pair_count() const noexcept { return windows_.size(); }
    std::size_t max_length() const noexcept;

    template <typename Fn>
    void for_each_value(Fn&& fn) const {
        for (std::size_t w = 0; w < windows_.size(); ++w) {
            for (std::size_t i = 0; i < windows_[w].count; ++i) {
                fn(values_[w * capacity_ + i]);
            }
        }
    }

    friend bool operator==(const ExperienceStore&, const ExperienceStore&) = default;

private:
    static constexpr std::int32_t kNoWindow = -1;

    struct Window {
        std::uint32_t head = 0;   // index of the oldest value
        std::uint32_t count = 0;
        friend bool operator==(const Window&, const Window&) = default;
    };

    std::int32_t slot(AgentId observer, AgentId partner) const {
        return slot_index_[static_cast<std::size_t>(observer) * agent_count_ + partner];
    }

    std::size_t agent_count_ = 0;
    std::size_t capacity_ = 0;
    std::vector<std::int32_t> slot_index_;
    std::vector<Window> windows_;
    std::vector<double> values_;   // capacity_ values per window
};

}  // namespace prejsim
