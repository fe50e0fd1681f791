#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace probprog {

// Name of one random choice inside a trace. Segments mirror the program's
// control path, so re-executing along the same path yields the same address.
class Address {
public:
    using Segment = std::variant<std::int64_t, std::string>;

    Address() = default;
    explicit Address(std::vector<Segment> path) : path_(std::move(path)) {}

    template <typename... Parts>
    static Address of(Parts&&... parts) {
        Address a;
        a.path_.reserve(sizeof...(parts));
        (a.push(std::forward<Parts>(parts)), ...);
        return a;
    }

    const std::vector<Segment>& path() const { return path_; }

    bool operator==(const Address& other) const { return path_ == other.path_; }
    bool operator<(const Address& other) const { return path_ < other.path_; }

    std::string str() const {
        std::string out;
        for (std::size_t i = 0; i < path_.size(); ++i) {
            if (i > 0) out += '/';
            if (std::holds_alternative<std::int64_t>(path_[i]))
                out += std::to_string(std::get<std::int64_t>(path_[i]));
            else
                out += std::get<std::string>(path_[i]);
        }
        return out;
    }

private:
    void push(std::int64_t v) { path_.emplace_back(v); }
    void push(int v) { path_.emplace_back(static_cast<std::int64_t>(v)); }
    void push(std::size_t v) { path_.emplace_back(static_cast<std::int64_t>(v)); }
    void push(const char* s) { path_.emplace_back(std::string(s)); }
    void push(std::string s) { path_.emplace_back(std::move(s)); }

    std::vector<Segment> path_;
};

} // namespace probprog
