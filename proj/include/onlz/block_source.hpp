#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include <onlz/params.hpp>

namespace onlz {

/// \brief Pull-based character source.
///
/// Each pull fills up to out.size() characters and returns how many were
/// written; a full-size request is answered in full except at the end of the
/// input, where a short (possibly empty) block is returned.
class BlockSource {
public:
    virtual ~BlockSource() = default;
    virtual std::size_t pull(std::span<CharCode> out) = 0;
};

/// Serves characters from memory.
class SpanSource final : public BlockSource {
public:
    explicit SpanSource(std::span<CharCode const> data) : data_(data) {}

    std::size_t pull(std::span<CharCode> out) override {
        std::size_t const k = std::min(out.size(), data_.size() - pos_);
        std::copy_n(data_.begin() + pos_, k, out.begin());
        pos_ += k;
        return k;
    }

    std::size_t consumed() const { return pos_; }

private:
    std::span<CharCode const> data_;
    std::size_t pos_ = 0;
};

} // namespace onlz
