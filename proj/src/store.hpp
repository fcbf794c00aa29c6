// Copyright 2026 The rtosmc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Visited-state stores. StateStore is single-threaded and hands out dense
// ids in insertion order; ShardedStore wraps 64 of them behind mutexes for
// the parallel search (insert-if-absent with a definitive answer).

#include "rtosmc/explorer.hpp"

#include <array>
#include <cstdint>
#include <cstring>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

namespace rtosmc::detail {

class StateStore {
public:
    static constexpr std::uint32_t kEmpty = 0xFFFFFFFFU;

    StateStore(std::size_t width, StoreMode mode) : width_(width), mode_(mode), table_(1024, kEmpty) {}

    std::pair<std::uint32_t, bool> insert(const std::uint8_t* enc, std::uint64_t hash) {
        std::size_t mask = table_.size() - 1;
        std::size_t slot = static_cast<std::size_t>(hash) & mask;
        while (table_[slot] != kEmpty) {
            const std::uint32_t id = table_[slot];
            if (hashes_[id] == hash &&
                (mode_ == StoreMode::Digest || std::memcmp(&arena_[id * width_], enc, width_) == 0)) {
                return {id, false};
            }
            slot = (slot + 1) & mask;
        }
        const auto id = static_cast<std::uint32_t>(hashes_.size());
        hashes_.push_back(hash);
        if (mode_ == StoreMode::Exact) arena_.insert(arena_.end(), enc, enc + width_);
        table_[slot] = id;
        if (hashes_.size() * 2 > table_.size()) grow();
        return {id, true};
    }

    std::size_t size() const { return hashes_.size(); }
    const std::uint8_t* encoding(std::uint32_t id) const { return &arena_[id * width_]; }
    bool exact() const { return mode_ == StoreMode::Exact; }

private:
    void grow() {
        std::vector<std::uint32_t> next(table_.size() * 2, kEmpty);
        const std::size_t mask = next.size() - 1;
        for (std::uint32_t id = 0; id < hashes_.size(); ++id) {
            std::size_t slot = static_cast<std::size_t>(hashes_[id]) & mask;
            while (next[slot] != kEmpty) slot = (slot + 1) & mask;
            next[slot] = id;
        }
        table_.swap(next);
    }

    std::size_t width_;
    StoreMode mode_;
    std::vector<std::uint8_t> arena_;
    std::vector<std::uint64_t> hashes_;
    std::vector<std::uint32_t> table_;
};

/// Where a state was first reached from.
struct Parent {
    std::uint64_t from = ~0ULL;
    std::uint8_t unit = 0;
    std::uint8_t ordinal = 0;
};

class ShardedStore {
public:
    static constexpr std::size_t kShards = 64;

    ShardedStore(std::size_t width, StoreMode mode) {
        for (auto& s : shards_) s.store = std::make_unique<StateStore>(width, mode);
    }

    /// Returns the global id and whether this call inserted it.
    std::pair<std::uint64_t, bool> insert(const std::uint8_t* enc, std::uint64_t hash, const Parent& parent) {
        const std::size_t k = static_cast<std::size_t>(hash >> 58);
        auto& sh = shards_[k];
        std::lock_guard<std::mutex> lock(sh.mu);
        auto [local, inserted] = sh.store->insert(enc, hash);
        if (inserted) sh.parents.push_back(parent);
        return {static_cast<std::uint64_t>(local) * kShards + k, inserted};
    }

    std::size_t size() const {
        std::size_t n = 0;
        for (const auto& s : shards_) n += s.store->size();
        return n;
    }

    const Parent& parent(std::uint64_t gid) const { return shards_[gid % kShards].parents[gid / kShards]; }

    /// Dense numbering: shard-major prefix offsets.
    std::vector<std::uint64_t> offsets() const {
        std::vector<std::uint64_t> off(kShards + 1, 0);
        for (std::size_t k = 0; k < kShards; ++k) off[k + 1] = off[k] + shards_[k].store->size();
        return off;
    }

private:
    struct Shard {
        std::mutex mu;
        std::unique_ptr<StateStore> store;
        std::vector<Parent> parents;
    };
    std::array<Shard, kShards> shards_;
};

}  // namespace rtosmc::detail
