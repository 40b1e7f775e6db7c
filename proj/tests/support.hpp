// Copyright 2026 The dwv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>

#include "dwv/config.hpp"
#include "dwv/digest.hpp"
#include "dwv/generation.hpp"

namespace dwv::testing {

/// Code of the dwv::Error thrown by fn, or nullopt if it returns normally.
template <class Fn>
std::optional<ErrorCode> error_of(Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return std::nullopt;
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    TempDir() : path_(std::filesystem::temp_directory_path() / ("dwv-test-" + random_id())) {
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const noexcept { return path_; }

private:
    std::filesystem::path path_;
};

inline Config config_in(const TempDir& dir, std::size_t workers = 2) {
    Config c = Config::defaults();
    c.service.store = dir.path() / "store";
    c.service.workers = workers;
    return c;
}

/// Profile producing the same demographics for every image.
inline PromptProfile one_hot_profile(std::string name, std::string match, std::string_view gender,
                                     std::string_view race, std::string_view age, double edit_success = 1.0) {
    PromptProfile p;
    p.name = std::move(name);
    p.substring = std::move(match);
    p.base = DistributionSet(CategoryDistribution::one_hot(Axis::gender, gender),
                             CategoryDistribution::one_hot(Axis::race, race),
                             CategoryDistribution::one_hot(Axis::age, age));
    p.edit_success = edit_success;
    return p;
}

/// Synthetic generator that blocks inside generate() until released.
class GatedGenerator final : public Generator {
public:
    BackendDescriptor descriptor() const override { return {"gated", false}; }

    std::vector<GeneratedImage> generate(const GenerationRequest& req) const override {
        {
            std::unique_lock lock(mutex_);
            entered_ = true;
            cv_.notify_all();
            cv_.wait(lock, [this] { return open_; });
        }
        return inner_.generate(req);
    }

    void wait_entered() const {
        std::unique_lock lock(mutex_);
        cv_.wait(lock, [this] { return entered_; });
    }

    void open() {
        std::lock_guard lock(mutex_);
        open_ = true;
        cv_.notify_all();
    }

private:
    SyntheticGenerator inner_;
    mutable std::mutex mutex_;
    mutable std::condition_variable cv_;
    mutable bool entered_ = false;
    bool open_ = false;
};

class FailingGenerator final : public Generator {
public:
    BackendDescriptor descriptor() const override { return {"failing", false}; }
    std::vector<GeneratedImage> generate(const GenerationRequest&) const override {
        throw Error(ErrorCode::BackendUnavailable, "model host is down");
    }
};

}  // namespace dwv::testing
