// Copyright 2026 The dwv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <condition_variable>
#include <deque>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "dwv/pipeline.hpp"

namespace dwv {

enum class JobKind { baseline, edit };
enum class JobStatus { queued = 0, running = 1, done = 2, failed = 3 };

std::string_view job_kind_name(JobKind kind) noexcept;
std::string_view job_status_name(JobStatus status) noexcept;

struct GenerationJob {
    std::string id;
    std::string session_id;
    JobKind kind = JobKind::baseline;
    JobStatus status = JobStatus::queued;
    std::size_t count = 0;
    std::size_t progress = 0;
    /// Ids of images finished so far, in generation order.
    std::vector<std::string> image_ids;
    std::optional<std::string> error;
    std::string created_at;
    std::string updated_at;

    bool terminal() const noexcept { return status == JobStatus::done || status == JobStatus::failed; }
};

struct Session {
    std::string id;
    std::string prompt;
    std::optional<GenerationResult> baseline;
    std::vector<EditResult> edits;
    std::string created_at;
    std::string updated_at;
};

Json to_json(const GenerationJob& job);
Json to_json(const Session& session);

struct EditSubmission {
    WorldviewSpec worldview;
    std::size_t count = kDefaultImageCount;
    /// Defaults to the baseline's seed so edits line up with baseline images.
    std::optional<std::uint64_t> seed;
    SamplerMode sampler = SamplerMode::stochastic;
};

/// Fixed-size thread pool. Tasks still queued at destruction are dropped.
class WorkerPool {
public:
    explicit WorkerPool(std::size_t threads);
    ~WorkerPool();

    WorkerPool(const WorkerPool&) = delete;
    WorkerPool& operator=(const WorkerPool&) = delete;

    void post(std::function<void()> task);

private:
    std::mutex mutex_;
    std::condition_variable cv_;
    std::deque<std::function<void()>> tasks_;
    bool stopping_ = false;
    std::vector<std::thread> threads_;
};

/// Append-only JSON-lines log of session events.
class SessionLog {
public:
    explicit SessionLog(std::filesystem::path path);

    void session_created(const Session& session);
    void baseline_attached(const std::string& session_id, const GenerationResult& result, const std::string& at);
    void edit_attached(const std::string& session_id, const EditResult& result, const std::string& at);

    /// Rebuilds sessions from a log. Unparseable lines (e.g. a torn final
    /// write) are skipped.
    static std::map<std::string, Session> load(const std::filesystem::path& path);

    const std::filesystem::path& path() const noexcept { return path_; }

private:
    void append(const Json& event);

    std::filesystem::path path_;
    std::mutex mutex_;
    std::ofstream out_;
};

/// Orchestrates the baseline/edit loop. Session mutation is serialized per
/// session; at most one job per session is active at a time.
class SessionService {
public:
    explicit SessionService(Config config);
    SessionService(Config config, Backends backends);
    ~SessionService();

    SessionService(const SessionService&) = delete;
    SessionService& operator=(const SessionService&) = delete;

    Session create_session(const std::string& prompt);
    GenerationJob submit_baseline(const std::string& session_id, std::size_t count, std::uint64_t seed);
    GenerationJob submit_edit(const std::string& session_id, const EditSubmission& submission);

    GenerationJob get_job(const std::string& job_id) const;
    Session get_session(const std::string& session_id) const;
    std::vector<std::string> session_ids() const;
    /// Payload bytes and media type.
    std::pair<std::string, std::string> get_image(const std::string& image_id) const;

    /// Target preview; `session_id` supplies the baseline for relative mode.
    DistributionSet compute_target(const WorldviewSpec& worldview, const std::optional<std::string>& session_id,
                                   const std::optional<DistributionSet>& baseline) const;

    /// Blocks until the job is terminal or the timeout passes.
    GenerationJob wait_for_job(const std::string& job_id, std::chrono::milliseconds timeout) const;

    const Config& config() const noexcept { return *config_; }
    const Pipeline& pipeline() const noexcept { return pipeline_; }

private:
    struct Entry {
        mutable std::mutex mutex;
        Session session;
        std::optional<std::string> active_job;
    };

    std::shared_ptr<Entry> entry(const std::string& session_id) const;
    GenerationJob enqueue(const std::shared_ptr<Entry>& entry, JobKind kind, std::size_t count,
                          std::function<void(const std::string& job_id)> work);
    void update_job(const std::string& job_id, const std::function<void(GenerationJob&)>& fn);
    void finish_job(const std::shared_ptr<Entry>& entry, const std::string& job_id,
                    const std::function<void(Session&)>& attach, std::optional<std::string> error);
    ProgressFn progress_for(const std::string& job_id);

    std::shared_ptr<const Config> config_;
    Pipeline pipeline_;
    SessionLog log_;

    mutable std::mutex sessions_mutex_;
    std::map<std::string, std::shared_ptr<Entry>> sessions_;

    mutable std::mutex jobs_mutex_;
    mutable std::condition_variable jobs_cv_;
    std::map<std::string, GenerationJob> jobs_;

    // Declared last so workers stop before the state they touch is destroyed.
    WorkerPool pool_;
};

}  // namespace dwv
