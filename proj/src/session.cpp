// Copyright 2026 The dwv Authors
// SPDX-License-Identifier: Apache-2.0

#include "dwv/session.hpp"

#include <iostream>
#include <sstream>

#include "dwv/digest.hpp"

namespace dwv {

std::string_view job_kind_name(JobKind kind) noexcept { return kind == JobKind::edit ? "edit" : "baseline"; }

std::string_view job_status_name(JobStatus status) noexcept {
    switch (status) {
        case JobStatus::queued: return "queued";
        case JobStatus::running: return "running";
        case JobStatus::done: return "done";
        case JobStatus::failed: return "failed";
    }
    return "";
}

Json to_json(const GenerationJob& job) {
    return Json{{"id", job.id},
                {"session_id", job.session_id},
                {"kind", job_kind_name(job.kind)},
                {"status", job_status_name(job.status)},
                {"count", job.count},
                {"progress", job.progress},
                {"image_ids", job.image_ids},
                {"error", job.error ? Json(*job.error) : Json(nullptr)},
                {"created_at", job.created_at},
                {"updated_at", job.updated_at}};
}

Json to_json(const Session& session) {
    Json edits = Json::array();
    for (const auto& e : session.edits) edits.push_back(to_json(e));
    return Json{{"id", session.id},
                {"prompt", session.prompt},
                {"baseline", session.baseline ? to_json(*session.baseline) : Json(nullptr)},
                {"edits", std::move(edits)},
                {"created_at", session.created_at},
                {"updated_at", session.updated_at}};
}

// ---------------------------------------------------------------------------
// WorkerPool

WorkerPool::WorkerPool(std::size_t threads) {
    for (std::size_t i = 0; i < std::max<std::size_t>(threads, 1); ++i) {
        threads_.emplace_back([this] {
            while (true) {
                std::function<void()> task;
                {
                    std::unique_lock lock(mutex_);
                    cv_.wait(lock, [this] { return stopping_ || !tasks_.empty(); });
                    if (stopping_) return;
                    task = std::move(tasks_.front());
                    tasks_.pop_front();
                }
                task();
            }
        });
    }
}

WorkerPool::~WorkerPool() {
    {
        std::lock_guard lock(mutex_);
        stopping_ = true;
    }
    cv_.notify_all();
    for (auto& t : threads_) t.join();
}

void WorkerPool::post(std::function<void()> task) {
    {
        std::lock_guard lock(mutex_);
        tasks_.push_back(std::move(task));
    }
    cv_.notify_one();
}

// ---------------------------------------------------------------------------
// SessionLog

SessionLog::SessionLog(std::filesystem::path path) : path_(std::move(path)) {
    std::filesystem::create_directories(path_.parent_path());
    out_.open(path_, std::ios::app | std::ios::binary);
    if (!out_) throw Error(ErrorCode::IoError, "cannot open session log " + path_.string());
}

void SessionLog::append(const Json& event) {
    std::lock_guard lock(mutex_);
    out_ << event.dump() << '\n';
    out_.flush();
    if (!out_) throw Error(ErrorCode::IoError, "failed writing session log " + path_.string());
}

void SessionLog::session_created(const Session& session) {
    append(Json{{"type", "session"},
                {"session_id", session.id},
                {"prompt", session.prompt},
                {"at", session.created_at}});
}

void SessionLog::baseline_attached(const std::string& session_id, const GenerationResult& result,
                                   const std::string& at) {
    append(Json{{"type", "baseline"}, {"session_id", session_id}, {"result", to_json(result)}, {"at", at}});
}

void SessionLog::edit_attached(const std::string& session_id, const EditResult& result, const std::string& at) {
    append(Json{{"type", "edit"}, {"session_id", session_id}, {"result", to_json(result)}, {"at", at}});
}

std::map<std::string, Session> SessionLog::load(const std::filesystem::path& path) {
    std::map<std::string, Session> sessions;
    std::ifstream in(path, std::ios::binary);
    if (!in) return sessions;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            const Json event = Json::parse(line);
            const std::string type = event.at("type").get<std::string>();
            const std::string id = event.at("session_id").get<std::string>();
            const std::string at = event.value("at", std::string());
            if (type == "session") {
                Session s;
                s.id = id;
                s.prompt = event.at("prompt").get<std::string>();
                s.created_at = at;
                s.updated_at = at;
                sessions[id] = std::move(s);
                continue;
            }
            auto it = sessions.find(id);
            if (it == sessions.end()) continue;
            if (type == "baseline") {
                it->second.baseline = generation_result_from_json(event.at("result"));
            } else if (type == "edit") {
                it->second.edits.push_back(edit_result_from_json(event.at("result")));
            }
            it->second.updated_at = at;
        } catch (const std::exception& e) {
            std::cerr << "dwv: skipping session log line " << line_no << ": " << e.what() << '\n';
        }
    }
    return sessions;
}

// ---------------------------------------------------------------------------
// SessionService

SessionService::SessionService(Config config) : SessionService(config, make_backends(config)) {}

SessionService::SessionService(Config config, Backends backends)
    : config_(std::make_shared<const Config>(std::move(config))),
      pipeline_(config_, std::move(backends), ImageStore(config_->service.store)),
      log_(config_->service.store / "sessions.log"),
      pool_(config_->service.workers) {
    for (auto& [id, session] : SessionLog::load(log_.path())) {
        auto e = std::make_shared<Entry>();
        e->session = std::move(session);
        sessions_.emplace(id, std::move(e));
    }
}

SessionService::~SessionService() = default;

std::shared_ptr<SessionService::Entry> SessionService::entry(const std::string& session_id) const {
    std::lock_guard lock(sessions_mutex_);
    auto it = sessions_.find(session_id);
    if (it == sessions_.end()) throw Error(ErrorCode::UnknownSession, "no session '" + session_id + "'");
    return it->second;
}

Session SessionService::create_session(const std::string& prompt) {
    if (prompt.empty()) throw Error(ErrorCode::EmptyPrompt, "prompt must not be empty");
    auto e = std::make_shared<Entry>();
    e->session.id = random_id();
    e->session.prompt = prompt;
    e->session.created_at = utc_timestamp();
    e->session.updated_at = e->session.created_at;
    log_.session_created(e->session);
    Session copy = e->session;
    std::lock_guard lock(sessions_mutex_);
    sessions_.emplace(copy.id, std::move(e));
    return copy;
}

GenerationJob SessionService::enqueue(const std::shared_ptr<Entry>& e, JobKind kind, std::size_t count,
                                      std::function<void(const std::string& job_id)> work) {
    GenerationJob job;
    job.id = random_id();
    job.session_id = e->session.id;
    job.kind = kind;
    job.count = count;
    job.created_at = utc_timestamp();
    job.updated_at = job.created_at;
    {
        std::lock_guard lock(jobs_mutex_);
        jobs_.emplace(job.id, job);
    }
    e->active_job = job.id;
    pool_.post([this, id = job.id, work = std::move(work)] {
        update_job(id, [](GenerationJob& j) { j.status = JobStatus::running; });
        work(id);
    });
    return job;
}

void SessionService::update_job(const std::string& job_id, const std::function<void(GenerationJob&)>& fn) {
    {
        std::lock_guard lock(jobs_mutex_);
        auto& job = jobs_.at(job_id);
        fn(job);
        job.updated_at = utc_timestamp();
    }
    jobs_cv_.notify_all();
}

ProgressFn SessionService::progress_for(const std::string& job_id) {
    return [this, job_id](std::size_t done, const std::string& image_id) {
        update_job(job_id, [&](GenerationJob& j) {
            j.progress = done;
            j.image_ids.push_back(image_id);
        });
    };
}

void SessionService::finish_job(const std::shared_ptr<Entry>& e, const std::string& job_id,
                                const std::function<void(Session&)>& attach, std::optional<std::string> error) {
    {
        std::lock_guard lock(e->mutex);
        if (!error) {
            try {
                attach(e->session);
            } catch (const std::exception& ex) {
                error = ex.what();
            }
        }
        e->active_job.reset();
    }
    update_job(job_id, [&](GenerationJob& j) {
        if (error) {
            j.status = JobStatus::failed;
            j.error = std::move(error);
        } else {
            j.status = JobStatus::done;
        }
    });
}

GenerationJob SessionService::submit_baseline(const std::string& session_id, std::size_t count, std::uint64_t seed) {
    if (count == 0) throw Error(ErrorCode::InvalidRequest, "count must be positive");
    auto e = entry(session_id);
    std::lock_guard lock(e->mutex);
    if (e->active_job) throw Error(ErrorCode::JobAlreadyRunning, "session already has job " + *e->active_job);
    const std::string prompt = e->session.prompt;
    return enqueue(e, JobKind::baseline, count, [this, e, prompt, count, seed](const std::string& job_id) {
        std::optional<GenerationResult> result;
        std::optional<std::string> error;
        try {
            result = pipeline_.run_baseline(prompt, count, seed, progress_for(job_id));
        } catch (const std::exception& ex) {
            error = ex.what();
        }
        finish_job(
            e, job_id,
            [&](Session& s) {
                const std::string at = utc_timestamp();
                log_.baseline_attached(s.id, *result, at);
                s.baseline = std::move(*result);
                s.updated_at = at;
            },
            std::move(error));
    });
}

GenerationJob SessionService::submit_edit(const std::string& session_id, const EditSubmission& submission) {
    if (submission.count == 0) throw Error(ErrorCode::InvalidRequest, "count must be positive");
    try {
        submission.worldview.validate();
    } catch (const Error& ex) {
        throw Error(ErrorCode::InvalidWorldview, ex.what());
    }
    auto e = entry(session_id);
    std::lock_guard lock(e->mutex);
    if (e->active_job) throw Error(ErrorCode::JobAlreadyRunning, "session already has job " + *e->active_job);

    std::optional<DistributionSet> baseline;
    if (e->session.baseline) baseline = e->session.baseline->aggregated;
    // Resolve now so MissingBaseline and UnknownCensusTable surface at submission.
    pipeline_.resolve_target(submission.worldview, baseline);

    const std::uint64_t seed = submission.seed.value_or(e->session.baseline ? e->session.baseline->seed : 0);
    const std::string prompt = e->session.prompt;
    return enqueue(e, JobKind::edit, submission.count,
                   [this, e, prompt, submission, baseline, seed](const std::string& job_id) {
                       std::optional<EditResult> result;
                       std::optional<std::string> error;
                       try {
                           result = pipeline_.run_edit(prompt, submission.worldview, baseline, submission.count, seed,
                                                       submission.sampler, progress_for(job_id));
                       } catch (const std::exception& ex) {
                           error = ex.what();
                       }
                       finish_job(
                           e, job_id,
                           [&](Session& s) {
                               const std::string at = utc_timestamp();
                               log_.edit_attached(s.id, *result, at);
                               s.edits.push_back(std::move(*result));
                               s.updated_at = at;
                           },
                           std::move(error));
                   });
}

GenerationJob SessionService::get_job(const std::string& job_id) const {
    std::lock_guard lock(jobs_mutex_);
    auto it = jobs_.find(job_id);
    if (it == jobs_.end()) throw Error(ErrorCode::UnknownJob, "no job '" + job_id + "'");
    return it->second;
}

GenerationJob SessionService::wait_for_job(const std::string& job_id, std::chrono::milliseconds timeout) const {
    std::unique_lock lock(jobs_mutex_);
    auto it = jobs_.find(job_id);
    if (it == jobs_.end()) throw Error(ErrorCode::UnknownJob, "no job '" + job_id + "'");
    jobs_cv_.wait_for(lock, timeout, [&] { return it->second.terminal(); });
    return it->second;
}

Session SessionService::get_session(const std::string& session_id) const {
    auto e = entry(session_id);
    std::lock_guard lock(e->mutex);
    return e->session;
}

std::vector<std::string> SessionService::session_ids() const {
    std::lock_guard lock(sessions_mutex_);
    std::vector<std::string> ids;
    for (const auto& [id, _] : sessions_) ids.push_back(id);
    return ids;
}

std::pair<std::string, std::string> SessionService::get_image(const std::string& image_id) const {
    auto payload = pipeline_.store().get(image_id);
    if (!payload) throw Error(ErrorCode::UnknownImage, "no image '" + image_id + "'");
    std::string media = sniff_media_type(*payload);
    return {std::move(*payload), std::move(media)};
}

DistributionSet SessionService::compute_target(const WorldviewSpec& worldview,
                                               const std::optional<std::string>& session_id,
                                               const std::optional<DistributionSet>& baseline) const {
    std::optional<DistributionSet> base = baseline;
    if (!base && session_id) {
        const Session s = get_session(*session_id);
        if (s.baseline) base = s.baseline->aggregated;
    }
    return pipeline_.resolve_target(worldview, base);
}

}  // namespace dwv
