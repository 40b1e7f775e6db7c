// Copyright 2026 The dwv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace dwv {

/// Content-addressed payload files: <root>/images/<id[0:2]>/<id>, where id is
/// the SHA-256 of the bytes. Writes go through a temp file and rename.
class ImageStore {
public:
    explicit ImageStore(std::filesystem::path root);

    /// Stores the bytes (no-op when already present) and returns their id.
    std::string put(std::string_view payload) const;
    std::optional<std::string> get(std::string_view id) const;
    bool contains(std::string_view id) const;
    std::filesystem::path path_for(std::string_view id) const;
    const std::filesystem::path& root() const noexcept { return root_; }

private:
    std::filesystem::path root_;
};

/// Guesses a media type from leading bytes.
std::string sniff_media_type(std::string_view payload);

}  // namespace dwv
