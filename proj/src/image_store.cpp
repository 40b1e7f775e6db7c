// Copyright 2026 The dwv Authors
// SPDX-License-Identifier: Apache-2.0

#include "dwv/image_store.hpp"

#include <fstream>
#include <sstream>

#include "dwv/digest.hpp"
#include "dwv/error.hpp"
#include "dwv/generation.hpp"

namespace dwv {

namespace fs = std::filesystem;

namespace {

bool valid_id(std::string_view id) {
    if (id.size() != 64) return false;
    for (char c : id) {
        if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return false;
    }
    return true;
}

}  // namespace

ImageStore::ImageStore(fs::path root) : root_(std::move(root)) {
    std::error_code ec;
    fs::create_directories(root_ / "images", ec);
    if (ec) throw Error(ErrorCode::IoError, "cannot create image store at " + root_.string() + ": " + ec.message());
}

fs::path ImageStore::path_for(std::string_view id) const {
    if (!valid_id(id)) throw Error(ErrorCode::UnknownImage, "malformed image id '" + std::string(id) + "'");
    return root_ / "images" / std::string(id.substr(0, 2)) / std::string(id);
}

std::string ImageStore::put(std::string_view payload) const {
    std::string id = sha256_hex(payload);
    const fs::path target = path_for(id);
    if (fs::exists(target)) return id;
    fs::create_directories(target.parent_path());
    const fs::path tmp = target.parent_path() / (id + ".tmp." + random_id());
    {
        std::ofstream out(tmp, std::ios::binary);
        out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
        if (!out) throw Error(ErrorCode::IoError, "failed writing " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        if (!fs::exists(target)) throw Error(ErrorCode::IoError, "failed storing image " + id);
    }
    return id;
}

std::optional<std::string> ImageStore::get(std::string_view id) const {
    if (!valid_id(id)) return std::nullopt;
    std::ifstream in(path_for(id), std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

bool ImageStore::contains(std::string_view id) const { return valid_id(id) && fs::exists(path_for(id)); }

std::string sniff_media_type(std::string_view payload) {
    if (payload.starts_with("\x89PNG")) return "image/png";
    if (payload.starts_with("\xFF\xD8\xFF")) return "image/jpeg";
    if (payload.starts_with("{\"age\"") && payload.find("\"synthetic-portrait\"") != std::string_view::npos) {
        return std::string(kSyntheticMediaType);
    }
    return "application/octet-stream";
}

}  // namespace dwv
