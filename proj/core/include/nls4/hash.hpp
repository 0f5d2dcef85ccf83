#pragma once

#include <string>

namespace nls4 {

// Git blob id: SHA-1 of "blob <size>\0" followed by the content, lowercase hex.
std::string git_blob_hash(const std::string& content);
std::string git_blob_hash_file(const std::string& path);

}  // namespace nls4
