#include "tsebench/provenance.hpp"

#include <cstdio>
#include <fstream>
#include <memory>

#include <openssl/evp.h>

#include "tsebench/error.hpp"

namespace tsebench {

namespace {

class Sha256 {
 public:
  Sha256() : ctx_(EVP_MD_CTX_new(), &EVP_MD_CTX_free) {
    if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1) {
      throw std::runtime_error("SHA-256 unavailable");
    }
  }

  void update(const void* data, std::size_t size) { EVP_DigestUpdate(ctx_.get(), data, size); }

  std::string hex() {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    EVP_DigestFinal_ex(ctx_.get(), digest, &length);
    std::string out;
    char buf[3];
    for (unsigned int i = 0; i < length; ++i) {
      std::snprintf(buf, sizeof buf, "%02x", digest[i]);
      out += buf;
    }
    return out;
  }

 private:
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx_;
};

}  // namespace

std::string sha256_hex(std::string_view bytes) {
  Sha256 sha;
  sha.update(bytes.data(), bytes.size());
  return sha.hex();
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  Sha256 sha;
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof buf);
    sha.update(buf, static_cast<std::size_t>(in.gcount()));
  }
  return sha.hex();
}

void Provenance::add_input(std::string role, const std::filesystem::path& path) {
  inputs.emplace_back(std::move(role), sha256_file(path));
}

nlohmann::ordered_json Provenance::to_json() const {
  nlohmann::ordered_json json;
  json["tool_version"] = tool_version;
  json["config_hash"] = config_hash;
  nlohmann::ordered_json digests = nlohmann::ordered_json::object();
  for (const auto& [role, digest] : inputs) digests[role] = "sha256:" + digest;
  json["inputs"] = std::move(digests);
  return json;
}

std::string Provenance::to_text_header() const {
  std::string out = "# tool_version: " + tool_version + "\n# config_hash: " + config_hash + "\n";
  for (const auto& [role, digest] : inputs) out += "# input " + role + ": sha256:" + digest + "\n";
  return out;
}

}  // namespace tsebench
