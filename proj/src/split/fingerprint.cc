#include <openssl/evp.h>

#include <memory>

#include "hemoprior/errors.h"
#include "hemoprior/split/splitter.h"

namespace hemoprior {

std::string Sha256Hex(std::string_view bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              &EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1) {
    throw ValidationError("SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0x0F];
  }
  return out;
}

std::string SplitFingerprint(const SplitAssignment& assignment) {
  // std::map iterates in byte-wise id order.
  std::string canonical;
  for (const auto& [id, split] : assignment.assignment) {
    canonical += id;
    canonical += ':';
    canonical += ToString(split);
    canonical += '\n';
  }
  return Sha256Hex(canonical);
}

}  // namespace hemoprior
