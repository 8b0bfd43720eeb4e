// Copyright 2026 The SAE Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SAE_ERRORS_HPP_
#define SAE_ERRORS_HPP_

#include <cstdint>
#include <stdexcept>
#include <optional>
#include <string>
#include <string_view>

namespace sae {

// Every failure surfaced by the library carries one of these codes so that
// callers (and the harness counters) can branch without string matching.
enum class Errc {
  kInvalidConfig,
  kDecode,
  kZeroInverse,
  kFieldMismatch,
  kInsufficientShares,
  kInconsistentShares,
  kIndexMismatch,
  kIdentifiableAbort,
  kDegenerateInput,
  kInvariantViolation,
  kDuplicateEntry,
  kBadCertificate,
  kBadDealing,
  kQuotaExceeded,
  kUnknownMac,
  kReusedKey,
  kBadSignature,
  kDecryptFailure,
  kRegistrationRejected,
  kMacVerifyFailed,
  kKeyAlreadyUsed,
  kTimeout,
  kAssertionFailed,
  kDivergence,
  kIo,
};

std::string_view errc_name(Errc code);
// Inverse of errc_name; nullopt on unknown names.
std::optional<Errc> parse_errc(std::string_view name);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Evidence-backed accusation: `culprit` offered wrong or no input during
// `phase`.
struct AbortReport {
  uint32_t culprit = 0;
  std::string phase;

  bool operator==(const AbortReport&) const = default;
};

// Thrown when misbehaviour makes the current session impossible to finish.
class IdentifiableAbort : public Error {
 public:
  explicit IdentifiableAbort(AbortReport report, Errc code = Errc::kIdentifiableAbort);

  const AbortReport& report() const noexcept { return report_; }

 private:
  AbortReport report_;
};

}  // namespace sae

#endif  // SAE_ERRORS_HPP_
