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

#include "sae/errors.hpp"

#include <utility>

namespace sae {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::kInvalidConfig: return "InvalidConfig";
    case Errc::kDecode: return "Decode";
    case Errc::kZeroInverse: return "ZeroInverse";
    case Errc::kFieldMismatch: return "FieldMismatch";
    case Errc::kInsufficientShares: return "InsufficientShares";
    case Errc::kInconsistentShares: return "InconsistentShares";
    case Errc::kIndexMismatch: return "IndexMismatch";
    case Errc::kIdentifiableAbort: return "IdentifiableAbort";
    case Errc::kDegenerateInput: return "DegenerateInput";
    case Errc::kInvariantViolation: return "InvariantViolation";
    case Errc::kDuplicateEntry: return "DuplicateEntry";
    case Errc::kBadCertificate: return "BadCertificate";
    case Errc::kBadDealing: return "BadDealing";
    case Errc::kQuotaExceeded: return "QuotaExceeded";
    case Errc::kUnknownMac: return "UnknownMac";
    case Errc::kReusedKey: return "ReusedKey";
    case Errc::kBadSignature: return "BadSignature";
    case Errc::kDecryptFailure: return "DecryptFailure";
    case Errc::kRegistrationRejected: return "RegistrationRejected";
    case Errc::kMacVerifyFailed: return "MacVerifyFailed";
    case Errc::kKeyAlreadyUsed: return "KeyAlreadyUsed";
    case Errc::kTimeout: return "Timeout";
    case Errc::kAssertionFailed: return "AssertionFailed";
    case Errc::kDivergence: return "Divergence";
    case Errc::kIo: return "Io";
  }
  return "Unknown";
}

std::optional<Errc> parse_errc(std::string_view name) {
  for (int c = 0; c <= static_cast<int>(Errc::kIo); ++c) {
    if (errc_name(static_cast<Errc>(c)) == name) return static_cast<Errc>(c);
  }
  return std::nullopt;
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

IdentifiableAbort::IdentifiableAbort(AbortReport report, Errc code)
    : Error(code,
            "party " + std::to_string(report.culprit) + " misbehaved in " + report.phase),
      report_(std::move(report)) {}

}  // namespace sae
