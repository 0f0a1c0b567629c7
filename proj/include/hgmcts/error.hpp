// Copyright 2026 The hgmcts Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hgmcts {

enum class ErrorCode {
  kInvalidArgument,
  kNotFound,
  kDepthExceeded,
  kDuplicateChild,
  kSearchExhausted,
  kEmptyChecklist,
  kExpansionFailed,
  kNoDocuments,
  kBackendUnavailable,
  kConfiguration,
  kParseFailed,
  kTraceIo,
  kLoad,
  kAborted,
};

std::string_view to_string(ErrorCode code);

/// Base error for everything the library throws. The code lets callers
/// branch on failure class without a type hierarchy per error.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hgmcts
