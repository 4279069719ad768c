#pragma once

#include <gtest/gtest.h>

#include "macrovar/error.hpp"

namespace macrovar::testing {

// Runs f and returns the kind of the macrovar::Error it throws.
template <typename F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected macrovar::Error";
  return ErrorKind::IoError;
}

}  // namespace macrovar::testing
