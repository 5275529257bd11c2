#pragma once

#include <doctest.h>

#include "carriersig/error.hpp"

/// Runs fn and returns the code of the carriersig::Error it throws.
template <typename Fn>
carriersig::ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const carriersig::Error& e) {
    return e.code();
  }
  FAIL("expected a carriersig::Error");
  return carriersig::ErrorCode::Io;
}
