#pragma once
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dpz/error.hpp"

// Runs stmt and checks that it throws dpz::Error of the given kind.
#define CHECK_DPZ_ERROR(stmt, expected_kind)                  \
  do {                                                        \
    bool thrown_ = false;                                     \
    try {                                                     \
      stmt;                                                   \
    } catch (const dpz::Error& e_) {                          \
      thrown_ = true;                                         \
      CHECK(e_.kind() == (expected_kind));                    \
    }                                                         \
    CHECK_MESSAGE(thrown_, "expected a dpz::Error: " #stmt);  \
  } while (0)
