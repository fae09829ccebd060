#pragma once

#include <doctest.h>

#include <random>

#include "herzlab/error.hpp"

// Fails unless expr throws herzlab::Error carrying the given code.
#define CHECK_THROWS_CODE(expr, code_)                                 \
  do {                                                                 \
    bool thrown_ = false;                                              \
    try {                                                              \
      (void)(expr);                                                    \
    } catch (const herzlab::Error& e_) {                               \
      thrown_ = true;                                                  \
      CHECK_MESSAGE(e_.code() == herzlab::ErrorCode::code_, e_.what()); \
    }                                                                  \
    CHECK_MESSAGE(thrown_, "expected " #code_);                        \
  } while (0)

inline std::mt19937_64 test_rng(std::uint64_t salt) { return std::mt19937_64(0x5eed0000ull + salt); }
