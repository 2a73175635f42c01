#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace arm {

// FNV-1a, used for program hashes, cache keys and keyed random draws.
uint64_t fnv1a(std::string_view data, uint64_t seed = 0xcbf29ce484222325ULL);

// Hex rendering of a 64-bit hash (16 lowercase chars).
std::string hash_hex(uint64_t h);

std::string trim(std::string_view s);
std::string collapse_whitespace(std::string_view s);
std::string to_lower(std::string_view s);
bool starts_with(std::string_view s, std::string_view prefix);
std::vector<std::string> split_lines(std::string_view s);

// First signed integer token in the text, if any ("rating: 7/10" -> 7).
bool scan_first_int(std::string_view s, long long& out);

// Uniform double in [0,1) from the top 53 bits; identical across platforms.
double uniform01(std::mt19937_64& rng);

// Uniform integer in [0, n) without platform-dependent distribution objects.
uint64_t uniform_below(std::mt19937_64& rng, uint64_t n);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);
// Write to <path>.tmp then rename, so readers never observe a partial file.
void write_file_atomic(const std::string& path, std::string_view content);

}  // namespace arm
