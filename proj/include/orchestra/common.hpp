#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace orchestra {

using json = nlohmann::json;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed configuration or input files.
class ConfigError : public Error {
public:
    using Error::Error;
};

// A documented precondition of an operation was violated by the caller.
class PreconditionError : public Error {
public:
    using Error::Error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

// Stable 64-bit FNV-1a; identical across platforms and runs, unlike std::hash.
std::uint64_t stable_hash(std::string_view text, std::uint64_t seed = 0);

// splitmix64 finalizer over the pair; used to derive independent sub-seeds.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);
std::uint64_t mix_seed(std::uint64_t a, std::string_view b);

// Uniform double in [0, 1) from the top 53 bits. Bit-identical across
// standard library implementations, which uniform_real_distribution is not.
double unit_uniform(std::mt19937_64& rng);
std::size_t uniform_index(std::mt19937_64& rng, std::size_t n);

// Casefold (ASCII) and collapse runs of whitespace to a single space, trimmed.
std::string normalize_text(std::string_view text);

// Strings render without quotes; everything else as compact JSON.
std::string value_text(const json& value);

std::string sha256_hex(std::string_view data);

std::string read_text_file(const std::filesystem::path& path);
json read_json_file(const std::filesystem::path& path);
std::vector<json> read_jsonl_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);
void write_json_file(const std::filesystem::path& path, const json& value);
void write_jsonl_file(const std::filesystem::path& path, const std::vector<json>& lines);

}  // namespace orchestra
