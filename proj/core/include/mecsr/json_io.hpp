#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <string_view>
#include <vector>

#include "mecsr/instance.hpp"
#include "mecsr/scoring.hpp"
#include "mecsr/solvers.hpp"
#include "mecsr/sources.hpp"

// File formats. Writers emit compact, key-ordered, newline-terminated JSON so
// that equal values always produce identical bytes. Readers throw ParseError
// carrying the line/column of a syntax error, or the JSON path of a bad field.
namespace mecsr::io {

using Json = nlohmann::ordered_json;

enum class SourceKind { Graph, ColoredGraph, Cnf, Triples, Values };

std::string_view to_string(SourceKind kind);
std::optional<SourceKind> parse_source_kind(std::string_view text);
SourceKind kind_of(const SourceInstance& source);

// Parses text into a JSON document; syntax errors become ParseError with positions.
Json parse_document(std::string_view text);

// Compact dump plus trailing newline.
std::string dump(const Json& doc);

Json to_json(const Instance& inst);
Instance instance_from_json(const Json& doc);
std::string write_instance(const Instance& inst);
Instance read_instance(std::string_view text);

Json to_json(const RuleAssignment& a);
Json to_json(const SolveResult& result);
SolveResult solve_result_from_json(const Json& doc);
std::string write_solve_result(const SolveResult& result);

Json to_json(const SourceInstance& source);
SourceInstance source_from_json(SourceKind kind, const Json& doc);
std::string write_source(const SourceInstance& source);
SourceInstance read_source(SourceKind kind, std::string_view text);

Json to_json(const Extraction& extraction);

struct ProfileFile {
  Profile profile;
  std::vector<RuleSpec> rules;
};

ProfileFile read_profile(std::string_view text);
std::string write_profile(const ProfileFile& file);

}  // namespace mecsr::io
