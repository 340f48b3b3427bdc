#include "flipcenter/errors.hpp"

namespace flipcenter {
namespace {

std::string join(const std::string& head, const std::vector<std::string>& items) {
  std::string out = head;
  for (const auto& item : items) {
    out += "\n  - ";
    out += item;
  }
  return out;
}

}  // namespace

NotATriangulation::NotATriangulation(std::vector<std::string> violations)
    : Error(join("not a triangulation:", violations)), violations_(std::move(violations)) {}

InvalidStep::InvalidStep(std::size_t index, const std::string& why)
    : Error("invalid flip step " + std::to_string(index) + ": " + why), index_(index) {}

ParseError::ParseError(std::string field, std::size_t line, const std::string& what)
    : Error(
          (line > 0 ? "line " + std::to_string(line) + ": " : std::string()) +
          (field.empty() ? std::string() : field + ": ") + what),
      field_(std::move(field)),
      line_(line) {}

ValidationError::ValidationError(std::vector<std::string> violations)
    : Error(join("validation failed:", violations)), violations_(std::move(violations)) {}

}  // namespace flipcenter
