#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace symrank {

enum class Verdict { pass, fail, hypotheses_not_met };

std::string to_string(Verdict v);

struct Hypothesis {
  std::string name;
  bool holds;
  nlohmann::json measured;
};

struct Witness {
  std::string label;
  nlohmann::json data;
};

/// Machine-readable outcome of one theorem check.
///
/// A report only ends in `fail` when a witness is attached, and ends in
/// `hypotheses_not_met` whenever a recorded hypothesis does not hold, in
/// which case the claim is not judged at all. Conjecture probes go into
/// `informational` and never influence the verdict.
class VerificationReport {
 public:
  explicit VerificationReport(std::string theorem) : theorem_(std::move(theorem)) {}

  const std::string& theorem() const noexcept { return theorem_; }
  Verdict verdict() const noexcept { return verdict_; }
  const std::vector<Hypothesis>& hypotheses() const noexcept { return hypotheses_; }
  const std::map<std::string, nlohmann::json>& quantities() const noexcept { return quantities_; }
  const std::map<std::string, nlohmann::json>& informational() const noexcept { return info_; }
  const std::vector<Witness>& witnesses() const noexcept { return witnesses_; }

  void hypothesis(std::string name, bool holds, nlohmann::json measured = nullptr);
  void quantity(const std::string& name, nlohmann::json value) { quantities_[name] = std::move(value); }
  void note(const std::string& name, nlohmann::json value) { info_[name] = std::move(value); }
  void witness(std::string label, nlohmann::json data);

  bool hypotheses_hold() const noexcept;
  std::vector<std::string> failed_hypotheses() const;

  /// Sets the verdict from the hypotheses and whether the claim held.
  /// Throws std::logic_error for a failing claim without a witness.
  void conclude(bool claim_holds);

  const nlohmann::json& quantity(const std::string& name) const { return quantities_.at(name); }

  nlohmann::json to_json() const;
  static VerificationReport from_json(const nlohmann::json& j);

 private:
  std::string theorem_;
  Verdict verdict_ = Verdict::hypotheses_not_met;
  std::vector<Hypothesis> hypotheses_;
  std::map<std::string, nlohmann::json> quantities_;
  std::map<std::string, nlohmann::json> info_;
  std::vector<Witness> witnesses_;
};

}  // namespace symrank
