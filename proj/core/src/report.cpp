#include "symrank/report.hpp"

#include <algorithm>
#include <stdexcept>

#include "symrank/error.hpp"

namespace symrank {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::hypotheses_not_met:
      return "hypotheses-not-met";
  }
  return "unknown";
}

void VerificationReport::hypothesis(std::string name, bool holds, nlohmann::json measured) {
  hypotheses_.push_back({std::move(name), holds, std::move(measured)});
}

void VerificationReport::witness(std::string label, nlohmann::json data) {
  witnesses_.push_back({std::move(label), std::move(data)});
}

bool VerificationReport::hypotheses_hold() const noexcept {
  return std::all_of(hypotheses_.begin(), hypotheses_.end(),
                     [](const Hypothesis& h) { return h.holds; });
}

std::vector<std::string> VerificationReport::failed_hypotheses() const {
  std::vector<std::string> out;
  for (const auto& h : hypotheses_) {
    if (!h.holds) out.push_back(h.name);
  }
  return out;
}

void VerificationReport::conclude(bool claim_holds) {
  if (!hypotheses_hold()) {
    verdict_ = Verdict::hypotheses_not_met;
    return;
  }
  if (!claim_holds && witnesses_.empty()) {
    throw std::logic_error("report '" + theorem_ + "' fails without a witness");
  }
  verdict_ = claim_holds ? Verdict::pass : Verdict::fail;
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json hyps = nlohmann::json::array();
  for (const auto& h : hypotheses_) {
    hyps.push_back({{"name", h.name}, {"holds", h.holds}, {"measured", h.measured}});
  }
  nlohmann::json wits = nlohmann::json::array();
  for (const auto& w : witnesses_) wits.push_back({{"label", w.label}, {"data", w.data}});
  nlohmann::json quantities = nlohmann::json::object();
  for (const auto& [k, v] : quantities_) quantities[k] = v;
  nlohmann::json info = nlohmann::json::object();
  for (const auto& [k, v] : info_) info[k] = v;
  return {{"theorem", theorem_},
          {"verdict", to_string(verdict_)},
          {"hypotheses", std::move(hyps)},
          {"quantities", std::move(quantities)},
          {"informational", std::move(info)},
          {"witnesses", std::move(wits)}};
}

VerificationReport VerificationReport::from_json(const nlohmann::json& j) {
  VerificationReport r(j.at("theorem").get<std::string>());
  for (const auto& h : j.at("hypotheses")) {
    r.hypothesis(h.at("name").get<std::string>(), h.at("holds").get<bool>(), h.value("measured", nlohmann::json()));
  }
  for (const auto& [k, v] : j.at("quantities").items()) r.quantity(k, v);
  if (j.contains("informational")) {
    for (const auto& [k, v] : j.at("informational").items()) r.note(k, v);
  }
  for (const auto& w : j.at("witnesses")) {
    r.witness(w.at("label").get<std::string>(), w.at("data"));
  }
  const auto verdict = j.at("verdict").get<std::string>();
  if (verdict == "pass") {
    r.verdict_ = Verdict::pass;
  } else if (verdict == "fail") {
    r.verdict_ = Verdict::fail;
  } else if (verdict == "hypotheses-not-met") {
    r.verdict_ = Verdict::hypotheses_not_met;
  } else {
    throw InvalidArgument("unknown verdict '" + verdict + "'");
  }
  return r;
}

}  // namespace symrank
