#include "pact/report.hpp"

#include <algorithm>
#include <stdexcept>

namespace pact {

std::size_t VerificationReport::add(std::string name) {
  items_.push_back({std::move(name), true, {}});
  return items_.size() - 1;
}

void VerificationReport::fail(std::size_t item, std::string witness) {
  CheckItem& it = items_.at(item);
  if (it.pass) {
    it.pass = false;
    it.witness = std::move(witness);
  }
}

void VerificationReport::record(std::string name, bool pass, std::string witness) {
  items_.push_back({std::move(name), pass, pass ? std::string{} : std::move(witness)});
}

bool VerificationReport::all_pass() const {
  return std::all_of(items_.begin(), items_.end(), [](const CheckItem& i) { return i.pass; });
}

const CheckItem& VerificationReport::item(std::string_view name) const {
  for (const auto& i : items_)
    if (i.name == name) return i;
  throw std::out_of_range("no report item named " + std::string(name));
}

bool VerificationReport::passed(std::string_view name) const { return item(name).pass; }

}  // namespace pact
