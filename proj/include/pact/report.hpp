#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace pact {

struct CheckItem {
  std::string name;
  bool pass = true;
  std::string witness;  // first counterexample, empty on PASS
};

/// Itemized PASS/FAIL record. Each item keeps only its first witness.
class VerificationReport {
 public:
  /// Adds an item that starts as PASS and returns its index.
  std::size_t add(std::string name);
  void fail(std::size_t item, std::string witness);
  void record(std::string name, bool pass, std::string witness = {});

  const std::vector<CheckItem>& items() const noexcept { return items_; }
  bool all_pass() const;
  /// PASS state of the named item; throws std::out_of_range if absent.
  bool passed(std::string_view name) const;
  const CheckItem& item(std::string_view name) const;

 private:
  std::vector<CheckItem> items_;
};

}  // namespace pact
