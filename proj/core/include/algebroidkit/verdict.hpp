#pragma once

#include <string>
#include <vector>

#include "algebroidkit/exactalg/polynomial.hpp"

namespace algebroidkit {

/// One failed identity: where it failed, what was being checked, and the nonzero residue.
struct Witness {
  std::string location;
  std::string detail;
  Polynomial residue;

  friend bool operator==(const Witness&, const Witness&) = default;
};

/// Outcome of a check. Invalid inputs are reported here, never by throwing.
struct Verdict {
  bool valid = true;
  std::vector<Witness> witnesses;
  /// Identities that were verified, in the order they were checked.
  std::vector<std::string> certificate;

  explicit operator bool() const { return valid; }

  void fail(std::string location, std::string detail, Polynomial residue) {
    valid = false;
    witnesses.push_back({std::move(location), std::move(detail), std::move(residue)});
  }
  void record(std::string identity) { certificate.push_back(std::move(identity)); }
  /// Merges another verdict, prefixing its locations.
  void absorb(const Verdict& other, const std::string& prefix = {});
};

inline void Verdict::absorb(const Verdict& other, const std::string& prefix) {
  if (!other.valid) valid = false;
  for (const auto& w : other.witnesses) {
    witnesses.push_back({prefix.empty() ? w.location : prefix + ": " + w.location, w.detail, w.residue});
  }
  for (const auto& c : other.certificate) certificate.push_back(prefix.empty() ? c : prefix + ": " + c);
}

}  // namespace algebroidkit
