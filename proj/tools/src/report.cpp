#include "report.hpp"

#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <openssl/evp.h>

#include "document.hpp"

namespace algebroidkit::io {

using nlohmann::ordered_json;

namespace {

std::string list(const std::vector<std::size_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s + ")";
}

std::string render_scalar(const ordered_json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

}  // namespace

void ResultBuilder::scalar(const std::string& key, const ordered_json& value) {
  json_[key] = value;
  lines_.push_back(key + ": " + render_scalar(value));
}

void ResultBuilder::sizes(const std::string& key, const std::vector<std::size_t>& values) {
  json_[key] = values;
  lines_.push_back(key + ": " + list(values));
}

void ResultBuilder::strings(const std::string& key, const std::vector<std::string>& values) {
  json_[key] = values;
  lines_.push_back(key + ":");
  if (values.empty()) lines_.push_back("  (none)");
  for (const auto& s : values) lines_.push_back("  " + s);
}

void ResultBuilder::graded_betti(const std::string& key, const std::map<int, std::vector<std::size_t>>& table) {
  ordered_json j = ordered_json::object();
  lines_.push_back(key + ":");
  for (const auto& [grade, b] : table) {
    j[std::to_string(grade)] = b;
    lines_.push_back("  grade " + std::to_string(grade) + ": " + list(b));
  }
  json_[key] = std::move(j);
}

void ResultBuilder::total_betti(const std::string& key, const std::vector<TotalBetti>& table) {
  ordered_json j = ordered_json::array();
  std::vector<std::size_t> values;
  std::string flags;
  for (const auto& t : table) {
    j.push_back({{"degree", t.degree}, {"betti", t.betti}, {"reliable", t.reliable}});
    values.push_back(t.betti);
    flags += t.reliable ? "R" : "-";
  }
  json_[key] = std::move(j);
  lines_.push_back(key + ": " + list(values) + "  reliable: " + flags);
}

void ResultBuilder::matrix(const std::string& key, const PolyMatrix& m) {
  json_[key] = io::to_json(m);
  lines_.push_back(key + ": " + std::to_string(m.rows()) + " x " + std::to_string(m.cols()) + " over Affine(" +
                   std::to_string(m.nvars()) + ")");
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::string row = "  [";
    for (std::size_t j = 0; j < m.cols(); ++j) row += (j ? ", " : "") + (m.at(i, j).is_zero() ? "0" : m.at(i, j).str());
    lines_.push_back(row + "]");
  }
}

void ResultBuilder::algebroid(const std::string& key, const AlgebroidPresentation& A) {
  json_[key] = io::to_json(A);
  lines_.push_back(key + ": rank " + std::to_string(A.rank) + " over " + A.base.describe());
  for (std::size_t c = 0; c < A.pieces.size(); ++c) {
    const LocalStructure& L = A.pieces[c];
    const std::string indent = A.pieces.size() > 1 ? "    " : "  ";
    if (A.pieces.size() > 1) lines_.push_back("  component " + A.base.components()[c].label + ":");
    for (std::size_t i = 0; i < L.rank(); ++i) {
      std::string a;
      for (std::size_t mu = 0; mu < L.dim(); ++mu) {
        if (L.anchor.at(i, mu).is_zero()) continue;
        a += (a.empty() ? "" : " + ") + ("(" + L.anchor.at(i, mu).str() + ")*d/d" + coordinate_name(mu));
      }
      lines_.push_back(indent + "a(" + frame_name(i) + ") = " + (a.empty() ? "0" : a));
    }
    for (std::size_t i = 0; i < L.rank(); ++i)
      for (std::size_t j = i + 1; j < L.rank(); ++j) {
        std::string b;
        for (std::size_t k = 0; k < L.rank(); ++k) {
          const Polynomial c = L.bracket(i, j, k);
          if (!c.is_zero()) b += (b.empty() ? "" : " + ") + ("(" + c.str() + ")*" + frame_name(k));
        }
        if (!b.empty()) lines_.push_back(indent + "[" + frame_name(i) + "," + frame_name(j) + "] = " + b);
      }
  }
}

ordered_json Report::to_json() const {
  ordered_json w = ordered_json::array();
  for (const auto& x : verdict.witnesses)
    w.push_back({{"location", x.location}, {"detail", x.detail}, {"residue", x.residue.str()}});
  ordered_json out{{"schema", kSchema},
                   {"task", task},
                   {"input_sha256", input_sha256},
                   {"status", verdict.valid ? "valid" : "invalid"},
                   {"verdict", {{"valid", verdict.valid}, {"witnesses", std::move(w)}, {"certificate", verdict.certificate}}},
                   {"result", result.json()}};
  if (timing_ms) out["timing_ms"] = *timing_ms;
  return out;
}

std::string Report::to_text() const {
  std::ostringstream os;
  os << "algebroidkit report (" << kSchema << ")\n";
  os << "task: " << task << "\n";
  os << "input sha256: " << input_sha256 << "\n";
  os << "status: " << (verdict.valid ? "valid" : "invalid") << "\n";
  os << "witnesses:\n";
  if (verdict.witnesses.empty()) os << "  (none)\n";
  for (const auto& w : verdict.witnesses)
    os << "  - " << w.location << ": " << w.detail << "\n      residue = " << w.residue.str() << "\n";
  os << "certificate:\n";
  if (verdict.certificate.empty()) os << "  (none)\n";
  for (const auto& c : verdict.certificate) os << "  - " << c << "\n";
  os << "result:\n";
  for (const auto& l : result.lines()) os << "  " << l << "\n";
  if (timing_ms) os << "timing: " << std::fixed << std::setprecision(3) << *timing_ms << " ms\n";
  return os.str();
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 digest failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

}  // namespace algebroidkit::io
