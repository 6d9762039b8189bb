#ifndef ELLSUM_VERIFY_HPP
#define ELLSUM_VERIFY_HPP

// Verification runner: evaluates both sides of each record at each listed
// s, emits pass/fail rows, and renders reports as JSON or markdown.  Rows
// are sorted by (id, s) so two runs of the same suite differ only in the
// timing fields.

#include <algorithm>
#include <chrono>
#include <future>
#include <sstream>
#include <string>
#include <vector>

#include "ellsum/registry.hpp"

namespace ellsum {

struct ReportRow {
  std::string id;
  double s;
  double lhs = 0, rhs = 0;
  double abs_err = 0, rel_err = 0;
  bool pass = false;
  bool skipped = false;
  std::string note;
  double wall_ms = 0;
};

struct VerificationReport {
  std::string suite;
  std::vector<ReportRow> rows;
  int failures = 0;
  double total_ms = 0;
};

inline double lhs_value(const IdentityRecord& r, double s, double tol) {
  if (r.k_lhs) {
    auto res = k_integral(r.k_lhs->spec, s, tol);
    return r.k_lhs->prefactor.at(s) * res.value;
  }
  if (r.lattice_lhs) {
    double v = lattice_mellin(
        {r.lattice_lhs->m, r.lattice_lhs->n, r.lattice_lhs->p}, s, tol);
    return r.lattice_lhs->scale.at(s) * v;
  }
  if (r.theta_lhs) {
    double v =
        theta_product_mellin(r.theta_lhs->factors, r.theta_lhs->minus_one, s, tol);
    return r.theta_lhs->scale.at(s) * v;
  }
  throw std::logic_error("record '" + r.id + "' has no lhs");
}

inline double rhs_value(const IdentityRecord& r, double s) {
  if (r.regularized_at.count(s)) {
    return evaluate_closed_form(r.rhs_regularized, s);
  }
  return evaluate_closed_form(r.rhs, s);
}

inline ReportRow verify_identity(const IdentityRecord& r, double s) {
  ReportRow row;
  row.id = r.id;
  row.s = s;
  auto t0 = std::chrono::steady_clock::now();
  double tol = tolerance_of(r.tolerance);
  try {
    row.rhs = rhs_value(r, s);
    row.lhs = lhs_value(r, s, tol / 20);
    row.abs_err = std::abs(row.lhs - row.rhs);
    row.rel_err =
        row.rhs != 0.0 ? row.abs_err / std::abs(row.rhs) : row.abs_err;
    row.pass = row.rel_err <= tol;
  } catch (const std::exception& e) {
    row.pass = false;
    row.note = e.what();
  }
  row.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  return row;
}

// substring filter over id and tags; empty matches everything.
// "generated:thm31" matches tag pairs; plain strings match ids or tags.
inline bool record_matches(const IdentityRecord& r, const std::string& filter) {
  if (filter.empty()) return true;
  if (r.id.find(filter) != std::string::npos) return true;
  std::string f = filter;
  auto colon = f.find(':');
  if (colon != std::string::npos) {
    std::string a = f.substr(0, colon), b = f.substr(colon + 1);
    bool has_a = false, has_b = false;
    for (const auto& t : r.tags) {
      if (t == a) has_a = true;
      if (t == b) has_b = true;
    }
    return has_a && has_b;
  }
  for (const auto& t : r.tags)
    if (t == f) return true;
  return false;
}

inline VerificationReport run_suite(const std::vector<IdentityRecord>& records,
                                    const std::string& filter = "",
                                    int parallelism = 1) {
  auto t0 = std::chrono::steady_clock::now();
  VerificationReport rep;
  rep.suite = filter.empty() ? "all" : filter;
  std::vector<std::pair<const IdentityRecord*, double>> work;
  for (const auto& r : records) {
    if (!record_matches(r, filter)) continue;
    for (double s : r.s_values) work.push_back({&r, s});
  }
  rep.rows.resize(work.size());
  if (parallelism <= 1) {
    for (size_t i = 0; i < work.size(); ++i)
      rep.rows[i] = verify_identity(*work[i].first, work[i].second);
  } else {
    std::atomic<size_t> next{0};
    auto worker = [&] {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= work.size()) return;
        rep.rows[i] = verify_identity(*work[i].first, work[i].second);
      }
    };
    std::vector<std::future<void>> pool;
    for (int i = 0; i < parallelism; ++i)
      pool.push_back(std::async(std::launch::async, worker));
    for (auto& f : pool) f.get();
  }
  std::sort(rep.rows.begin(), rep.rows.end(),
            [](const ReportRow& a, const ReportRow& b) {
              return a.id != b.id ? a.id < b.id : a.s < b.s;
            });
  for (const auto& row : rep.rows)
    if (!row.pass) ++rep.failures;
  rep.total_ms = std::chrono::duration<double, std::milli>(
                     std::chrono::steady_clock::now() - t0)
                     .count();
  return rep;
}

// ---------------------------------------------------------------------------
// Report emission
// ---------------------------------------------------------------------------

namespace detail {

inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace detail

inline Json report_json(const VerificationReport& rep,
                        bool include_timing = true) {
  Json rows = Json::array();
  for (const auto& r : rep.rows) {
    Json row;
    row["id"] = r.id;
    row["s"] = detail::fmt_double(r.s);
    row["lhs"] = detail::fmt_double(r.lhs);
    row["rhs"] = detail::fmt_double(r.rhs);
    row["abs_err"] = detail::fmt_double(r.abs_err);
    row["rel_err"] = detail::fmt_double(r.rel_err);
    row["pass"] = r.pass;
    if (!r.note.empty()) row["note"] = r.note;
    if (include_timing) row["wall_ms"] = r.wall_ms;
    rows.push_back(row);
  }
  Json out;
  out["suite"] = rep.suite;
  out["rows"] = rows;
  out["failures"] = rep.failures;
  if (include_timing) out["total_ms"] = rep.total_ms;
  return out;
}

inline std::string report_markdown(const VerificationReport& rep) {
  std::ostringstream os;
  os << "| id | s | lhs | rhs | rel err | pass |\n";
  os << "|---|---|---|---|---|---|\n";
  for (const auto& r : rep.rows) {
    os << "| " << r.id << " | " << r.s << " | " << detail::fmt_double(r.lhs)
       << " | " << detail::fmt_double(r.rhs) << " | "
       << detail::fmt_double(r.rel_err) << " | " << (r.pass ? "yes" : "NO");
    if (!r.note.empty()) os << " (" << r.note << ")";
    os << " |\n";
  }
  os << "\n" << rep.rows.size() << " rows, " << rep.failures << " failures\n";
  return os.str();
}

}  // namespace ellsum

#endif  // ELLSUM_VERIFY_HPP
