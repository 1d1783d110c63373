#pragma once
// Bit-stable serialization of result records: JSON for machines, CSV for
// plotting.  Reals are written as the shortest decimal that round-trips to
// the same double, key order is fixed by the writers, and every artifact
// ends with a newline, so identical records always produce identical bytes.
#include <string>
#include <vector>

#include "zeta4/divisor.hh"
#include "zeta4/empirical.hh"
#include "zeta4/momofmom.hh"

namespace zeta4::report {

// Shortest round-trip decimal (std::to_chars); non-finite values render as
// "null" so emitted JSON stays parseable.
std::string format_double(double x);

std::string to_json(const empirical::MomentReport& r);
std::string to_json(const momofmom::MoMReport& r);
std::string to_json(const std::vector<divisor::CorrelationRecord>& recs);

// CSV counterparts.  The correlation table delegates to the divisor-module
// schema (`X,r,sum,main,error,normalized_error`); the moment-of-moments
// table uses `T,c,kind,dbar,odbar,total,empirical,a_constant` with empty
// cells for absent optionals.
std::string to_csv(const empirical::MomentReport& r);
std::string to_csv(const momofmom::MoMReport& r);
std::string to_csv(const std::vector<divisor::CorrelationRecord>& recs);

// Inverse of to_json for the struct reports (exact for finite fields).
empirical::MomentReport moment_report_from_json(const std::string& text);
momofmom::MoMReport mom_report_from_json(const std::string& text);
std::vector<divisor::CorrelationRecord> correlation_records_from_json(
    const std::string& text);

// Writes text to path (creating parent directories); throws
// std::runtime_error on any I/O failure.  write_report picks the format
// from the extension: ".json" or ".csv".
void write_file(const std::string& path, const std::string& text);
void write_report(const empirical::MomentReport& r, const std::string& path);
void write_report(const momofmom::MoMReport& r, const std::string& path);
void write_report(const std::vector<divisor::CorrelationRecord>& recs,
                  const std::string& path);

}  // namespace zeta4::report
