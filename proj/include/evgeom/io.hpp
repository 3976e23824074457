#pragma once

// Text formats.
//
// Point set:
//   q,p,m,ambient_dim,label,count
//   one point per line; coordinates separated by ';', each coordinate a
//   comma-separated list of GF(p) coefficients, ascending degree
//   optional trailing section:
//   GROUP g
//   followed by g*(n+1) matrix rows in the same entry encoding
//
// Check matrix:
//   q,rows,cols
//   one row per line, entries encoded as above.

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "evgeom/codes.hpp"
#include "evgeom/geometry.hpp"
#include "evgeom/verify.hpp"

namespace evgeom {

struct io_error : std::runtime_error {
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

void write_pointset(std::ostream& os, const PointSet& set);
PointSet read_pointset(std::istream& is);
void write_pointset_file(const std::string& path, const PointSet& set);
PointSet read_pointset_file(const std::string& path);

void write_check_matrix(std::ostream& os, const CheckMatrix& m);
CheckMatrix read_check_matrix(std::istream& is);
void write_check_matrix_file(const std::string& path, const CheckMatrix& m);
CheckMatrix read_check_matrix_file(const std::string& path);

// One-line JSON rendering of a report:
// {check, passed, witness, witness_role, counts, work, reduction, elapsed_ms}
std::string report_to_json(const VerificationReport& rep);

}  // namespace evgeom
