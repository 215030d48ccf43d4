#pragma once

// Saturating sets as parity-check matrices. The columns of H are the
// canonical coordinates of the points of S; S is saturating in PG(r-1,q)
// exactly when the code with parity-check matrix H has covering radius 2
// (for spanning S).

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "satgeom/geometry.hpp"
#include "satgeom/gf.hpp"
#include "satgeom/point_set.hpp"
#include "satgeom/saturation.hpp"

namespace satgeom::codes {

class ParityCheckMatrix {
 public:
  /// Row-major r x n entries over GF(q). Throws InvalidMatrix for a zero
  /// column, proportional columns or out-of-range entries.
  ParityCheckMatrix(std::uint32_t q, std::uint32_t r, std::uint32_t n,
                    std::vector<gf::Element> entries);

  std::uint32_t q() const noexcept { return q_; }
  std::uint32_t rows() const noexcept { return r_; }
  std::uint32_t cols() const noexcept { return n_; }
  gf::Element at(std::uint32_t i, std::uint32_t j) const noexcept {
    return entries_[static_cast<std::size_t>(i) * n_ + j];
  }
  std::vector<gf::Element> column(std::uint32_t j) const;
  const gf::Field& field() const noexcept { return *field_; }
  const std::shared_ptr<const gf::Field>& field_ptr() const noexcept {
    return field_;
  }

  friend bool operator==(const ParityCheckMatrix& a, const ParityCheckMatrix& b) {
    return a.q_ == b.q_ && a.r_ == b.r_ && a.n_ == b.n_ && a.entries_ == b.entries_;
  }

 private:
  std::uint32_t q_, r_, n_;
  std::vector<gf::Element> entries_;
  std::shared_ptr<const gf::Field> field_;
};

/// Columns are the coordinates of S in ascending index order.
/// Throws NoCoordinates (ingested plane), EmptySet, GeometryMismatch.
ParityCheckMatrix export_parity_check(const geom::IncidencePlane& plane,
                                      const PointSet& s);
ParityCheckMatrix export_parity_check(const geom::ProjectiveSpace& space,
                                      const PointSet& s);

/// Text format: `q r n`, then r rows of n element encodings.
ParityCheckMatrix read_matrix(std::istream& in);
void write_matrix(std::ostream& out, const ParityCheckMatrix& h);

enum class McfMethod {
  /// Map columns back to points and run the saturation verifier.
  Geometric,
  /// Count column pairs spanning each syndrome directly.
  Syndrome,
};

/// Every nonzero syndrome not proportional to a column is reached by at least
/// mu column pairs, counted per line as C(|l ∩ S|, 2). Witnesses are canonical
/// point indices of PG(r-1, q). Throws BudgetExceeded when the projective
/// syndrome space exceeds `max_syndromes`.
sat::Verdict check_mcf(const ParityCheckMatrix& h, std::uint64_t mu,
                       McfMethod method = McfMethod::Syndrome,
                       std::uint64_t max_syndromes = 10'000'000);

struct TableRow {
  std::uint32_t q = 0;
  int mu = 1;
  std::uint32_t N = 2;
  long double bound = 0;
  bool valid = false;
  /// Prior bound for the plane (N = 2) only.
  std::optional<long double> prior_bound;
  std::optional<bool> improves;
  std::string note;
};

/// Upper bounds on the length function l_mu(2, N+1, q); invalid cells are
/// flagged, never dropped. Non-prime-power q are skipped.
std::vector<TableRow> length_function_table(const std::vector<std::uint32_t>& qs,
                                            const std::vector<int>& mus,
                                            const std::vector<std::uint32_t>& ns);

/// CSV with header `q,mu,N,bound,valid,prior_bound,improves`.
void write_table_csv(std::ostream& out, const std::vector<TableRow>& rows);

}  // namespace satgeom::codes
