#ifndef ADJOINTFORGE_ERRORS_HPP
#define ADJOINTFORGE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace adjointforge {

enum class errc {
  // lattice construction / operations
  not_a_lattice,
  not_graded,
  no_bounds,
  rank_too_small,
  rank_too_large,
  bad_rank,
  // independence machinery
  empty_set,
  not_independent,
  not_downward_closed,
  rank_mismatch,
  not_geometric_target,
  not_a_basis,
  atom_in_basis,
  not_coatomic,
  // matroids
  exchange_axiom_violated,
  empty_family,
  unequal_sizes,
  element_in_basis,
  not_a_circuit,
  no_circuits,
  ground_set_mismatch,
  unknown_name,
  // adjoint / derived
  circuit_is_fundamental,
  empty_set_dependent,
  not_proper,
  not_modular,
  // generic
  invalid_argument,
  internal_inconsistency,
  usage,
  file_format,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::not_a_lattice: return "NotALattice";
    case errc::not_graded: return "NotGraded";
    case errc::no_bounds: return "NoBounds";
    case errc::rank_too_small: return "RankTooSmall";
    case errc::rank_too_large: return "RankTooLarge";
    case errc::bad_rank: return "BadRank";
    case errc::empty_set: return "EmptySet";
    case errc::not_independent: return "NotIndependent";
    case errc::not_downward_closed: return "NotDownwardClosed";
    case errc::rank_mismatch: return "RankMismatch";
    case errc::not_geometric_target: return "NotGeometricTarget";
    case errc::not_a_basis: return "NotABasis";
    case errc::atom_in_basis: return "AtomInBasis";
    case errc::not_coatomic: return "NotCoatomic";
    case errc::exchange_axiom_violated: return "ExchangeAxiomViolated";
    case errc::empty_family: return "EmptyFamily";
    case errc::unequal_sizes: return "UnequalSizes";
    case errc::element_in_basis: return "ElementInBasis";
    case errc::not_a_circuit: return "NotACircuit";
    case errc::no_circuits: return "NoCircuits";
    case errc::ground_set_mismatch: return "GroundSetMismatch";
    case errc::unknown_name: return "UnknownName";
    case errc::circuit_is_fundamental: return "CircuitIsFundamental";
    case errc::empty_set_dependent: return "EmptySetDependent";
    case errc::not_proper: return "NotProper";
    case errc::not_modular: return "NotModular";
    case errc::invalid_argument: return "InvalidArgument";
    case errc::internal_inconsistency: return "InternalInconsistency";
    case errc::usage: return "UsageError";
    case errc::file_format: return "FileFormatError";
  }
  return "Unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

inline void require(bool cond, errc code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace adjointforge

#endif
