#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace tfd {

using cplx = std::complex<double>;
using Statevector = Eigen::VectorXcd;

/// Default limit on the number of qubits (fermionic modes) a sparse operator may span.
inline constexpr int kDefaultQubitCap = 16;

/// Largest dimension handed to the dense eigensolver.
inline constexpr std::size_t kDenseDimCap = 4096;

/// A precondition of an operation was violated by the caller.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A size limit (qubit cap, dense cap) would be exceeded.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numeric argument outside the domain of the operation (e.g. beta <= 0).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An expectation value that must be real carried an imaginary residue.
class HermiticityError : public std::runtime_error {
public:
    HermiticityError(const std::string& what, double residue)
        : std::runtime_error(what), residue_(residue) {}
    double residue() const noexcept { return residue_; }

private:
    double residue_;
};

inline void require(bool cond, const char* msg) {
    if (!cond) throw ContractViolation(msg);
}

} // namespace tfd
