#pragma once

#include <stdexcept>
#include <string>

namespace kmgrad {

// Domain errors carry a witness in the message; the CLI maps them to exit
// code 1, input problems to exit code 2.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct AxisMismatch : Error {
    explicit AxisMismatch(const std::string& msg) : Error(msg) {}
};

struct NotCartan : Error {
    NotCartan(std::size_t i, std::size_t j, const std::string& why)
        : Error("not a generalized Cartan matrix at (" + std::to_string(i) + "," +
                std::to_string(j) + "): " + why),
          row(i),
          col(j) {}
    std::size_t row, col;
};

struct NotSymmetrizable : Error {
    explicit NotSymmetrizable(const std::string& msg) : Error(msg) {}
};

struct NotSymmetric : Error {
    explicit NotSymmetric(const std::string& msg) : Error(msg) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};

struct IndexOutOfJComplement : Error {
    explicit IndexOutOfJComplement(const std::string& msg) : Error(msg) {}
};

struct KInJ : Error {
    explicit KInJ(const std::string& msg) : Error(msg) {}
};

struct NotFiniteType : Error {
    explicit NotFiniteType(const std::string& msg) : Error(msg) {}
};

struct JNotFiniteType : Error {
    explicit JNotFiniteType(const std::string& msg) : Error(msg) {}
};

struct NotFiniteTypeComponent : Error {
    explicit NotFiniteTypeComponent(const std::string& msg) : Error(msg) {}
};

struct NotARootInput : Error {
    explicit NotARootInput(const std::string& msg) : Error(msg) {}
};

struct NotCAdmissible : Error {
    explicit NotCAdmissible(const std::string& msg) : Error(msg) {}
};

struct ZeroWeight : Error {
    explicit ZeroWeight(const std::string& msg) : Error(msg) {}
};

struct MG1Violation : Error {
    MG1Violation(const std::string& k, const std::string& l)
        : Error("MG1 violated: vertices " + k + " and " + l +
                " share a fiber but are linked") {}
};

struct MG2Violation : Error {
    MG2Violation(const std::string& s, const std::string& t, const std::string& j,
                 const std::string& j2)
        : Error("MG2 violated for fibers (" + s + "," + t + "): column sums differ between " +
                j + " and " + j2) {}
};

struct NotAdmissibleQuotient : Error {
    explicit NotAdmissibleQuotient(const std::string& msg) : Error(msg) {}
};

struct BasisMismatch : Error {
    explicit BasisMismatch(const std::string& msg) : Error(msg) {}
};

struct SpecInvalid : Error {
    explicit SpecInvalid(const std::string& msg) : Error(msg) {}
};

struct OrbitCapExceeded : Error {
    explicit OrbitCapExceeded(const std::string& msg) : Error(msg) {}
};

// Raised when two routes that must agree by theory disagree in practice.
struct InternalCheckError : Error {
    explicit InternalCheckError(const std::string& msg) : Error(msg) {}
};

}  // namespace kmgrad
