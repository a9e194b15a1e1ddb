#pragma once

#include <stdexcept>
#include <string>

namespace crystalline {

// Base for all domain errors. `code()` is stable and machine-readable; the
// CLI maps codes to exit statuses.
class Error : public std::runtime_error {
  public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

  private:
    std::string code_;
};

struct DivByZeroError : Error {
    explicit DivByZeroError(const std::string& w = "division by zero") : Error("E_DIV_BY_ZERO", w) {}
};
struct NotPrimeError : Error {
    explicit NotPrimeError(const std::string& w) : Error("E_NOT_PRIME", w) {}
};
struct ZeroIdealError : Error {
    explicit ZeroIdealError(const std::string& w = "zero ideal") : Error("E_ZERO_IDEAL", w) {}
};
struct RingMismatchError : Error {
    explicit RingMismatchError(const std::string& w = "operands belong to different rings")
        : Error("E_RING_MISMATCH", w) {}
};
struct NotFullError : Error {
    explicit NotFullError(const std::string& w = "lattice is not full") : Error("E_NOT_FULL", w) {}
};
struct RankDeficientError : Error {
    explicit RankDeficientError(const std::string& w = "matrix has dependent columns")
        : Error("E_RANK_DEFICIENT", w) {}
};
struct NotOrderError : Error {
    explicit NotOrderError(const std::string& w = "lattice is not an order") : Error("E_NOT_ORDER", w) {}
};
struct NotMaximalError : Error {
    explicit NotMaximalError(const std::string& w = "order is not maximal") : Error("E_NOT_MAXIMAL", w) {}
};
struct NotTwoSidedError : Error {
    explicit NotTwoSidedError(const std::string& w = "lattice is not a two-sided ideal")
        : Error("E_NOT_TWO_SIDED", w) {}
};
struct NotLeftIdealError : Error {
    explicit NotLeftIdealError(const std::string& w = "lattice is not a left ideal")
        : Error("E_NOT_LEFT_IDEAL", w) {}
};
struct NotGradedError : Error {
    explicit NotGradedError(const std::string& w = "lattice is not graded") : Error("E_NOT_GRADED", w) {}
};
struct NotGrOrderError : Error {
    explicit NotGrOrderError(const std::string& w = "components do not form a graded order")
        : Error("E_NOT_GR_ORDER", w) {}
};
struct NotGrMaximalError : Error {
    explicit NotGrMaximalError(const std::string& w = "graded order is not gr-maximal")
        : Error("E_NOT_GR_MAXIMAL", w) {}
};
struct BudgetExceededError : Error {
    explicit BudgetExceededError(const std::string& w = "enumeration budget exceeded")
        : Error("E_BUDGET_EXCEEDED", w) {}
};

// Raised by ring validation; names the first violated identity and the
// group indices it was evaluated at (-1 when an index does not apply).
struct ValidationError : Error {
    ValidationError(std::string identity_, int g_, int h_, int t_, const std::string& w)
        : Error("E_VALIDATION", w), identity(std::move(identity_)), g(g_), h(h_), t(t_) {}
    std::string identity;
    int g, h, t;
};

struct ParseError : Error {
    ParseError(int line_, int col_, std::string expected_)
        : Error("E_PARSE", "parse error at line " + std::to_string(line_) + ", column " +
                               std::to_string(col_) + ": expected " + expected_),
          line(line_), col(col_), expected(std::move(expected_)) {}
    int line, col;
    std::string expected;
};

}  // namespace crystalline
