#pragma once

#include <stdexcept>
#include <string>

namespace warpcert {

// All numerical-contract violations derive from Error so callers can
// distinguish them from logic bugs (std::logic_error) and OS failures.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DegenerateGrid : Error {
    explicit DegenerateGrid(const std::string& msg) : Error(msg) {}
};

struct NonPositiveWarping : Error {
    explicit NonPositiveWarping(const std::string& msg) : Error(msg) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};

struct GridTooCoarse : Error {
    explicit GridTooCoarse(const std::string& msg) : Error(msg) {}
};

struct OdeToleranceNotMet : Error {
    explicit OdeToleranceNotMet(const std::string& msg) : Error(msg) {}
};

struct MissingF : Error {
    explicit MissingF(const std::string& msg) : Error(msg) {}
};

struct HorizonTooShort : Error {
    HorizonTooShort(const std::string& msg, double achieved_sup)
        : Error(msg), achieved_slope_sup(achieved_sup) {}
    double achieved_slope_sup;
};

struct SlopeOutOfRange : Error {
    explicit SlopeOutOfRange(const std::string& msg) : Error(msg) {}
};

struct PositivityLost : Error {
    PositivityLost(const std::string& msg, double min_value)
        : Error(msg), min_ric(min_value) {}
    double min_ric;
};

struct CapTooShort : Error {
    explicit CapTooShort(const std::string& msg) : Error(msg) {}
};

struct NegativeScalar : Error {
    explicit NegativeScalar(const std::string& msg) : Error(msg) {}
};

struct NoPositiveWidth : Error {
    explicit NoPositiveWidth(const std::string& msg) : Error(msg) {}
};

struct UnresolvedGap : Error {
    explicit UnresolvedGap(const std::string& msg) : Error(msg) {}
};

struct NoGap : Error {
    explicit NoGap(const std::string& msg) : Error(msg) {}
};

} // namespace warpcert
