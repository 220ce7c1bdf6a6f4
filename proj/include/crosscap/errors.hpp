#pragma once
#include <stdexcept>
#include <string>

namespace crosscap {

// Error taxonomy. The CLI maps kinds to exit codes: config errors -> 2,
// numeric non-convergence -> 3, everything else -> 4.
class Error : public std::runtime_error {
public:
    enum class Kind {
        SingularDivision,
        JetDomain,
        Parse,
        UnknownIdentifier,
        DegenerateMetric,
        IrregularCurve,
        NoNullSpace,
        NotWestChart,
        UnclassifiedSingularity,
        CornerAtSingularity,
        DegenerateTangent,
        Config,
        NonConvergence,
        Internal,
    };

    Error(Kind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

class ParseError : public Error {
public:
    ParseError(std::size_t offset, const std::string& message)
        : Error(Kind::Parse, "parse error at offset " + std::to_string(offset) + ": " + message),
          offset_(offset) {}

    ParseError(Kind kind, std::size_t offset, const std::string& message)
        : Error(kind, "parse error at offset " + std::to_string(offset) + ": " + message),
          offset_(offset) {}

    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

class ConfigError : public Error {
public:
    ConfigError(const std::string& path, const std::string& message)
        : Error(Kind::Config, path + ": " + message), path_(path) {}

    const std::string& path() const { return path_; }

private:
    std::string path_;
};

class NotWestChartError : public Error {
public:
    NotWestChartError(double residual, const std::string& message)
        : Error(Kind::NotWestChart, message), residual_(residual) {}

    double residual() const { return residual_; }

private:
    double residual_;
};

} // namespace crosscap
