#include "moravak/error.hpp"

#include <fmt/core.h>

namespace moravak {

const char* to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::parse: return "parse-error";
    case ErrorKind::ill_formed_element: return "ill-formed-element";
    case ErrorKind::degree_cap_exceeded: return "degree-cap-exceeded";
    case ErrorKind::invalid_algebra: return "invalid-algebra";
    case ErrorKind::action_not_checked: return "action-not-checked";
    case ErrorKind::invalid_action: return "invalid-action";
    case ErrorKind::not_integral: return "not-integral";
    case ErrorKind::malformed_exponent_list: return "malformed-exponent-list";
    case ErrorKind::not_grouplike: return "not-grouplike";
    case ErrorKind::invalid_index: return "invalid-index";
    case ErrorKind::invalid_module: return "invalid-module";
    case ErrorKind::invalid_tensor_module: return "invalid-tensor-module";
    case ErrorKind::wrong_twist_degree: return "wrong-twist-degree";
    case ErrorKind::inconsistent_action: return "inconsistent-action";
    case ErrorKind::integral_data_required: return "integral-data-required";
    case ErrorKind::not_two_typical: return "not-2-typical";
    case ErrorKind::invalid_fgl: return "invalid-fgl";
    case ErrorKind::missing_class: return "missing-class";
    case ErrorKind::invalid_manifold: return "invalid-manifold";
    case ErrorKind::hypothesis_violated: return "hypothesis-violated";
    case ErrorKind::anomaly_relation_violated: return "anomaly-relation-violated";
    case ErrorKind::invalid_pair: return "invalid-pair";
    }
    return "unknown";
}

ErrorCategory category_of(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::parse:
    case ErrorKind::ill_formed_element:
        return ErrorCategory::parse;
    case ErrorKind::invalid_algebra:
    case ErrorKind::invalid_action:
    case ErrorKind::action_not_checked:
    case ErrorKind::malformed_exponent_list:
    case ErrorKind::invalid_module:
    case ErrorKind::invalid_tensor_module:
    case ErrorKind::invalid_fgl:
    case ErrorKind::invalid_manifold:
    case ErrorKind::invalid_pair:
    case ErrorKind::wrong_twist_degree:
    case ErrorKind::integral_data_required:
    case ErrorKind::missing_class:
    case ErrorKind::not_integral:
        return ErrorCategory::validation;
    case ErrorKind::hypothesis_violated:
    case ErrorKind::anomaly_relation_violated:
        return ErrorCategory::hypothesis;
    default:
        return ErrorCategory::computation;
    }
}

ParseError::ParseError(const std::string& what, int line, int column)
    : Error(ErrorKind::parse,
            line > 0 ? fmt::format("line {}:{}: {}", line, column, what) : what),
      line_(line), column_(column)
{
}

}  // namespace moravak
