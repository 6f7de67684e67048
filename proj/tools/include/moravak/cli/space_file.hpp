#pragma once

#include "moravak/obstruct.hpp"
#include "moravak/rbk.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace moravak::cli {

using Json = nlohmann::ordered_json;

/// An expression with the position it came from (line 0 for JSON input).
struct SourceText {
    std::string text;
    int line = 0;
    int column = 0;
};

/// A space or manifold file before any validation.
struct RawDocument {
    struct RawGenerator {
        Generator generator;
        int line = 0;
    };
    struct RawSq {
        std::string generator;
        int i = 0;
        SourceText value;
    };

    std::vector<RawGenerator> generators;
    std::vector<SourceText> relations;
    std::vector<RawSq> sq;
    std::optional<std::vector<SourceText>> integral;
    std::optional<int> cap;
    std::optional<int> top;
    bool truncated = false;

    bool has_manifold = false;
    std::optional<int> dimension;
    bool closed = true;
    bool oriented = false;
    bool spin = false;
    bool string = false;
    std::optional<SourceText> lambda;
    std::map<int, SourceText> sw;
    std::vector<bool> pairing;

    std::optional<std::vector<bool>> index;
    std::map<int, SourceText> relative_sw;
    std::vector<std::pair<std::string, SourceText>> restriction;
};

/// A validated space, and the manifold data when the file declares it.
struct SpaceDocument {
    SpaceModel space;
    std::optional<ManifoldData> manifold;
    std::optional<IndexTable> index;
    std::map<int, Element> relative_sw;
    /// Images of generators of the manifold this file is the boundary of.
    std::vector<std::pair<std::string, SourceText>> restriction;
};

/// Sectioned text, or JSON when the first non-blank character is '{'.
RawDocument parse_raw(std::string_view text);
/// Builds and validates; cap_override replaces the declared degree cap.
SpaceDocument build(const RawDocument& raw, std::optional<int> cap_override = std::nullopt);
SpaceDocument parse_space(std::string_view text, std::optional<int> cap_override = std::nullopt);
SpaceDocument load_space(const std::string& path, std::optional<int> cap_override = std::nullopt);

/// JSON encoding accepted back by parse_space.
Json to_json(const SpaceDocument& doc);

/// Restriction map from the manifold into this boundary document.
AlgebraMap restriction_map(const ManifoldData& m, const SpaceDocument& boundary);

std::string read_file(const std::string& path);

/// A free K(n)_*-module with b_k operators, as read from a module file.
struct ModuleDocument {
    int n = 1;
    std::vector<int> degrees;
    /// k -> matrix of entries ("0", "1", "v^e").
    std::map<int, std::vector<std::vector<std::string>>> operators;
};

/// Sections [module] (n, degrees) and [b<k>] (one matrix row per line), or JSON.
ModuleDocument parse_module(std::string_view text);
ModuleDocument load_module(const std::string& path);
Json to_json(const ModuleDocument& doc);

/// The tensor module with b_0 .. b_{factors-1}; missing operators act as 0.
TensorModule tensor_module(const ModuleDocument& doc, int factors);
/// The module over the single R(b_k) the document declares.
RbkModule single_factor(const ModuleDocument& doc);

}  // namespace moravak::cli
