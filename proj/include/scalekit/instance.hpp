#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "scalekit/algebra_comm.hpp"
#include "scalekit/algebra_noncomm.hpp"
#include "scalekit/bounded.hpp"
#include "scalekit/scales.hpp"
#include "scalekit/space.hpp"
#include "scalekit/translation.hpp"

namespace scalekit {

using Json = nlohmann::ordered_json;

/// How a group instance was specified, kept for serialisation.
struct GroupSpec {
    enum class Kind { Table, ZWindow } kind = Kind::Table;
    std::size_t n = 0;
};

/// A Space with its named covers, functions, operators and maps.
struct Instance {
    std::string name;
    Space space;
    std::vector<std::pair<std::string, Cover>> covers;
    std::vector<NamedFunction> functions;
    std::vector<NamedOperator> operators;
    std::vector<std::pair<std::string, PointMap>> maps;
    std::optional<GroupWindow> group;
    std::optional<GroupSpec> group_spec;

    const Cover& cover(const std::string& name) const;
    const Function& function(const std::string& name) const;
    const OperatorMatrix& op(const std::string& name) const;
    const PointMap& map(const std::string& name) const;

    void add_cover(std::string name, Cover u);
    void add_function(std::string name, Function f);
    void add_operator(std::string name, OperatorMatrix a);
    void add_map(std::string name, PointMap m);

    friend bool operator==(const Instance& a, const Instance& b);
};

/// Parses and validates an instance document. Errors name the offending entry.
Instance load_instance(const Json& doc, std::string name = "");

Instance load_instance_file(const std::filesystem::path& path);

Json save_instance(const Instance& inst);

} // namespace scalekit
