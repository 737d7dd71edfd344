#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tracegen/lang/ast.hpp"
#include "tracegen/lang/interpreter.hpp"
#include "tracegen/trace/usage_trace.hpp"
#include "tracegen/types/gradual_type.hpp"

namespace tracegen::analysis {

enum class CallableKind { kFunction, kMethod, kConstructor };

struct ParameterInfo {
  std::string name;
  types::GradualType declared;
  bool has_default = false;
};

struct CallableInfo {
  int id = -1;
  CallableKind kind = CallableKind::kFunction;
  std::string qualified_name;  // module.f, module.C.m, module.C.__init__
  std::string module;
  std::string name;        // function, method or class name
  std::string class_name;  // owning class name within the module
  std::vector<ParameterInfo> parameters;  // without the receiver
  types::GradualType declared_return;
  types::ClassRef owning_class;
  bool in_subject = false;
  int line = 0;
};

/// Static model of the subject plus the evidence gathered while running it.
struct TestCluster {
  std::string module_name;
  std::string module_file;
  std::vector<CallableInfo> callables;  // indexed by id
  // Type universe used for selection: builtin value classes and the public
  // classes of the analysed modules.
  std::vector<types::ClassRef> classes;
  // Every ClassRef created during analysis, by qualified name.
  std::map<std::string, types::ClassRef> known_classes;
  std::map<std::string, std::vector<types::ClassRef>> attribute_map;
  // Constructor callable per class qualified name.
  std::map<std::string, int> constructors;
  std::map<std::pair<int, std::string>, trace::UsageTrace> traces;
  std::map<int, types::GradualType> recorded_returns;
  // Literal pool harvested from the subject module.
  std::vector<lang::Literal> constants;
  std::vector<std::string> warnings;

  types::ClassRef FindClass(const std::string& qualified_name) const;
  // Builtin value class ("int", "str", ...); null when absent.
  types::ClassRef Builtin(const std::string& name) const { return FindClass(name); }
  const trace::UsageTrace* TraceFor(int callable, const std::string& param) const;
  std::vector<int> SubjectCallables() const;
};

class AnalysisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AnalysisOptions {
  bool use_annotations = true;
  int dependency_depth = 1;
};

/// Imports `module_name` through `rt` and builds its cluster. Throws
/// AnalysisError when the module cannot be loaded.
TestCluster BuildCluster(lang::Runtime& rt, const std::string& module_name, const AnalysisOptions& options = {});

/// Attribute name -> topmost declaring classes among `classes`.
std::map<std::string, std::vector<types::ClassRef>> BuildAttributeMap(const std::vector<types::ClassRef>& classes);

/// Classes among `classes` whose inherited attribute closure covers `required`.
std::vector<types::ClassRef> ClassesWithAttributes(
    const std::vector<types::ClassRef>& classes,
    const std::map<std::string, std::vector<types::ClassRef>>& attribute_map, const std::set<std::string>& required);

std::vector<types::ClassRef> ClassesWithAttributes(const TestCluster& cluster, const std::set<std::string>& required);

/// Names assigned on the receiver inside an initializer body.
std::set<std::string> InstanceAttributes(const lang::FunctionDefStmt& init);

}  // namespace tracegen::analysis
