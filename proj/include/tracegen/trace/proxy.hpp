#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "tracegen/lang/interpreter.hpp"
#include "tracegen/trace/usage_trace.hpp"

namespace tracegen::trace {

/// Maps runtime values and classes of one session into the type model.
class TypeMapper {
 public:
  virtual ~TypeMapper() = default;
  virtual types::GradualType TypeOfValue(const lang::Value& v) = 0;
  // Null for classes outside the type universe.
  virtual types::ClassRef ClassRefOf(const lang::ClassObject* cls) = 0;
};

/// Identifies the argument a proxy stands for: (callable id, parameter name).
using ProxyTag = std::pair<int, std::string>;

struct TraceNode;

/// Proxy recorder feeding one node of a trace tree.
class TraceRecorder final : public lang::ProxyRecorder {
 public:
  TraceRecorder(std::shared_ptr<TraceNode> node, TypeMapper* mapper, int depth, int max_depth);

  void OnAttribute(std::string_view name) override;
  void OnSpecialMethod(std::string_view name, std::span<const lang::Value> args) override;
  void OnTypeCheck(std::span<const lang::ClassObject* const> targets) override;
  std::shared_ptr<lang::ProxyRecorder> ElementRecorder() override;
  std::shared_ptr<lang::ProxyRecorder> AttributeRecorder(std::string_view name) override;

  UsageTrace Snapshot() const;

 private:
  std::shared_ptr<TraceNode> node_;
  TypeMapper* mapper_;
  int depth_;
  int max_depth_;
  std::shared_ptr<TraceRecorder> element_;
};

/// Creates proxies for one proxied execution and collects their traces.
class ProxySession {
 public:
  // `max_depth` bounds how many levels of element/attribute values are
  // wrapped below the argument itself.
  ProxySession(lang::Interpreter& interp, TypeMapper& mapper, int max_depth = 2);

  lang::Value Wrap(const lang::Value& v, const ProxyTag& tag);

  // Traces of all proxies created since the last call, merged per tag.
  std::vector<std::pair<ProxyTag, UsageTrace>> ExtractAndReset();

 private:
  lang::Interpreter& interp_;
  TypeMapper& mapper_;
  int max_depth_;
  std::vector<std::pair<ProxyTag, std::shared_ptr<TraceNode>>> roots_;
};

/// Replaces the guest `isinstance` for its lifetime. Checks on proxies
/// record their targets before delegating to the original builtin.
class TypecheckShim {
 public:
  explicit TypecheckShim(lang::Interpreter& interp);
  ~TypecheckShim();
  TypecheckShim(const TypecheckShim&) = delete;
  TypecheckShim& operator=(const TypecheckShim&) = delete;

 private:
  lang::Interpreter& interp_;
};

/// Snapshot of a proxy's trace.
UsageTrace ExtractTrace(const lang::Value& proxy);

}  // namespace tracegen::trace
