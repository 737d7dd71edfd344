#include "tracegen/trace/proxy.hpp"

#include <algorithm>

namespace tracegen::trace {

using lang::Value;

struct TraceNode {
  UsageTrace own;  // children live in the node pointers below
  std::shared_ptr<TraceNode> element;
  std::vector<std::pair<std::string, std::shared_ptr<TraceNode>>> attributes;

  UsageTrace Snapshot() const {
    UsageTrace t = own;
    if (element) {
      UsageTrace e = element->Snapshot();
      if (!e.empty()) t.MutableElement().Merge(e);
    }
    for (const auto& [name, node] : attributes) {
      UsageTrace a = node->Snapshot();
      if (!a.empty()) t.MutableAttribute(name).Merge(a);
    }
    return t;
  }
};

TraceRecorder::TraceRecorder(std::shared_ptr<TraceNode> node, TypeMapper* mapper, int depth, int max_depth)
    : node_(std::move(node)), mapper_(mapper), depth_(depth), max_depth_(max_depth) {}

void TraceRecorder::OnAttribute(std::string_view name) { node_->own.attribute_accesses.emplace(name); }

void TraceRecorder::OnSpecialMethod(std::string_view name, std::span<const Value> args) {
  std::string n(name);
  if (args.empty()) {
    node_->own.AddMethod(n, nullptr);
    return;
  }
  for (const auto& a : args) {
    types::GradualType t = mapper_->TypeOfValue(lang::Interpreter::Unwrap(a));
    node_->own.AddMethod(n, &t);
  }
}

void TraceRecorder::OnTypeCheck(std::span<const lang::ClassObject* const> targets) {
  for (const auto* cls : targets) node_->own.AddTypecheck(mapper_->ClassRefOf(cls));
}

std::shared_ptr<lang::ProxyRecorder> TraceRecorder::ElementRecorder() {
  if (depth_ >= max_depth_) return nullptr;
  if (!element_) {
    if (!node_->element) node_->element = std::make_shared<TraceNode>();
    element_ = std::make_shared<TraceRecorder>(node_->element, mapper_, depth_ + 1, max_depth_);
  }
  return element_;
}

std::shared_ptr<lang::ProxyRecorder> TraceRecorder::AttributeRecorder(std::string_view name) {
  if (depth_ >= max_depth_) return nullptr;
  std::shared_ptr<TraceNode> child;
  for (const auto& [n, node] : node_->attributes) {
    if (n == name) child = node;
  }
  if (!child) {
    child = std::make_shared<TraceNode>();
    node_->attributes.emplace_back(std::string(name), child);
  }
  return std::make_shared<TraceRecorder>(child, mapper_, depth_ + 1, max_depth_);
}

UsageTrace TraceRecorder::Snapshot() const { return node_->Snapshot(); }

ProxySession::ProxySession(lang::Interpreter& interp, TypeMapper& mapper, int max_depth)
    : interp_(interp), mapper_(mapper), max_depth_(max_depth) {}

Value ProxySession::Wrap(const Value& v, const ProxyTag& tag) {
  auto node = std::make_shared<TraceNode>();
  roots_.emplace_back(tag, node);
  return interp_.NewProxy(v, std::make_shared<TraceRecorder>(node, &mapper_, 0, max_depth_));
}

std::vector<std::pair<ProxyTag, UsageTrace>> ProxySession::ExtractAndReset() {
  std::vector<std::pair<ProxyTag, UsageTrace>> out;
  for (const auto& [tag, node] : roots_) {
    UsageTrace t = node->Snapshot();
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& e) { return e.first == tag; });
    if (it == out.end()) {
      out.emplace_back(tag, std::move(t));
    } else {
      it->second.Merge(t);
    }
  }
  roots_.clear();
  return out;
}

TypecheckShim::TypecheckShim(lang::Interpreter& interp) : interp_(interp) {
  const Value* orig = interp.runtime().builtins().Find("isinstance");
  Value original = orig ? *orig : Value();
  auto shim = interp.New<lang::BuiltinFunction>(
      "isinstance", [original](lang::Interpreter& in, std::span<const Value> args) -> Value {
        if (args.size() == 2 && args[0].as<lang::ProxyObject>() != nullptr) {
          std::vector<const lang::ClassObject*> targets;
          if (auto* t = args[1].as<lang::TupleObject>()) {
            for (const auto& item : t->items) {
              if (auto* c = item.as<lang::ClassObject>()) targets.push_back(c);
            }
          } else if (auto* c = args[1].as<lang::ClassObject>()) {
            targets.push_back(c);
          }
          const Value* layer = &args[0];
          while (auto* p = layer->as<lang::ProxyObject>()) {
            auto rec = p->recorder;
            rec->OnTypeCheck(targets);
            layer = &p->wrapped;
          }
        }
        return in.Call(original, args);
      });
  interp.OverrideBuiltin("isinstance", Value(std::static_pointer_cast<lang::Object>(shim)));
}

TypecheckShim::~TypecheckShim() { interp_.RestoreBuiltin("isinstance"); }

UsageTrace ExtractTrace(const Value& proxy) {
  auto* p = proxy.as<lang::ProxyObject>();
  if (p == nullptr) return {};
  auto* rec = dynamic_cast<TraceRecorder*>(p->recorder.get());
  return rec ? rec->Snapshot() : UsageTrace();
}

}  // namespace tracegen::trace
